#pragma once

#include "crisismon/corpus.hpp"
#include "crisismon/date.hpp"
#include "crisismon/expansion.hpp"
#include "crisismon/series.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crisismon {

/// Everything a pipeline run needs. Loaded from one JSON file; command-line
/// flags override individual fields. Relative paths in the file resolve
/// against the file's directory.
struct RunConfig {
  std::vector<std::filesystem::path> corpus;
  std::filesystem::path lexicon_manifest;
  std::filesystem::path categories;
  std::filesystem::path embeddings;
  std::filesystem::path events;
  std::filesystem::path stages;
  std::vector<std::filesystem::path> mappings; // marker mappings written by `expand`

  std::size_t k = 10;
  std::size_t m = 10;
  int window = 7;
  double sigma_mult = 1.0;
  int lead = 6;

  std::optional<Date> from;
  std::optional<Date> to;
  int utc_offset_minutes = kDefaultUtcOffsetMinutes;

  std::filesystem::path out = "out";
  unsigned workers = 0; // 0: one per hardware thread
  bool strict = false;

  /// Named marker groups analyzed together (joint peaks, one heatmap each).
  std::map<std::string, std::vector<std::string>> groups;

  ExpansionConfig expansion() const { return {k, m}; }
  AnalysisConfig analysis() const { return {window, sigma_mult}; }
  ParseOptions parse_options() const { return {strict, utc_offset_minutes, true}; }
  unsigned effective_workers() const;

  /// Throws ValidationError on out-of-range values.
  void validate() const;

  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

} // namespace crisismon
