#pragma once

#include "crisismon/config.hpp"
#include "crisismon/corpus.hpp"
#include "crisismon/prevalence.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crisismon {

/// Corpus statistics over every configured corpus file -> <out>/stats.json.
CorpusStats run_stats(const RunConfig& cfg, std::ostream& log);

/// Expands every manifest lexicon and ranks categories against it ->
/// <out>/expanded_<construct>.json and <out>/mapping_<construct>.json.
std::vector<MarkerMapping> run_expand(const RunConfig& cfg, std::ostream& log);

/// Matching, series analytics and reports -> prevalence.csv, series.csv,
/// peaks_<group>.csv, heatmap_<group>.svg, annotations_<group>.csv (with
/// events), stage_table.csv (with stages) and summary.json under <out>.
void run_analyze(const RunConfig& cfg, std::ostream& log);

/// Heatmap from an existing prevalence CSV. Empty `markers` means all
/// categories in the file; smoothing uses cfg.window (1 renders raw values).
void run_render(const RunConfig& cfg, const std::filesystem::path& prevalence_csv,
                const std::vector<std::string>& markers, const std::filesystem::path& svg_path, std::ostream& log);

/// Marker groups for analyze: cfg.groups, then groups named after the
/// constructs of cfg.mappings, or a single group "all" with every category.
std::map<std::string, std::vector<std::string>> resolve_groups(const RunConfig& cfg, const CategorySet& categories);

} // namespace crisismon
