#pragma once

#include "crisismon/error.hpp"
#include "crisismon/text.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crisismon {

/// A lexicon entry: one token, or a multiword phrase matched as a consecutive run.
using Term = TokenList;

struct Lexicon {
  std::string name;
  std::set<Term> terms;

  /// Normalizes raw text with preprocess() and inserts it. Returns false when
  /// the text normalizes to nothing or the term was already present.
  bool add(std::string_view raw);
  bool contains(const Term& term) const { return terms.count(term) > 0; }
  std::set<Token> single_tokens() const;

  bool operator==(const Lexicon&) const = default;
};

struct CategorySet {
  std::string name;
  std::map<std::string, Lexicon> categories;

  bool operator==(const CategorySet&) const = default;
};

enum class LexiconErrc { missing_file, malformed_json, empty_terms, duplicate_category, unknown_category };

class LexiconError : public Error {
public:
  LexiconError(LexiconErrc code, const std::string& what) : Error(what), code_(code) {}
  LexiconErrc code() const noexcept { return code_; }
  int exit_code() const noexcept override {
    return code_ == LexiconErrc::missing_file || code_ == LexiconErrc::malformed_json ? 2 : 1;
  }

private:
  LexiconErrc code_;
};

/// {"name": "...", "terms": ["...", ...]}
Lexicon parse_lexicon(std::string_view json_text);
Lexicon load_lexicon(const std::filesystem::path& path);

/// {"name": "...", "categories": {"cat": ["...", ...], ...}}
CategorySet parse_category_set(std::string_view json_text);
CategorySet load_category_set(const std::filesystem::path& path);

nlohmann::json to_json(const Lexicon& lexicon);
nlohmann::json to_json(const CategorySet& set);

/// Restricts a category set to the named categories.
/// Unknown names raise LexiconError(unknown_category).
CategorySet select_categories(const CategorySet& set, const std::vector<std::string>& names);

/// {"constructs": {"anxiety": "lexicons/anxiety.json", ...}}; relative paths
/// resolve against the manifest's directory. Sorted by construct name.
std::vector<std::pair<std::string, std::filesystem::path>> load_manifest(const std::filesystem::path& path);

} // namespace crisismon
