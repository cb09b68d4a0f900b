#include "crisismon/lexicon.hpp"

#include <fstream>
#include <sstream>

namespace crisismon {

bool Lexicon::add(std::string_view raw) {
  Term term = preprocess(raw);
  if (term.empty())
    return false;
  return terms.insert(std::move(term)).second;
}

std::set<Token> Lexicon::single_tokens() const {
  std::set<Token> out;
  for (const auto& t : terms)
    if (t.size() == 1)
      out.insert(t.front());
  return out;
}

namespace {

struct ParsedDocument {
  nlohmann::json value;
  int duplicate_depth = -1;
  std::string duplicate_key;
};

// Parses JSON and remembers the first object key that repeats within one object.
ParsedDocument parse_checked(std::string_view text, const std::string& source) {
  ParsedDocument doc;
  std::vector<std::set<std::string>> open_objects;
  auto callback = [&](int depth, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
    using E = nlohmann::json::parse_event_t;
    if (event == E::object_start) {
      open_objects.emplace_back();
    } else if (event == E::object_end) {
      if (!open_objects.empty())
        open_objects.pop_back();
    } else if (event == E::key && !open_objects.empty()) {
      auto key = parsed.get<std::string>();
      if (!open_objects.back().insert(key).second && doc.duplicate_depth < 0) {
        doc.duplicate_depth = depth;
        doc.duplicate_key = key;
      }
    }
    return true;
  };
  doc.value = nlohmann::json::parse(text.begin(), text.end(), callback, false);
  if (doc.value.is_discarded())
    throw LexiconError(LexiconErrc::malformed_json, source + ": malformed JSON");
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LexiconError(LexiconErrc::missing_file, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Lexicon lexicon_from_terms(const std::string& name, const nlohmann::json& terms, const std::string& source) {
  if (!terms.is_array())
    throw LexiconError(LexiconErrc::malformed_json, source + ": terms of '" + name + "' must be an array");
  Lexicon lex{name, {}};
  for (const auto& t : terms) {
    if (!t.is_string())
      throw LexiconError(LexiconErrc::malformed_json, source + ": non-string term in '" + name + "'");
    lex.add(t.get_ref<const std::string&>());
  }
  if (lex.terms.empty())
    throw LexiconError(LexiconErrc::empty_terms, source + ": lexicon '" + name + "' has no usable terms");
  return lex;
}

std::string name_field(const nlohmann::json& obj, const std::string& source) {
  auto it = obj.find("name");
  if (it == obj.end() || !it->is_string())
    throw LexiconError(LexiconErrc::malformed_json, source + ": missing string field 'name'");
  return it->get<std::string>();
}

Lexicon lexicon_from_text(std::string_view text, const std::string& source) {
  auto doc = parse_checked(text, source);
  if (!doc.value.is_object())
    throw LexiconError(LexiconErrc::malformed_json, source + ": expected a JSON object");
  if (doc.duplicate_depth >= 0)
    throw LexiconError(LexiconErrc::malformed_json, source + ": duplicate key '" + doc.duplicate_key + "'");
  auto terms = doc.value.find("terms");
  if (terms == doc.value.end())
    throw LexiconError(LexiconErrc::malformed_json, source + ": missing field 'terms'");
  return lexicon_from_terms(name_field(doc.value, source), *terms, source);
}

CategorySet category_set_from_text(std::string_view text, const std::string& source) {
  auto doc = parse_checked(text, source);
  if (!doc.value.is_object())
    throw LexiconError(LexiconErrc::malformed_json, source + ": expected a JSON object");
  if (doc.duplicate_depth == 2)
    throw LexiconError(LexiconErrc::duplicate_category, source + ": duplicate category '" + doc.duplicate_key + "'");
  if (doc.duplicate_depth >= 0)
    throw LexiconError(LexiconErrc::malformed_json, source + ": duplicate key '" + doc.duplicate_key + "'");
  CategorySet set;
  set.name = name_field(doc.value, source);
  auto cats = doc.value.find("categories");
  if (cats == doc.value.end() || !cats->is_object())
    throw LexiconError(LexiconErrc::malformed_json, source + ": missing object field 'categories'");
  for (const auto& [cat, terms] : cats->items())
    set.categories.emplace(cat, lexicon_from_terms(cat, terms, source));
  return set;
}

} // namespace

Lexicon parse_lexicon(std::string_view json_text) { return lexicon_from_text(json_text, "<lexicon>"); }

Lexicon load_lexicon(const std::filesystem::path& path) { return lexicon_from_text(read_file(path), path.string()); }

CategorySet parse_category_set(std::string_view json_text) {
  return category_set_from_text(json_text, "<category set>");
}

CategorySet load_category_set(const std::filesystem::path& path) {
  return category_set_from_text(read_file(path), path.string());
}

nlohmann::json to_json(const Lexicon& lexicon) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : lexicon.terms)
    terms.push_back(join_tokens(t));
  return {{"name", lexicon.name}, {"terms", std::move(terms)}};
}

nlohmann::json to_json(const CategorySet& set) {
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [name, lex] : set.categories)
    cats[name] = to_json(lex)["terms"];
  return {{"name", set.name}, {"categories", std::move(cats)}};
}

CategorySet select_categories(const CategorySet& set, const std::vector<std::string>& names) {
  CategorySet out{set.name, {}};
  for (const auto& n : names) {
    auto it = set.categories.find(n);
    if (it == set.categories.end())
      throw LexiconError(LexiconErrc::unknown_category, "unknown category '" + n + "' in set '" + set.name + "'");
    out.categories.emplace(n, it->second);
  }
  return out;
}

std::vector<std::pair<std::string, std::filesystem::path>> load_manifest(const std::filesystem::path& path) {
  auto doc = parse_checked(read_file(path), path.string());
  auto constructs = doc.value.is_object() ? doc.value.find("constructs") : doc.value.end();
  if (constructs == doc.value.end() || !constructs->is_object())
    throw LexiconError(LexiconErrc::malformed_json, path.string() + ": missing object field 'constructs'");
  std::vector<std::pair<std::string, std::filesystem::path>> out;
  for (const auto& [name, p] : constructs->items()) {
    if (!p.is_string())
      throw LexiconError(LexiconErrc::malformed_json, path.string() + ": path of '" + name + "' must be a string");
    std::filesystem::path lex = p.get<std::string>();
    if (lex.is_relative())
      lex = path.parent_path() / lex;
    out.emplace_back(name, lex);
  }
  return out;
}

} // namespace crisismon
