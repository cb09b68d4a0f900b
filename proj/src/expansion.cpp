#include "crisismon/expansion.hpp"

#include <algorithm>

namespace crisismon {

std::vector<std::string> MarkerMapping::markers() const {
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked)
    out.push_back(r.category);
  return out;
}

nlohmann::json MarkerMapping::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : ranked)
    rows.push_back({{"category", r.category}, {"count", r.count}});
  return {{"construct", construct}, {"ranked", std::move(rows)}};
}

MarkerMapping marker_mapping_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("construct") || !j.contains("ranked") || !j["ranked"].is_array())
    throw ParseError("marker mapping: expected {construct, ranked:[...]}");
  MarkerMapping m;
  m.construct = j["construct"].get<std::string>();
  for (const auto& r : j["ranked"])
    m.ranked.push_back({r.at("category").get<std::string>(), r.at("count").get<std::size_t>()});
  return m;
}

MarkerMapping associate_categories(const Lexicon& expanded, const CategorySet& categories,
                                   const ExpansionConfig& cfg) {
  cfg.validate();
  MarkerMapping mapping{expanded.name, {}};
  const auto words = expanded.single_tokens();
  if (words.empty())
    return mapping;
  for (const auto& [name, lex] : categories.categories) {
    std::size_t shared = 0;
    for (const auto& term : lex.terms)
      if (term.size() == 1 && words.count(term.front()))
        ++shared;
    if (shared > 0)
      mapping.ranked.push_back({name, shared});
  }
  std::stable_sort(mapping.ranked.begin(), mapping.ranked.end(),
                   [](const RankedCategory& a, const RankedCategory& b) { return a.count > b.count; });
  if (mapping.ranked.size() > cfg.m)
    mapping.ranked.resize(cfg.m);
  return mapping;
}

} // namespace crisismon
