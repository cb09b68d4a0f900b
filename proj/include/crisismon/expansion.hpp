#pragma once

#include "crisismon/embedding.hpp"
#include "crisismon/lexicon.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace crisismon {

struct ExpansionConfig {
  std::size_t k = 10; // neighbors per seed word
  std::size_t m = 10; // categories kept per construct

  void validate() const {
    if (k < 1 || m < 1)
      throw ValidationError("expansion: k and m must be >= 1");
  }
};

struct RankedCategory {
  std::string category;
  std::size_t count = 0;

  bool operator==(const RankedCategory&) const = default;
};

struct MarkerMapping {
  std::string construct;
  std::vector<RankedCategory> ranked; // count descending, then name ascending

  std::vector<std::string> markers() const;
  nlohmann::json to_json() const;
  bool operator==(const MarkerMapping&) const = default;
};

MarkerMapping marker_mapping_from_json(const nlohmann::json& j);

/// Seed terms plus the k nearest embedding neighbors of every single-token
/// seed found in the table. Phrases pass through untouched; out-of-vocabulary
/// seeds stay in the result unexpanded and are appended to `unexpanded`.
template <typename Scalar>
Lexicon expand_lexicon(const Lexicon& seed, const BasicEmbeddingTable<Scalar>& table, const ExpansionConfig& cfg,
                       std::vector<std::string>* unexpanded = nullptr) {
  cfg.validate();
  Lexicon out = seed;
  for (const Term& term : seed.terms) {
    if (term.size() != 1)
      continue;
    auto idx = table.find(term.front());
    if (!idx || !table.usable(*idx)) {
      if (unexpanded)
        unexpanded->push_back(term.front());
      continue;
    }
    for (const auto& n : knn(table, term.front(), cfg.k))
      out.add(n.token);
  }
  return out;
}

/// Ranks categories by how many single-token terms they share with the
/// expanded lexicon; zero-count categories are dropped, at most cfg.m kept.
MarkerMapping associate_categories(const Lexicon& expanded, const CategorySet& categories, const ExpansionConfig& cfg);

} // namespace crisismon
