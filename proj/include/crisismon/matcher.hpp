#pragma once

#include "crisismon/corpus.hpp"
#include "crisismon/lexicon.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace crisismon {

/// Multi-pattern matcher over token streams: an Aho-Corasick automaton whose
/// alphabet is the set of distinct tokens appearing in any category term.
/// Immutable after construction and safe to share between threads.
class Matcher {
public:
  explicit Matcher(const CategorySet& categories);

  std::size_t category_count() const noexcept { return categories_.size(); }
  /// Category names, sorted; match results index into this list.
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  /// Sets hits[c] = 1 for every category c with at least one term occurring
  /// in `tokens` (phrases as consecutive runs). `hits` is resized and cleared.
  void match_into(std::span<const Token> tokens, std::vector<std::uint8_t>& hits) const;

  /// Ascending indices of matched categories.
  std::vector<std::uint32_t> match_indices(std::span<const Token> tokens) const;

private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  static constexpr std::uint32_t kRoot = 0;

  struct Node {
    std::uint32_t fail = kRoot;
    std::uint32_t output_link = kNone; // nearest proper suffix state with outputs
    std::vector<std::uint32_t> outputs; // category indices ending here
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;
  };

  std::uint32_t child(std::uint32_t node, std::uint32_t symbol) const;
  std::uint32_t step(std::uint32_t node, std::uint32_t symbol) const;

  std::vector<std::string> categories_;
  std::unordered_map<std::string, std::uint32_t> symbols_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> root_next_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

inline Matcher build_matcher(const CategorySet& categories) { return Matcher(categories); }

/// Names of the categories matched by the document, sorted. Membership is
/// binary: repeated occurrences do not count twice.
std::vector<std::string> match_doc(const Matcher& matcher, const TokenizedDoc& doc);

} // namespace crisismon
