#include "crisismon/matcher.hpp"

#include <algorithm>
#include <deque>

namespace crisismon {

namespace {
std::uint64_t edge_key(std::uint32_t node, std::uint32_t symbol) {
  return (static_cast<std::uint64_t>(node) << 32) | symbol;
}
} // namespace

Matcher::Matcher(const CategorySet& categories) {
  nodes_.emplace_back();
  for (const auto& [name, lex] : categories.categories) {
    const auto cat = static_cast<std::uint32_t>(categories_.size());
    categories_.push_back(name);
    for (const Term& term : lex.terms) {
      std::uint32_t node = kRoot;
      for (const Token& tok : term) {
        auto [sym_it, new_symbol] = symbols_.emplace(tok, static_cast<std::uint32_t>(symbols_.size()));
        const std::uint32_t sym = sym_it->second;
        auto [edge_it, new_edge] = edges_.emplace(edge_key(node, sym), static_cast<std::uint32_t>(nodes_.size()));
        if (new_edge) {
          nodes_[node].children.emplace_back(sym, edge_it->second);
          nodes_.emplace_back();
        }
        node = edge_it->second;
      }
      auto& outs = nodes_[node].outputs;
      if (outs.empty() || outs.back() != cat)
        outs.push_back(cat);
    }
  }

  root_next_.assign(symbols_.size(), kNone);
  for (auto [sym, next] : nodes_[kRoot].children)
    root_next_[sym] = next;

  // Breadth-first failure links; a node's fail target is always shallower.
  std::deque<std::uint32_t> queue;
  for (auto [sym, next] : nodes_[kRoot].children)
    queue.push_back(next);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (auto [sym, v] : nodes_[u].children) {
      std::uint32_t f = nodes_[u].fail;
      std::uint32_t target = kNone;
      while (true) {
        target = child(f, sym);
        if (target != kNone || f == kRoot)
          break;
        f = nodes_[f].fail;
      }
      nodes_[v].fail = (target == kNone || target == v) ? kRoot : target;
      const Node& fail_node = nodes_[nodes_[v].fail];
      nodes_[v].output_link = fail_node.outputs.empty() ? fail_node.output_link : nodes_[v].fail;
      queue.push_back(v);
    }
  }
}

std::uint32_t Matcher::child(std::uint32_t node, std::uint32_t symbol) const {
  if (node == kRoot)
    return root_next_[symbol];
  auto it = edges_.find(edge_key(node, symbol));
  return it == edges_.end() ? kNone : it->second;
}

std::uint32_t Matcher::step(std::uint32_t node, std::uint32_t symbol) const {
  while (true) {
    std::uint32_t next = child(node, symbol);
    if (next != kNone)
      return next;
    if (node == kRoot)
      return kRoot;
    node = nodes_[node].fail;
  }
}

void Matcher::match_into(std::span<const Token> tokens, std::vector<std::uint8_t>& hits) const {
  hits.assign(categories_.size(), 0);
  std::size_t remaining = categories_.size();
  std::uint32_t state = kRoot;
  for (const Token& tok : tokens) {
    if (remaining == 0)
      return;
    auto sym = symbols_.find(tok);
    if (sym == symbols_.end()) {
      state = kRoot;
      continue;
    }
    state = step(state, sym->second);
    for (std::uint32_t s = nodes_[state].outputs.empty() ? nodes_[state].output_link : state; s != kNone;
         s = nodes_[s].output_link) {
      for (std::uint32_t cat : nodes_[s].outputs) {
        if (!hits[cat]) {
          hits[cat] = 1;
          --remaining;
        }
      }
    }
  }
}

std::vector<std::uint32_t> Matcher::match_indices(std::span<const Token> tokens) const {
  std::vector<std::uint8_t> hits;
  match_into(tokens, hits);
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < hits.size(); ++c)
    if (hits[c])
      out.push_back(c);
  return out;
}

std::vector<std::string> match_doc(const Matcher& matcher, const TokenizedDoc& doc) {
  std::vector<std::string> out;
  for (auto c : matcher.match_indices(doc.tokens))
    out.push_back(matcher.categories()[c]);
  return out;
}

} // namespace crisismon
