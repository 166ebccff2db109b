#pragma once

// Permutation <-> reducible permutation flow-graph codec.
//
// Node layout: u_0 is the footer t, u_1..u_n are body nodes, u_{n+1} is the
// header s. Every u_i (i >= 1) carries a list pointer to u_{i-1}; every body
// node u_i additionally carries a forward pointer to u_{p(i)}, where p(i) is
// the maximum-labeled didominator of element i (s when nothing dominates i).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/graph.hpp"
#include "sipwm/permutation.hpp"

namespace sipwm {

/// p(i) for i in 1..n; index 0 is unused. n+1 stands for the header s.
struct MaxDidominatorMap {
  std::vector<Label> target;

  std::size_t size() const noexcept { return target.empty() ? 0 : target.size() - 1; }
  Label operator()(Label element) const { return target.at(element); }
  friend bool operator==(const MaxDidominatorMap&, const MaxDidominatorMap&) = default;
};

/// Nearest greater element to the left, with n+1 as the sentinel. One pass,
/// each element pushed and popped at most once.
inline MaxDidominatorMap compute_max_didominators(const Permutation& p) {
  const auto n = static_cast<Label>(p.size());
  MaxDidominatorMap map;
  map.target.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Label> stack;
  stack.reserve(p.size() + 1);
  stack.push_back(n + 1);
  for (Label value : p.values()) {
    while (stack.back() < value) stack.pop_back();
    map.target[value] = stack.back();
    stack.push_back(value);
  }
  return map;
}

/// Didomination dag over v_0 (t), v_1..v_n, v_{n+1} (s). Edges run from the
/// didominator to the didominated element. Diagnostic only: construction is
/// quadratic.
struct DidominationDag {
  Label n = 0;
  std::vector<std::pair<Label, Label>> edges;

  Label source() const noexcept { return n + 1; }
  static constexpr Label sink() noexcept { return 0; }

  std::vector<Label> predecessors(Label v) const {
    std::vector<Label> preds;
    for (const auto& [a, b] : edges) {
      if (b == v) preds.push_back(a);
    }
    return preds;
  }
};

inline DidominationDag build_didomination_dag(const Permutation& p) {
  const auto n = static_cast<Label>(p.size());
  const auto values = p.values();
  DidominationDag dag;
  dag.n = n;

  // For each j, walk left from its position. A greater element k didominates j
  // iff no element seen so far (between k and j) has a value in (j, k).
  std::vector<std::size_t> indeg(static_cast<std::size_t>(n) + 2, 0);
  std::vector<std::size_t> outdeg(static_cast<std::size_t>(n) + 2, 0);
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    const Label j = values[pos];
    Label min_greater = std::numeric_limits<Label>::max();
    for (std::size_t q = pos; q-- > 0;) {
      const Label k = values[q];
      if (k > j && k < min_greater) {
        dag.edges.emplace_back(k, j);
        ++outdeg[k];
        ++indeg[j];
        min_greater = k;
      }
    }
  }
  for (Label v = 1; v <= n; ++v) {
    if (indeg[v] == 0) dag.edges.emplace_back(n + 1, v);
  }
  for (Label v = 1; v <= n; ++v) {
    if (outdeg[v] == 0) dag.edges.emplace_back(v, 0);
  }
  return dag;
}

/// F[pi] in compact form: list pointers are implied by the labels, only the
/// forward targets are stored.
class ReduciblePermutationGraph {
 public:
  ReduciblePermutationGraph() = default;

  /// forward[i - 1] is the forward target of body node u_i.
  explicit ReduciblePermutationGraph(std::vector<Label> forward) : forward_(std::move(forward)) {
    if (forward_.size() >= std::numeric_limits<Label>::max() - 1) {
      throw CodecError(ErrorCode::graph_structure, "graph too large");
    }
    const auto n = static_cast<Label>(forward_.size());
    for (Label i = 1; i <= n; ++i) {
      const Label m = forward_[i - 1];
      if (m <= i || m > n + 1) {
        throw CodecError(ErrorCode::graph_structure,
                         "forward pointer u" + std::to_string(i) + " -> u" + std::to_string(m) + " is not to a higher label");
      }
    }
  }

  Label body_size() const noexcept { return static_cast<Label>(forward_.size()); }
  std::size_t node_count() const noexcept { return forward_.size() + 2; }
  std::size_t edge_count() const noexcept { return 2 * forward_.size() + 1; }
  Label header() const noexcept { return body_size() + 1; }
  static constexpr Label footer() noexcept { return 0; }

  Label forward_target(Label body_node) const { return forward_.at(body_node - 1); }
  const std::vector<Label>& forward_targets() const noexcept { return forward_; }

  /// Canonical edge order: list pointers from the header down, then forward
  /// pointers from u_1 up.
  LabeledGraph to_labeled() const {
    std::vector<LabeledEdge> edges;
    edges.reserve(edge_count());
    for (Label i = header(); i >= 1; --i) edges.push_back({i, i - 1, EdgeKind::list});
    for (Label i = 1; i <= body_size(); ++i) edges.push_back({i, forward_[i - 1], EdgeKind::forward});
    return LabeledGraph(body_size(), std::move(edges));
  }

  friend bool operator==(const ReduciblePermutationGraph&, const ReduciblePermutationGraph&) = default;

 private:
  std::vector<Label> forward_;
};

using RPG = ReduciblePermutationGraph;

inline ReduciblePermutationGraph encode_sip_to_rpg(const Permutation& p) {
  if (p.size() == 0) throw CodecError(ErrorCode::not_a_permutation, "empty permutation");
  const MaxDidominatorMap map = compute_max_didominators(p);
  return ReduciblePermutationGraph(std::vector<Label>(map.target.begin() + 1, map.target.end()));
}

/// Forward pointers flipped: a tree rooted at s whose children lists are
/// sorted ascending (compressed-row layout).
struct DecodingTree {
  Label root = 0;
  std::vector<Label> parent;            // parent[v] for body v; entries 0 and root unused
  std::vector<std::size_t> child_begin;  // children of v are children[child_begin[v] .. child_begin[v+1])
  std::vector<Label> children;

  std::span<const Label> children_of(Label v) const {
    return std::span<const Label>(children).subspan(child_begin[v], child_begin[v + 1] - child_begin[v]);
  }
};

inline DecodingTree build_decoding_tree(const ReduciblePermutationGraph& g) {
  const Label n = g.body_size();
  DecodingTree tree;
  tree.root = n + 1;
  tree.parent.assign(static_cast<std::size_t>(n) + 2, 0);
  tree.child_begin.assign(static_cast<std::size_t>(n) + 3, 0);
  for (Label i = 1; i <= n; ++i) {
    tree.parent[i] = g.forward_target(i);
    ++tree.child_begin[tree.parent[i] + 1];
  }
  for (std::size_t v = 1; v < tree.child_begin.size(); ++v) tree.child_begin[v] += tree.child_begin[v - 1];
  tree.children.resize(n);
  std::vector<std::size_t> fill(tree.child_begin.begin(), tree.child_begin.end() - 1);
  // Ascending i keeps every children list sorted.
  for (Label i = 1; i <= n; ++i) tree.children[fill[tree.parent[i]]++] = i;
  return tree;
}

/// Preorder of the decoding tree, children visited minimum label first, with
/// the root dropped.
inline Permutation decode_rpg_to_sip(const ReduciblePermutationGraph& g) {
  const DecodingTree tree = build_decoding_tree(g);
  std::vector<Label> order;
  order.reserve(g.body_size());
  std::vector<Label> stack{tree.root};
  while (!stack.empty()) {
    const Label v = stack.back();
    stack.pop_back();
    if (v != tree.root) order.push_back(v);
    const auto kids = tree.children_of(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  // Forward targets are strictly higher, so every body node hangs off the root.
  return Permutation(std::move(order));
}

}  // namespace sipwm
