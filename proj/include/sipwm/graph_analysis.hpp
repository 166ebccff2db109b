#pragma once

// Structural checks and recovery on (possibly attacked) flow-graphs: outpointer
// validation, the unique Hamiltonian path, label restoration for unlabeled
// graphs and list-pointer repair.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <limits>
#include <utility>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/graph.hpp"
#include "sipwm/permutation.hpp"
#include "sipwm/rpg_codec.hpp"

namespace sipwm {

enum class RpgViolationKind {
  header_outdegree,
  footer_outdegree,
  body_outdegree,
  missing_list_pointer,
  forward_pointer_not_higher,
  duplicate_edge,
  unreachable_node,
};

inline std::string_view to_string(RpgViolationKind kind) {
  switch (kind) {
    case RpgViolationKind::header_outdegree: return "header-outdegree";
    case RpgViolationKind::footer_outdegree: return "footer-outdegree";
    case RpgViolationKind::body_outdegree: return "body-outdegree";
    case RpgViolationKind::missing_list_pointer: return "missing-list-pointer";
    case RpgViolationKind::forward_pointer_not_higher: return "forward-pointer-not-higher";
    case RpgViolationKind::duplicate_edge: return "duplicate-edge";
    case RpgViolationKind::unreachable_node: return "unreachable-node";
  }
  return "unknown";
}

struct RpgViolation {
  Label node;
  RpgViolationKind kind;

  friend bool operator==(const RpgViolation&, const RpgViolation&) = default;
};

struct RpgValidationReport {
  std::vector<RpgViolation> violations;

  bool ok() const noexcept { return violations.empty(); }

  bool has(Label node, RpgViolationKind kind) const {
    return std::find(violations.begin(), violations.end(), RpgViolation{node, kind}) != violations.end();
  }

  std::string describe() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.kind)) + " at u" + std::to_string(v.node);
    }
    return out;
  }
};

/// Checks the outpointer condition of every node and reports all violations.
inline RpgValidationReport validate_rpg(const LabeledGraph& g) {
  RpgValidationReport report;
  const Label n = g.body_size();
  const Label s = g.header();
  const auto succ = g.successors();
  auto add = [&](Label node, RpgViolationKind kind) { report.violations.push_back({node, kind}); };
  auto has_edge = [&](Label from, Label to) {
    return std::find(succ[from].begin(), succ[from].end(), to) != succ[from].end();
  };

  if (succ[s].size() != 1) add(s, RpgViolationKind::header_outdegree);
  if (!has_edge(s, n)) add(s, RpgViolationKind::missing_list_pointer);
  if (!succ[0].empty()) add(0, RpgViolationKind::footer_outdegree);

  for (Label i = 1; i <= n; ++i) {
    if (succ[i].size() != 2) add(i, RpgViolationKind::body_outdegree);
    if (!has_edge(i, i - 1)) add(i, RpgViolationKind::missing_list_pointer);
    if (std::any_of(succ[i].begin(), succ[i].end(), [i](Label t) { return t != i - 1 && t <= i; })) {
      add(i, RpgViolationKind::forward_pointer_not_higher);
    }
  }

  std::vector<std::pair<Label, Label>> pairs;
  pairs.reserve(g.edges().size());
  for (const auto& e : g.edges()) pairs.emplace_back(e.from, e.to);
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k] == pairs[k - 1] && (k < 2 || pairs[k - 2] != pairs[k])) add(pairs[k].first, RpgViolationKind::duplicate_edge);
  }

  std::vector<bool> seen(g.node_count(), false);
  std::vector<Label> frontier{s};
  seen[s] = true;
  while (!frontier.empty()) {
    const Label v = frontier.back();
    frontier.pop_back();
    for (Label t : succ[v]) {
      if (!seen[t]) {
        seen[t] = true;
        frontier.push_back(t);
      }
    }
  }
  for (Label v = 0; v <= s; ++v) {
    if (!seen[v]) add(v, RpgViolationKind::unreachable_node);
  }
  return report;
}

/// Converts a labeled graph that passes validate_rpg into compact form.
inline ReduciblePermutationGraph to_rpg(const LabeledGraph& g) {
  const RpgValidationReport report = validate_rpg(g);
  if (!report.ok()) throw CodecError(ErrorCode::graph_structure, report.describe());
  const Label n = g.body_size();
  std::vector<Label> forward(n, 0);
  for (const auto& e : g.edges()) {
    if (e.from >= 1 && e.from <= n && e.to != e.from - 1) forward[e.from - 1] = e.to;
  }
  return ReduciblePermutationGraph(std::move(forward));
}

/// Decodes a labeled graph, rejecting any structural damage first.
inline Permutation decode_rpg_to_sip(const LabeledGraph& g) { return decode_rpg_to_sip(to_rpg(g)); }

using HamiltonianPath = std::vector<Label>;

enum class NeighborOrder { ascending, descending };

/// DFS from the unique outdegree-1 node, nodes in discovery order. Throws
/// unless the discovery order is a Hamiltonian path of the graph.
inline HamiltonianPath unique_hamiltonian_path(const LabeledGraph& g, NeighborOrder order = NeighborOrder::ascending) {
  auto succ = g.successors();
  Label start = 0;
  std::size_t starts = 0;
  for (Label v = 0; v < succ.size(); ++v) {
    if (succ[v].size() == 1) {
      start = v;
      ++starts;
    }
  }
  if (starts != 1) {
    throw CodecError(ErrorCode::no_hamiltonian_path,
                     "expected exactly one outdegree-1 node, found " + std::to_string(starts));
  }
  for (auto& list : succ) {
    if (order == NeighborOrder::ascending) {
      std::sort(list.begin(), list.end());
    } else {
      std::sort(list.rbegin(), list.rend());
    }
  }

  HamiltonianPath path;
  path.reserve(g.node_count());
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::pair<Label, std::size_t>> stack{{start, 0}};
  seen[start] = true;
  path.push_back(start);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == succ[v].size()) {
      stack.pop_back();
      continue;
    }
    const Label t = succ[v][next++];
    if (!seen[t]) {
      seen[t] = true;
      path.push_back(t);
      stack.emplace_back(t, 0);
    }
  }

  if (path.size() != g.node_count()) {
    throw CodecError(ErrorCode::no_hamiltonian_path,
                     "DFS reached " + std::to_string(path.size()) + " of " + std::to_string(g.node_count()) + " nodes");
  }
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& out = succ[path[k - 1]];
    if (std::find(out.begin(), out.end(), path[k]) == out.end()) {
      throw CodecError(ErrorCode::no_hamiltonian_path,
                       "discovery order jumps from u" + std::to_string(path[k - 1]) + " to u" + std::to_string(path[k]));
    }
  }
  return path;
}

inline HamiltonianPath unique_hamiltonian_path(const ReduciblePermutationGraph& g,
                                               NeighborOrder order = NeighborOrder::ascending) {
  return unique_hamiltonian_path(g.to_labeled(), order);
}

/// Recovers codec labels from an intact graph with meaningless node ids by
/// walking the Hamiltonian path from the outdegree-1 header: at every node the
/// forward successor is already visited, so exactly one successor is new.
inline ReduciblePermutationGraph restore_labels(const UnlabeledGraph& g) {
  std::vector<std::uint64_t> ids;
  ids.reserve(2 * g.edges.size());
  for (const auto& [a, b] : g.edges) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::size_t count = ids.size();
  if (count < 3) throw CodecError(ErrorCode::restore_failed, "graph has fewer than 3 nodes");
  if (count - 2 >= std::numeric_limits<Label>::max() - 1) throw CodecError(ErrorCode::restore_failed, "graph too large");

  auto index_of = [&](std::uint64_t id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::vector<std::size_t>> succ(count);
  for (const auto& [a, b] : g.edges) succ[index_of(a)].push_back(index_of(b));

  std::size_t header = count;
  std::size_t footer = count;
  for (std::size_t v = 0; v < count; ++v) {
    const std::size_t deg = succ[v].size();
    if (deg == 0 || deg == 1) {
      std::size_t& slot = deg == 0 ? footer : header;
      if (slot != count) {
        throw CodecError(ErrorCode::restore_failed, std::string("more than one outdegree-") + (deg == 0 ? "0" : "1") + " node");
      }
      slot = v;
    } else if (deg != 2) {
      throw CodecError(ErrorCode::restore_failed, "node id " + std::to_string(ids[v]) + " has outdegree " + std::to_string(deg));
    }
  }
  if (header == count || footer == count) throw CodecError(ErrorCode::restore_failed, "no header or no footer node");

  constexpr Label unassigned = std::numeric_limits<Label>::max();
  std::vector<Label> label(count, unassigned);
  std::size_t current = header;
  auto next_label = static_cast<Label>(count - 1);
  while (true) {
    label[current] = next_label;
    if (next_label == 0) break;
    --next_label;
    std::size_t fresh = count;
    for (std::size_t t : succ[current]) {
      if (label[t] != unassigned) continue;
      if (fresh != count && fresh != t) {
        throw CodecError(ErrorCode::restore_failed, "node id " + std::to_string(ids[current]) + " has two unvisited successors");
      }
      fresh = t;
    }
    if (fresh == count) throw CodecError(ErrorCode::restore_failed, "walk stalled at node id " + std::to_string(ids[current]));
    current = fresh;
  }
  if (current != footer) throw CodecError(ErrorCode::restore_failed, "walk does not end at the footer");

  const auto n = static_cast<Label>(count - 2);
  std::vector<Label> forward(n, 0);
  std::vector<LabeledEdge> edges;
  edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    const Label from = label[index_of(a)];
    const Label to = label[index_of(b)];
    edges.push_back({from, to, to + 1 == from ? EdgeKind::list : EdgeKind::forward});
  }
  try {
    return to_rpg(LabeledGraph(n, std::move(edges)));
  } catch (const CodecError& e) {
    throw CodecError(ErrorCode::restore_failed, e.what());
  }
}

struct ListRepair {
  ReduciblePermutationGraph graph;
  std::vector<LabeledEdge> missing;  // list pointers absent from the input
  std::vector<LabeledEdge> extra;    // list-kind edges dropped from the input

  bool changed() const noexcept { return !missing.empty() || !extra.empty(); }
};

/// Rebuilds every list pointer from the labels. Forward pointers must be
/// intact: each body node keeps exactly one forward-kind edge to a higher
/// label, and the header and footer have none.
inline ListRepair repair_list_pointers(const LabeledGraph& g) {
  const Label n = g.body_size();
  std::vector<Label> forward(n, 0);
  std::vector<bool> list_present(static_cast<std::size_t>(n) + 2, false);
  std::vector<LabeledEdge> extra;

  for (const auto& e : g.edges()) {
    const bool list_shaped = e.to + 1 == e.from;
    if (e.kind == EdgeKind::list || list_shaped) {
      if (list_shaped && !list_present[e.from]) {
        list_present[e.from] = true;
      } else {
        extra.push_back(e);
      }
      continue;
    }
    if (e.from == 0 || e.from > n) {
      throw CodecError(ErrorCode::forward_damage, "forward-kind edge leaves u" + std::to_string(e.from));
    }
    if (e.to <= e.from || forward[e.from - 1] != 0) {
      throw CodecError(ErrorCode::forward_damage, "forward pointer of u" + std::to_string(e.from) + " is damaged");
    }
    forward[e.from - 1] = e.to;
  }
  for (Label i = 1; i <= n; ++i) {
    if (forward[i - 1] == 0) throw CodecError(ErrorCode::forward_damage, "u" + std::to_string(i) + " has no forward pointer");
  }

  ListRepair repair{ReduciblePermutationGraph(std::move(forward)), {}, std::move(extra)};
  for (Label i = n + 1; i >= 1; --i) {
    if (!list_present[i]) repair.missing.push_back({i, i - 1, EdgeKind::list});
  }
  return repair;
}

}  // namespace sipwm
