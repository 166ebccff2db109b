#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/permutation.hpp"

namespace sipwm {

/// L = list pointer (u_{i+1} -> u_i), F = forward (max-didomination) pointer.
enum class EdgeKind : std::uint8_t { list, forward };

struct LabeledEdge {
  Label from;
  Label to;
  EdgeKind kind;

  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

/// A graph over the labels 0..body_size+1 that may be arbitrarily damaged:
/// duplicate edges and wrong outdegrees are representable. The label
/// body_size+1 is the header s, 0 is the footer t.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  LabeledGraph(Label body_size, std::vector<LabeledEdge> edges) : body_size_(body_size), edges_(std::move(edges)) {
    for (const auto& e : edges_) check_label(e.from), check_label(e.to);
  }

  Label body_size() const noexcept { return body_size_; }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(body_size_) + 2; }
  Label header() const noexcept { return body_size_ + 1; }
  static constexpr Label footer() noexcept { return 0; }

  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }

  void add_edge(LabeledEdge e) {
    check_label(e.from);
    check_label(e.to);
    edges_.push_back(e);
  }

  void remove_edge(std::size_t index) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index)); }

  void flip_edge(std::size_t index) { std::swap(edges_.at(index).from, edges_.at(index).to); }

  /// Successor lists indexed by label, in edge order.
  std::vector<std::vector<Label>> successors() const {
    std::vector<std::vector<Label>> out(node_count());
    for (const auto& e : edges_) out[e.from].push_back(e.to);
    return out;
  }

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  void check_label(Label l) const {
    if (l > body_size_ + 1) {
      throw CodecError(ErrorCode::graph_structure,
                       "label " + std::to_string(l) + " outside 0.." + std::to_string(body_size_ + 1));
    }
  }

  Label body_size_ = 0;
  std::vector<LabeledEdge> edges_;
};

/// Graph whose node ids carry no codec meaning; the output of a label-strip or
/// label-scramble attack. Node ids are the distinct endpoints of the edges.
struct UnlabeledGraph {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;

  friend bool operator==(const UnlabeledGraph&, const UnlabeledGraph&) = default;
};

}  // namespace sipwm
