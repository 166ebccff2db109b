#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "sipwm/attack_sim.hpp"
#include "sipwm/graph_analysis.hpp"
#include "sipwm/random.hpp"
#include "sipwm/rpg_codec.hpp"
#include "sipwm/sip_codec.hpp"

namespace sipwm {
namespace {

ReduciblePermutationGraph graph_of(std::uint64_t value) {
  return encode_sip_to_rpg(encode_w_to_sip(Watermark::from_uint64(value)));
}

ReduciblePermutationGraph graph_of_sip(std::vector<Label> values) { return encode_sip_to_rpg(Permutation(std::move(values))); }

std::size_t index_of(const LabeledGraph& g, Label from, Label to) {
  const auto& edges = g.edges();
  const auto it = std::find_if(edges.begin(), edges.end(), [&](const LabeledEdge& e) { return e.from == from && e.to == to; });
  return static_cast<std::size_t>(it - edges.begin());
}

HamiltonianPath descending_labels(Label header) {
  HamiltonianPath path(header + 1);
  std::iota(path.rbegin(), path.rend(), Label{0});
  return path;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const CodecError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no CodecError thrown";
  return ErrorCode::parse_error;
}

TEST(UniqueHamiltonianPath, Examples) {
  EXPECT_EQ(unique_hamiltonian_path(graph_of_sip({2, 1, 3})), (HamiltonianPath{4, 3, 2, 1, 0}));
  EXPECT_EQ(unique_hamiltonian_path(graph_of_sip({5, 6, 9, 8, 1, 2, 7, 4, 3})), descending_labels(10));
  EXPECT_EQ(unique_hamiltonian_path(graph_of_sip({1})), (HamiltonianPath{2, 1, 0}));
}

TEST(UniqueHamiltonianPath, RejectsWrongOutdegreeProfile) {
  auto g = graph_of(12).to_labeled();
  g.remove_edge(index_of(g, 3, 4));  // u3 now also has outdegree 1
  EXPECT_EQ(code_of([&] { (void)unique_hamiltonian_path(g); }), ErrorCode::no_hamiltonian_path);
  EXPECT_EQ(code_of([&] { (void)unique_hamiltonian_path(LabeledGraph(1, {})); }), ErrorCode::no_hamiltonian_path);
}

TEST(UniqueHamiltonianPath, IndependentOfNeighborOrder) {
  for (std::uint64_t value = 1; value <= 4096; ++value) {
    const auto g = graph_of(value);
    const auto up = unique_hamiltonian_path(g, NeighborOrder::ascending);
    ASSERT_EQ(up, unique_hamiltonian_path(g, NeighborOrder::descending));
    ASSERT_EQ(up, descending_labels(g.header()));
  }
}

TEST(ValidateRpg, CodecGraphsPass) {
  for (std::uint64_t value = 1; value <= 2000; ++value) ASSERT_TRUE(validate_rpg(graph_of(value).to_labeled()).ok()) << value;
}

TEST(ValidateRpg, MissingFooterListPointer) {
  auto g = graph_of(12).to_labeled();
  g.remove_edge(index_of(g, 1, 0));
  const auto report = validate_rpg(g);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has(1, RpgViolationKind::body_outdegree));
  EXPECT_TRUE(report.has(1, RpgViolationKind::missing_list_pointer));
  EXPECT_TRUE(report.has(0, RpgViolationKind::unreachable_node));
}

TEST(ValidateRpg, ReversedForwardPointer) {
  auto g = graph_of(12).to_labeled();
  g.flip_edge(index_of(g, 3, 4));
  const auto report = validate_rpg(g);
  EXPECT_TRUE(report.has(3, RpgViolationKind::body_outdegree));
  EXPECT_TRUE(report.has(4, RpgViolationKind::body_outdegree));
  EXPECT_TRUE(report.has(4, RpgViolationKind::duplicate_edge));
  EXPECT_EQ(report.describe().substr(0, 22), "body-outdegree at u3; ");
}

TEST(ValidateRpg, BackwardForwardPointer) {
  // u5 -> u2 is a second edge to a lower label
  auto g = graph_of(12).to_labeled();
  g.add_edge({5, 2, EdgeKind::forward});
  const auto report = validate_rpg(g);
  EXPECT_TRUE(report.has(5, RpgViolationKind::forward_pointer_not_higher));
  EXPECT_TRUE(report.has(5, RpgViolationKind::body_outdegree));
}

TEST(ValidateRpg, HeaderAndFooterChecks) {
  auto g = graph_of(12).to_labeled();
  g.add_edge({0, 5, EdgeKind::forward});
  g.add_edge({10, 3, EdgeKind::forward});
  const auto report = validate_rpg(g);
  EXPECT_TRUE(report.has(0, RpgViolationKind::footer_outdegree));
  EXPECT_TRUE(report.has(10, RpgViolationKind::header_outdegree));
}

TEST(ValidateRpg, EverySingleEditIsDetected) {
  for (std::uint64_t value = 1; value <= 64; ++value) {
    const auto base = graph_of(value).to_labeled();
    for (std::size_t k = 0; k < base.edges().size(); ++k) {
      auto deleted = base;
      deleted.remove_edge(k);
      ASSERT_FALSE(validate_rpg(deleted).ok()) << "w=" << value << " delete #" << k;
      auto flipped = base;
      flipped.flip_edge(k);
      ASSERT_FALSE(validate_rpg(flipped).ok()) << "w=" << value << " flip #" << k;
    }
    for (Label a = 0; a < base.node_count(); ++a) {
      for (Label b = 0; b < base.node_count(); ++b) {
        auto added = base;
        added.add_edge({a, b, b + 1 == a ? EdgeKind::list : EdgeKind::forward});
        ASSERT_FALSE(validate_rpg(added).ok()) << "w=" << value << " add " << a << "->" << b;
      }
    }
  }
}

TEST(ToRpg, RejectsDamage) {
  auto g = graph_of(12).to_labeled();
  EXPECT_EQ(to_rpg(g), graph_of(12));
  g.remove_edge(0);
  EXPECT_EQ(code_of([&] { (void)to_rpg(g); }), ErrorCode::graph_structure);
}

TEST(RestoreLabels, ScrambledTwelveDecodes) {
  const auto g = graph_of(12).to_labeled();
  const std::vector<std::uint64_t> relabel{70, 3, 41, 8, 99, 12, 5, 60, 33, 17, 24};
  const auto restored = restore_labels(scramble_labels(g, relabel));
  EXPECT_EQ(restored, graph_of(12));
  EXPECT_EQ(decode_sip_to_w(decode_rpg_to_sip(restored)), Watermark::from_uint64(12));
}

TEST(RestoreLabels, SmallestGraph) {
  // a -> b, b -> c, b -> a
  const UnlabeledGraph g{{{10, 20}, {20, 30}, {20, 10}}};
  const auto restored = restore_labels(g);
  EXPECT_EQ(restored.forward_targets(), (std::vector<Label>{2}));
  EXPECT_EQ(decode_rpg_to_sip(restored), Permutation({1}));
}

TEST(RestoreLabels, Errors) {
  EXPECT_EQ(code_of([] { (void)restore_labels(UnlabeledGraph{{{1, 2}, {1, 3}}}); }), ErrorCode::restore_failed);
  EXPECT_EQ(code_of([] { (void)restore_labels(UnlabeledGraph{{{1, 2}}}); }), ErrorCode::restore_failed);
  // outdegree profile 1, 2, 2, 0 but the walk gets stuck: 7 -> 8, 8 -> {7, 9}, 9 -> {7, 8}, 10 isolated
  EXPECT_EQ(code_of([] { (void)restore_labels(UnlabeledGraph{{{7, 8}, {8, 7}, {8, 9}, {9, 7}, {9, 8}, {10, 10}}}); }),
            ErrorCode::restore_failed);
  // damaged codec graph: one list edge removed
  auto g = graph_of(12).to_labeled();
  g.remove_edge(index_of(g, 7, 6));
  EXPECT_EQ(code_of([&] { (void)restore_labels(strip_labels(g)); }), ErrorCode::restore_failed);
}

TEST(RestoreLabels, InvertsAnyRelabeling) {
  StableRng rng(11);
  for (std::uint64_t value = 1; value <= 1024; ++value) {
    const auto g = graph_of(value);
    const auto labeled = g.to_labeled();
    ASSERT_EQ(restore_labels(strip_labels(labeled)), g);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::uint64_t> relabel(labeled.node_count());
      for (auto& id : relabel) id = rng.next() >> 1;
      std::sort(relabel.begin(), relabel.end());
      relabel.erase(std::unique(relabel.begin(), relabel.end()), relabel.end());
      ASSERT_EQ(relabel.size(), labeled.node_count());
      for (std::size_t v = relabel.size(); v > 1; --v) std::swap(relabel[v - 1], relabel[rng.below(v)]);
      ASSERT_EQ(restore_labels(scramble_labels(labeled, relabel)), g) << value;
    }
  }
}

TEST(RepairListPointers, DeletedListEdge) {
  const auto original = graph_of(12);
  auto g = original.to_labeled();
  g.remove_edge(index_of(g, 7, 6));
  const auto repair = repair_list_pointers(g);
  EXPECT_EQ(repair.graph, original);
  EXPECT_EQ(repair.missing, (std::vector<LabeledEdge>{{7, 6, EdgeKind::list}}));
  EXPECT_TRUE(repair.extra.empty());
}

TEST(RepairListPointers, UndamagedIsUnchanged) {
  const auto original = graph_of(12);
  const auto repair = repair_list_pointers(original.to_labeled());
  EXPECT_EQ(repair.graph, original);
  EXPECT_FALSE(repair.changed());
}

TEST(RepairListPointers, FlippedListEdge) {
  const auto original = graph_of(12);
  auto g = original.to_labeled();
  g.flip_edge(index_of(g, 4, 3));
  const auto repair = repair_list_pointers(g);
  EXPECT_EQ(repair.graph, original);
  EXPECT_EQ(repair.missing, (std::vector<LabeledEdge>{{4, 3, EdgeKind::list}}));
  EXPECT_EQ(repair.extra, (std::vector<LabeledEdge>{{3, 4, EdgeKind::list}}));
}

TEST(RepairListPointers, ForwardDamageIsAnError) {
  auto g = graph_of(12).to_labeled();
  g.remove_edge(index_of(g, 3, 4));
  EXPECT_EQ(code_of([&] { (void)repair_list_pointers(g); }), ErrorCode::forward_damage);

  auto flipped = graph_of(12).to_labeled();
  flipped.flip_edge(index_of(flipped, 1, 8));
  EXPECT_EQ(code_of([&] { (void)repair_list_pointers(flipped); }), ErrorCode::forward_damage);
}

TEST(RepairListPointers, ManyListEditsAndIdempotence) {
  StableRng rng(17);
  for (std::uint64_t value = 1; value <= 256; ++value) {
    const auto original = graph_of(value);
    auto g = original.to_labeled();
    const std::size_t edits = 1 + rng.below(g.body_size() + 1);
    for (std::size_t k = 0; k < edits; ++k) {
      std::vector<std::size_t> lists;
      for (std::size_t q = 0; q < g.edges().size(); ++q) {
        const auto& e = g.edges()[q];
        if (e.kind == EdgeKind::list && e.to + 1 == e.from) lists.push_back(q);
      }
      if (lists.empty()) break;
      const std::size_t pick = lists[rng.below(lists.size())];
      rng.below(2) == 0 ? g.remove_edge(pick) : g.flip_edge(pick);
    }
    const auto once = repair_list_pointers(g);
    ASSERT_EQ(once.graph, original) << value;
    const auto twice = repair_list_pointers(once.graph.to_labeled());
    ASSERT_EQ(twice.graph, once.graph);
    ASSERT_FALSE(twice.changed());
  }
}

TEST(RepairListPointers, CommutesWithRestore) {
  StableRng rng(23);
  for (std::uint64_t value = 1; value <= 256; ++value) {
    const auto labeled = graph_of(value).to_labeled();
    std::vector<std::uint64_t> relabel(labeled.node_count());
    std::iota(relabel.begin(), relabel.end(), std::uint64_t{1000});
    for (std::size_t v = relabel.size(); v > 1; --v) std::swap(relabel[v - 1], relabel[rng.below(v)]);

    const auto repaired_then_restored =
        restore_labels(scramble_labels(repair_list_pointers(labeled).graph.to_labeled(), relabel));
    const auto restored_then_repaired =
        repair_list_pointers(restore_labels(scramble_labels(labeled, relabel)).to_labeled()).graph;
    ASSERT_EQ(repaired_then_restored, restored_then_repaired);
  }
}

}  // namespace
}  // namespace sipwm
