#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "sipwm/attack_sim.hpp"
#include "sipwm/random.hpp"
#include "sipwm/rpg_codec.hpp"
#include "sipwm/serialization.hpp"
#include "sipwm/sip_codec.hpp"

namespace sipwm {
namespace {

ReduciblePermutationGraph graph_of(std::uint64_t value) {
  return encode_sip_to_rpg(encode_w_to_sip(Watermark::from_uint64(value)));
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++count;
  return count;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const CodecError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no CodecError thrown";
  return ErrorCode::invalid_watermark;
}

TEST(WriteRpg, SmallestGraph) {
  const ReduciblePermutationGraph g({2});
  EXPECT_EQ(write_rpg(g), "RPG 1\n2 1 L\n1 0 L\n1 2 F\n");
}

TEST(WriteRpg, Twelve) {
  const std::string text = write_rpg(graph_of(12));
  EXPECT_EQ(text,
            "RPG 9\n"
            "10 9 L\n9 8 L\n8 7 L\n7 6 L\n6 5 L\n5 4 L\n4 3 L\n3 2 L\n2 1 L\n1 0 L\n"
            "1 8 F\n2 8 F\n3 4 F\n4 7 F\n5 10 F\n6 10 F\n7 8 F\n8 9 F\n9 10 F\n");
}

TEST(WriteRpg, CanonicalRegardlessOfEdgeOrder) {
  const auto g = graph_of(12).to_labeled();
  auto edges = g.edges();
  std::reverse(edges.begin(), edges.end());
  EXPECT_EQ(write_rpg(LabeledGraph(g.body_size(), edges)), write_rpg(g));
}

TEST(ReadRpg, RoundTrip) {
  StableRng rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t value = 1 + (rng.next() >> 4);
    const auto g = graph_of(value);
    const std::string text = write_rpg(g);
    const auto back = read_rpg(text);
    ASSERT_EQ(back, g) << value;
    ASSERT_EQ(write_rpg(back), text);
  }
}

TEST(ReadRpg, Errors) {
  auto parse = [](const char* text) { return code_of([&] { (void)read_rpg(text); }); };
  EXPECT_EQ(parse(""), ErrorCode::parse_error);
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 L\n1 2 F"), ErrorCode::parse_error);        // no final LF
  EXPECT_EQ(parse("RPG\n"), ErrorCode::parse_error);                              // header
  EXPECT_EQ(parse("GRAPH 1\n2 1 L\n1 0 L\n1 2 F\n"), ErrorCode::parse_error);     // header keyword
  EXPECT_EQ(parse("RPG x\n2 1 L\n1 0 L\n1 2 F\n"), ErrorCode::parse_error);       // header count
  EXPECT_EQ(parse("RPG 1\n2  1 L\n1 0 L\n1 2 F\n"), ErrorCode::parse_error);      // double space
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 L\n1 2 F\n1 2 F\n"), ErrorCode::parse_error); // duplicate edge
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 L\n1 3 F\n"), ErrorCode::parse_error);       // label out of range
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 F\n1 2 F\n"), ErrorCode::parse_error);       // kind arity
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 L\n1 2 X\n"), ErrorCode::parse_error);       // kind token
  EXPECT_EQ(parse("RPG 1\n2 1 L\n1 0 L\n1 -2 F\n"), ErrorCode::parse_error);      // sign
  EXPECT_EQ(parse("RPG 2\n3 1 L\n2 1 L\n1 0 L\n1 3 F\n2 3 F\n"), ErrorCode::parse_error);  // skipping list edge
  EXPECT_EQ(parse("RPG 0\n"), ErrorCode::parse_error);
  // well formed but structurally not a codec graph: u2's forward pointer goes down
  EXPECT_EQ(parse("RPG 2\n3 2 L\n2 1 L\n1 0 L\n1 3 F\n2 0 F\n"), ErrorCode::graph_structure);
}

TEST(ReadLabeledGraph, KeepsDamage) {
  auto g = graph_of(12).to_labeled();
  g.add_edge({4, 3, EdgeKind::list});
  g.remove_edge(0);
  const auto text = write_rpg(g);
  const auto back = read_labeled_graph(text);
  EXPECT_EQ(write_rpg(back), text);
  EXPECT_EQ(back.edges().size(), g.edges().size());
  EXPECT_THROW((void)read_rpg(text), CodecError);
}

TEST(Unlabeled, StrippedTwelveRoundTrips) {
  const auto stripped = strip_labels(graph_of(12).to_labeled());
  const std::string text = write_unlabeled(stripped);
  EXPECT_TRUE(text.starts_with("EDGES 11\n"));
  EXPECT_EQ(count_of(text, "\n"), 20u);
  const auto back = read_unlabeled(text);
  auto a = back.edges;
  auto b = stripped.edges;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  EXPECT_EQ(write_unlabeled(back), text);
  EXPECT_EQ(restore_labels(back), graph_of(12));
}

TEST(Unlabeled, Errors) {
  auto parse = [](const char* text) { return code_of([&] { (void)read_unlabeled(text); }); };
  EXPECT_EQ(parse("EDGES 0\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("EDGES 2\n5 6\n5 6\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("EDGES 1\n5 5\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("EDGES 2\n5 x\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("EDGES 3\n5 6\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("EDGES 2\n5 6 7\n"), ErrorCode::parse_error);
  EXPECT_EQ(parse("RPG 2\n5 6\n"), ErrorCode::parse_error);
}

TEST(Permutation, TextFormat) {
  EXPECT_EQ(write_permutation(encode_w_to_sip(Watermark::from_uint64(12))), "5 6 9 8 1 2 7 4 3\n");
  EXPECT_EQ(read_permutation("5 6 9 8 1 2 7 4 3\n"), (Sequence{5, 6, 9, 8, 1, 2, 7, 4, 3}));
  EXPECT_EQ(read_permutation("2 1 2\n"), (Sequence{2, 1, 2}));  // not judged here
  EXPECT_EQ(write_sequence(Sequence{6, 5, -1}), "6 5 -1\n");
  EXPECT_THROW((void)read_permutation("1 2\n3\n"), CodecError);
  EXPECT_THROW((void)read_permutation("1 2"), CodecError);
  EXPECT_THROW((void)read_permutation("1 +2\n"), CodecError);
}

TEST(ExportDot, Twelve) {
  const auto g = graph_of(12);
  const std::string dot = export_dot(g);
  EXPECT_EQ(count_of(dot, " -> "), 2 * g.body_size() + 1);
  EXPECT_EQ(count_of(dot, "style=solid"), 10u);
  EXPECT_EQ(count_of(dot, "style=dashed"), 9u);
  EXPECT_TRUE(dot.starts_with("digraph rpg {\n"));
  EXPECT_TRUE(dot.ends_with("}\n"));
  EXPECT_EQ(dot, export_dot(graph_of(12)));

  const std::string annotated = export_dot(g, true);
  EXPECT_NE(annotated.find("10 [label=\"s (u10)\", shape=doublecircle, style=bold];"), std::string::npos);
  EXPECT_NE(annotated.find("0 [label=\"t (u0)\""), std::string::npos);
  EXPECT_NE(annotated.find("5 [label=\"u5\"];"), std::string::npos);
  EXPECT_EQ(count_of(annotated, " -> "), 19u);
}

TEST(ExportDot, EdgeCountIsTwoNPlusOne) {
  for (std::uint64_t value = 1; value <= 500; ++value) {
    const auto g = graph_of(value);
    ASSERT_EQ(count_of(export_dot(g), " -> "), 2 * g.body_size() + 1);
  }
}

}  // namespace
}  // namespace sipwm
