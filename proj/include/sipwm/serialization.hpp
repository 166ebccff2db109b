#pragma once

// Line-oriented text formats.
//
//   permutation:  "5 6 9 8 1 2 7 4 3\n"
//   graph:        "RPG <n>\n", then "<from> <to> L\n" for from = n+1 down to 1,
//                 then "<from> <to> F\n" for from = 1 up to n
//   unlabeled:    "EDGES <node_count>\n", then "<a> <b>\n" per edge
//
// Tokens are separated by single spaces and every line ends with LF.

#include <algorithm>
#include <charconv>
#include <limits>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/graph.hpp"
#include "sipwm/graph_analysis.hpp"
#include "sipwm/permutation.hpp"
#include "sipwm/rpg_codec.hpp"

namespace sipwm {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.empty()) throw CodecError(ErrorCode::parse_error, "empty input");
  if (text.back() != '\n') throw CodecError(ErrorCode::parse_error, "last line is not newline-terminated");
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_tokens(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(' ', start);
    const std::string_view token = line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (token.empty()) {
      throw CodecError(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": empty token (tokens take single spaces)");
    }
    tokens.push_back(token);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return tokens;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line_no) {
  Int value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const bool digits_only = std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; }) ||
                           (std::is_signed_v<Int> && token.size() > 1 && token[0] == '-' &&
                            std::all_of(first + 1, last, [](char c) { return c >= '0' && c <= '9'; }));
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (!digits_only || ec != std::errc{} || ptr != last) {
    throw CodecError(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": bad integer '" + std::string(token) + "'");
  }
  return value;
}

inline Label parse_header(std::string_view line, std::string_view keyword) {
  const auto tokens = split_tokens(line, 1);
  if (tokens.size() != 2 || tokens[0] != keyword) {
    throw CodecError(ErrorCode::parse_error, "malformed header, expected '" + std::string(keyword) + " <count>'");
  }
  return parse_int<Label>(tokens[1], 1);
}

}  // namespace detail

// ---- permutations ----------------------------------------------------------------

inline std::string write_permutation(std::span<const Label> values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(values[k]);
  }
  out += '\n';
  return out;
}

inline std::string write_permutation(const Permutation& p) { return write_permutation(p.values()); }

inline std::string write_sequence(std::span<const std::int64_t> seq) {
  std::string out;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(seq[k]);
  }
  out += '\n';
  return out;
}

/// Reads the integers as given; whether they form a permutation is left to
/// validate_sip.
inline Sequence read_permutation(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.size() != 1) throw CodecError(ErrorCode::parse_error, "expected a single line");
  Sequence seq;
  for (auto token : detail::split_tokens(lines[0], 1)) seq.push_back(detail::parse_int<std::int64_t>(token, 1));
  return seq;
}

// ---- labeled graphs ----------------------------------------------------------------

/// Canonical for any labeled graph, damaged or not: list-kind edges by
/// descending source, then forward-kind edges by ascending source.
inline std::string write_rpg(const LabeledGraph& g) {
  std::vector<LabeledEdge> lists;
  std::vector<LabeledEdge> forwards;
  for (const auto& e : g.edges()) (e.kind == EdgeKind::list ? lists : forwards).push_back(e);
  std::sort(lists.begin(), lists.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
    return a.from != b.from ? a.from > b.from : a.to < b.to;
  });
  std::sort(forwards.begin(), forwards.end());

  std::string out = "RPG " + std::to_string(g.body_size()) + "\n";
  out.reserve(out.size() + 24 * g.edges().size());
  for (const auto& e : lists) out += std::to_string(e.from) + ' ' + std::to_string(e.to) + " L\n";
  for (const auto& e : forwards) out += std::to_string(e.from) + ' ' + std::to_string(e.to) + " F\n";
  return out;
}

inline std::string write_rpg(const ReduciblePermutationGraph& g) { return write_rpg(g.to_labeled()); }

/// Parses a graph file without judging its structure, so attacked graphs stay
/// readable. Labels must lie in 0..n+1.
inline LabeledGraph read_labeled_graph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const Label n = detail::parse_header(lines[0], "RPG");
  if (n >= std::numeric_limits<Label>::max() - 1) throw CodecError(ErrorCode::parse_error, "body size too large");
  std::vector<LabeledEdge> edges;
  edges.reserve(lines.size() - 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto tokens = detail::split_tokens(lines[k], k + 1);
    if (tokens.size() != 3 || (tokens[2] != "L" && tokens[2] != "F")) {
      throw CodecError(ErrorCode::parse_error, "line " + std::to_string(k + 1) + ": expected '<from> <to> L|F'");
    }
    const auto from = detail::parse_int<Label>(tokens[0], k + 1);
    const auto to = detail::parse_int<Label>(tokens[1], k + 1);
    if (from > n + 1 || to > n + 1) {
      throw CodecError(ErrorCode::parse_error, "line " + std::to_string(k + 1) + ": label out of range 0.." + std::to_string(n + 1));
    }
    edges.push_back({from, to, tokens[2] == "L" ? EdgeKind::list : EdgeKind::forward});
  }
  return LabeledGraph(n, std::move(edges));
}

/// Strict reader for intact codec graphs.
inline ReduciblePermutationGraph read_rpg(std::string_view text) {
  const LabeledGraph g = read_labeled_graph(text);
  const Label n = g.body_size();
  if (n == 0) throw CodecError(ErrorCode::parse_error, "graph has an empty body");

  std::set<std::pair<Label, Label>> seen;
  std::vector<int> list_count(g.node_count(), 0);
  std::vector<int> forward_count(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    if (!seen.emplace(e.from, e.to).second) {
      throw CodecError(ErrorCode::parse_error, "duplicate edge " + std::to_string(e.from) + " " + std::to_string(e.to));
    }
    if (e.kind == EdgeKind::list) {
      if (e.to + 1 != e.from) {
        throw CodecError(ErrorCode::parse_error, "list edge " + std::to_string(e.from) + " " + std::to_string(e.to) + " skips a label");
      }
      ++list_count[e.from];
    } else {
      ++forward_count[e.from];
    }
  }
  for (Label v = 0; v <= n + 1; ++v) {
    const int want_list = v == 0 ? 0 : 1;
    const int want_forward = v == 0 || v == n + 1 ? 0 : 1;
    if (list_count[v] != want_list || forward_count[v] != want_forward) {
      throw CodecError(ErrorCode::parse_error, "node " + std::to_string(v) + " has wrong edge-kind arity");
    }
  }
  return to_rpg(g);
}

// ---- unlabeled graphs ----------------------------------------------------------------

/// Edges are written sorted, so equal graphs give equal bytes.
inline std::string write_unlabeled(const UnlabeledGraph& g) {
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  std::set<std::uint64_t> ids;
  for (const auto& [a, b] : edges) ids.insert(a), ids.insert(b);
  std::string out = "EDGES " + std::to_string(ids.size()) + "\n";
  for (const auto& [a, b] : edges) out += std::to_string(a) + ' ' + std::to_string(b) + '\n';
  return out;
}

inline UnlabeledGraph read_unlabeled(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const Label declared = detail::parse_header(lines[0], "EDGES");
  UnlabeledGraph g;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::set<std::uint64_t> ids;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto tokens = detail::split_tokens(lines[k], k + 1);
    if (tokens.size() != 2) throw CodecError(ErrorCode::parse_error, "line " + std::to_string(k + 1) + ": expected '<a> <b>'");
    const auto a = detail::parse_int<std::uint64_t>(tokens[0], k + 1);
    const auto b = detail::parse_int<std::uint64_t>(tokens[1], k + 1);
    if (a == b) throw CodecError(ErrorCode::parse_error, "line " + std::to_string(k + 1) + ": self-loop");
    if (!seen.emplace(a, b).second) throw CodecError(ErrorCode::parse_error, "line " + std::to_string(k + 1) + ": duplicate edge");
    ids.insert(a);
    ids.insert(b);
    g.edges.emplace_back(a, b);
  }
  if (g.edges.empty()) throw CodecError(ErrorCode::parse_error, "edge set is empty");
  if (ids.size() != declared) {
    throw CodecError(ErrorCode::parse_error, "header declares " + std::to_string(declared) + " nodes, edges use " + std::to_string(ids.size()));
  }
  return g;
}

// ---- DOT ----------------------------------------------------------------

/// List pointers solid, forward pointers dashed. With `annotate`, the header
/// and footer are named and styled and body nodes carry u_i labels.
inline std::string export_dot(const LabeledGraph& g, bool annotate = false) {
  std::string out = "digraph rpg {\n";
  if (annotate) {
    const Label s = g.header();
    out += "  " + std::to_string(s) + " [label=\"s (u" + std::to_string(s) + ")\", shape=doublecircle, style=bold];\n";
    out += "  0 [label=\"t (u0)\", shape=doublecircle];\n";
    for (Label i = 1; i <= g.body_size(); ++i) {
      out += "  " + std::to_string(i) + " [label=\"u" + std::to_string(i) + "\"];\n";
    }
  }
  std::string body = write_rpg(g);
  for (const auto& line : detail::split_lines(body)) {
    if (line.starts_with("RPG")) continue;
    const auto tokens = detail::split_tokens(line, 0);
    out += "  " + std::string(tokens[0]) + " -> " + std::string(tokens[1]) +
           (tokens[2] == "L" ? " [style=solid];\n" : " [style=dashed];\n");
  }
  out += "}\n";
  return out;
}

inline std::string export_dot(const ReduciblePermutationGraph& g, bool annotate = false) {
  return export_dot(g.to_labeled(), annotate);
}

}  // namespace sipwm
