#pragma once

// Controlled attacks on permutations and flow-graphs, and a campaign runner
// that scores how the codec's checks respond to them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/graph.hpp"
#include "sipwm/graph_analysis.hpp"
#include "sipwm/permutation.hpp"
#include "sipwm/random.hpp"
#include "sipwm/rpg_codec.hpp"
#include "sipwm/sip_codec.hpp"
#include "sipwm/watermark.hpp"

namespace sipwm {

enum class AttackKind {
  none,  // control: no edit
  edge_flip,
  edge_add,
  edge_del,
  label_scramble,
  label_strip,
  node_del,
  sip_swap,
  sip_value_change,
};

enum class AttackLayer { graph, sip };

inline std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::none: return "none";
    case AttackKind::edge_flip: return "edge-flip";
    case AttackKind::edge_add: return "edge-add";
    case AttackKind::edge_del: return "edge-del";
    case AttackKind::label_scramble: return "label-scramble";
    case AttackKind::label_strip: return "label-strip";
    case AttackKind::node_del: return "node-del";
    case AttackKind::sip_swap: return "sip-swap";
    case AttackKind::sip_value_change: return "sip-value-change";
  }
  return "unknown";
}

inline std::string_view to_string(AttackLayer layer) { return layer == AttackLayer::graph ? "graph" : "sip"; }

inline AttackKind parse_attack_kind(std::string_view text) {
  for (auto kind : {AttackKind::none, AttackKind::edge_flip, AttackKind::edge_add, AttackKind::edge_del,
                    AttackKind::label_scramble, AttackKind::label_strip, AttackKind::node_del, AttackKind::sip_swap,
                    AttackKind::sip_value_change}) {
    if (to_string(kind) == text) return kind;
  }
  throw CodecError(ErrorCode::parse_error, "unknown attack kind '" + std::string(text) + "'");
}

/// node-del applies to either layer; every other kind belongs to exactly one.
constexpr AttackLayer default_layer(AttackKind kind) noexcept {
  return kind == AttackKind::sip_swap || kind == AttackKind::sip_value_change ? AttackLayer::sip : AttackLayer::graph;
}

struct AttackSpec {
  AttackKind kind = AttackKind::none;
  std::uint32_t count = 1;
  std::uint64_t seed = 0;
  AttackLayer layer = default_layer(kind);

  static AttackSpec make(AttackKind kind, std::uint32_t count = 1, std::uint64_t seed = 0) {
    return AttackSpec{kind, count, seed, default_layer(kind)};
  }
  static AttackSpec on_sip(AttackKind kind, std::uint32_t count = 1, std::uint64_t seed = 0) {
    return AttackSpec{kind, count, seed, AttackLayer::sip};
  }
};

enum class EditOp {
  remove_edge,     // a -> b
  add_edge,        // a -> b
  remove_node,     // label a; higher labels shift down by one
  relabel,         // id a becomes id b
  swap,            // positions a, b (1-indexed)
  set_value,       // position a takes value b
  remove_element,  // position a, which held value b
};

inline std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::remove_edge: return "remove-edge";
    case EditOp::add_edge: return "add-edge";
    case EditOp::remove_node: return "remove-node";
    case EditOp::relabel: return "relabel";
    case EditOp::swap: return "swap";
    case EditOp::set_value: return "set-value";
    case EditOp::remove_element: return "remove-element";
  }
  return "unknown";
}

struct Edit {
  EditOp op;
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const Edit&, const Edit&) = default;
};

using EditLog = std::vector<Edit>;

struct GraphAttackResult {
  std::variant<LabeledGraph, UnlabeledGraph> graph;
  EditLog log;

  bool labeled() const noexcept { return std::holds_alternative<LabeledGraph>(graph); }
};

struct SipAttackResult {
  Sequence sequence;
  EditLog log;
};

// ---- single-edit primitives ------------------------------------------------

inline void delete_edge(LabeledGraph& g, std::size_t index, EditLog& log) {
  const LabeledEdge e = g.edges().at(index);
  log.push_back({EditOp::remove_edge, e.from, e.to});
  g.remove_edge(index);
}

inline void flip_edge(LabeledGraph& g, std::size_t index, EditLog& log) {
  const LabeledEdge e = g.edges().at(index);
  log.push_back({EditOp::remove_edge, e.from, e.to});
  log.push_back({EditOp::add_edge, e.to, e.from});
  g.flip_edge(index);
}

/// Kind follows the label relation: an edge to the next lower label looks like
/// a list pointer, anything else like a forward pointer.
inline void insert_edge(LabeledGraph& g, Label from, Label to, EditLog& log) {
  log.push_back({EditOp::add_edge, from, to});
  g.add_edge({from, to, to + 1 == from ? EdgeKind::list : EdgeKind::forward});
}

/// Removes body node `label` and its incident edges, then closes the label gap.
inline LabeledGraph delete_node(const LabeledGraph& g, Label label, EditLog& log) {
  if (label == 0 || label > g.body_size()) {
    throw CodecError(ErrorCode::inapplicable_attack, "node-del only targets body nodes");
  }
  if (g.body_size() == 1) throw CodecError(ErrorCode::inapplicable_attack, "node-del would leave an empty body");
  std::vector<LabeledEdge> kept;
  for (const auto& e : g.edges()) {
    if (e.from == label || e.to == label) {
      log.push_back({EditOp::remove_edge, e.from, e.to});
      continue;
    }
    kept.push_back({e.from > label ? e.from - 1 : e.from, e.to > label ? e.to - 1 : e.to, e.kind});
  }
  log.push_back({EditOp::remove_node, label, 0});
  return LabeledGraph(g.body_size() - 1, std::move(kept));
}

inline UnlabeledGraph strip_labels(const LabeledGraph& g) {
  UnlabeledGraph out;
  out.edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.edges.emplace_back(e.from, e.to);
  return out;
}

/// Applies `relabel` (indexed by label) and sorts the edges so that edge
/// order carries no trace of the original labels.
inline UnlabeledGraph scramble_labels(const LabeledGraph& g, const std::vector<std::uint64_t>& relabel) {
  UnlabeledGraph out;
  out.edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.edges.emplace_back(relabel.at(e.from), relabel.at(e.to));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline Sequence swap_positions(std::span<const std::int64_t> seq, std::size_t a, std::size_t b, EditLog& log) {
  Sequence out(seq.begin(), seq.end());
  std::swap(out.at(a - 1), out.at(b - 1));
  log.push_back({EditOp::swap, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
  return out;
}

inline Sequence change_value(std::span<const std::int64_t> seq, std::size_t pos, std::int64_t value, EditLog& log) {
  Sequence out(seq.begin(), seq.end());
  out.at(pos - 1) = value;
  log.push_back({EditOp::set_value, static_cast<std::int64_t>(pos), value});
  return out;
}

inline Sequence delete_element(std::span<const std::int64_t> seq, std::size_t pos, EditLog& log) {
  Sequence out(seq.begin(), seq.end());
  log.push_back({EditOp::remove_element, static_cast<std::int64_t>(pos), out.at(pos - 1)});
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos - 1));
  return out;
}

// ---- seeded attacks ----------------------------------------------------------

inline GraphAttackResult apply_graph_attack(const LabeledGraph& g, const AttackSpec& spec) {
  if (spec.count == 0) throw CodecError(ErrorCode::inapplicable_attack, "attack count must be at least 1");
  if (spec.layer != AttackLayer::graph || default_layer(spec.kind) != AttackLayer::graph) {
    throw CodecError(ErrorCode::inapplicable_attack, std::string(to_string(spec.kind)) + " is not a graph attack");
  }
  StableRng rng(spec.seed);
  LabeledGraph out = g;
  EditLog log;

  switch (spec.kind) {
    case AttackKind::none:
      break;
    case AttackKind::edge_del:
    case AttackKind::edge_flip:
      for (std::uint32_t k = 0; k < spec.count; ++k) {
        if (out.edges().empty()) throw CodecError(ErrorCode::inapplicable_attack, "graph has no edges");
        const auto index = static_cast<std::size_t>(rng.below(out.edges().size()));
        spec.kind == AttackKind::edge_del ? delete_edge(out, index, log) : flip_edge(out, index, log);
      }
      break;
    case AttackKind::edge_add:
      for (std::uint32_t k = 0; k < spec.count; ++k) {
        std::set<std::pair<Label, Label>> present;
        for (const auto& e : out.edges()) present.emplace(e.from, e.to);
        const std::uint64_t nodes = out.node_count();
        if (present.size() >= nodes * (nodes - 1)) throw CodecError(ErrorCode::inapplicable_attack, "graph is complete");
        while (true) {
          const auto from = static_cast<Label>(rng.below(nodes));
          const auto to = static_cast<Label>(rng.below(nodes));
          if (from != to && !present.contains({from, to})) {
            insert_edge(out, from, to, log);
            break;
          }
        }
      }
      break;
    case AttackKind::node_del:
      for (std::uint32_t k = 0; k < spec.count; ++k) {
        if (out.body_size() == 0) throw CodecError(ErrorCode::inapplicable_attack, "graph has no body");
        out = delete_node(out, static_cast<Label>(1 + rng.below(out.body_size())), log);
      }
      break;
    case AttackKind::label_strip:
      return {strip_labels(out), {}};
    case AttackKind::label_scramble: {
      std::vector<std::uint64_t> relabel(out.node_count());
      for (std::size_t v = 0; v < relabel.size(); ++v) relabel[v] = v;
      for (std::uint32_t k = 0; k < spec.count; ++k) {
        for (std::size_t v = relabel.size(); v > 1; --v) std::swap(relabel[v - 1], relabel[rng.below(v)]);
      }
      for (std::size_t v = 0; v < relabel.size(); ++v) log.push_back({EditOp::relabel, static_cast<std::int64_t>(v), static_cast<std::int64_t>(relabel[v])});
      return {scramble_labels(out, relabel), std::move(log)};
    }
    default:
      break;
  }
  return {std::move(out), std::move(log)};
}

inline GraphAttackResult apply_graph_attack(const ReduciblePermutationGraph& g, const AttackSpec& spec) {
  return apply_graph_attack(g.to_labeled(), spec);
}

inline SipAttackResult apply_sip_attack(std::span<const std::int64_t> seq, const AttackSpec& spec) {
  if (spec.count == 0) throw CodecError(ErrorCode::inapplicable_attack, "attack count must be at least 1");
  const bool sip_kind = spec.kind == AttackKind::sip_swap || spec.kind == AttackKind::sip_value_change ||
                        spec.kind == AttackKind::node_del || spec.kind == AttackKind::none;
  if (!sip_kind) throw CodecError(ErrorCode::inapplicable_attack, std::string(to_string(spec.kind)) + " is not a permutation attack");
  StableRng rng(spec.seed);
  SipAttackResult result{Sequence(seq.begin(), seq.end()), {}};
  if (spec.kind == AttackKind::none) return result;

  for (std::uint32_t k = 0; k < spec.count; ++k) {
    Sequence& cur = result.sequence;
    const std::size_t len = cur.size();
    switch (spec.kind) {
      case AttackKind::sip_swap: {
        if (len < 2) throw CodecError(ErrorCode::inapplicable_attack, "swap needs two elements");
        const auto a = static_cast<std::size_t>(1 + rng.below(len));
        auto b = static_cast<std::size_t>(1 + rng.below(len - 1));
        if (b >= a) ++b;
        cur = swap_positions(cur, a, b, result.log);
        break;
      }
      case AttackKind::sip_value_change: {
        if (len < 2) throw CodecError(ErrorCode::inapplicable_attack, "value change needs two elements");
        const auto pos = static_cast<std::size_t>(1 + rng.below(len));
        auto value = static_cast<std::int64_t>(1 + rng.below(len - 1));
        if (value >= cur[pos - 1]) ++value;
        cur = change_value(cur, pos, value, result.log);
        break;
      }
      default: {
        if (len == 0) throw CodecError(ErrorCode::inapplicable_attack, "sequence is empty");
        cur = delete_element(cur, static_cast<std::size_t>(1 + rng.below(len)), result.log);
        break;
      }
    }
  }
  return result;
}

// ---- campaigns ------------------------------------------------------------------

enum class TrialOutcome { correct, detected, repaired, false_decode };

inline std::string_view to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::correct: return "correct";
    case TrialOutcome::detected: return "detected";
    case TrialOutcome::repaired: return "repaired";
    case TrialOutcome::false_decode: return "false-decode";
  }
  return "unknown";
}

struct TrialRecord {
  std::string w;
  AttackKind kind;
  AttackLayer layer;
  std::uint32_t count;
  std::uint64_t seed;
  std::string edit;  // exhaustive trials name the edit; empty for seeded ones
  TrialOutcome outcome;
  std::vector<std::string> violated;
};

/// `repaired` trials were flagged and then recovered to the right watermark,
/// so they count toward `detected` as well.
struct CampaignReport {
  std::size_t trials = 0;
  std::size_t detected = 0;
  std::size_t repaired = 0;
  std::size_t false_decodes = 0;
  std::size_t correct_decodes = 0;
  std::map<std::string, std::size_t> violated;  // trials flagging each property
  std::vector<TrialRecord> records;

  void add(TrialRecord record) {
    ++trials;
    switch (record.outcome) {
      case TrialOutcome::correct: ++correct_decodes; break;
      case TrialOutcome::false_decode: ++false_decodes; break;
      case TrialOutcome::repaired: ++repaired; [[fallthrough]];
      case TrialOutcome::detected: ++detected; break;
    }
    for (const auto& p : record.violated) ++violated[p];
    records.push_back(std::move(record));
  }
};

struct CampaignConfig {
  std::uint64_t w_min = 1;
  std::uint64_t w_max = 1;
  std::vector<AttackSpec> specs;
  std::size_t trials_per_w = 1;
  /// Single-edit specs (count == 1) enumerate every possible edit instead of
  /// drawing trials_per_w random ones.
  bool exhaustive = false;
};

namespace detail {

inline std::vector<std::string> sip_violations(const SipTamperReport& r) {
  std::vector<std::string> out;
  if (!r.length_ok) out.emplace_back("length");
  if (!r.sip_ok) out.emplace_back("sip");
  if (!r.bitonic_ok) out.emplace_back("bitonic");
  if (!r.block_ok) out.emplace_back("block");
  return out;
}

inline void score_sip(const Watermark& w, std::span<const std::int64_t> seq, TrialRecord& rec) {
  const SipTamperReport report = validate_sip(seq);
  if (!report.valid()) {
    rec.outcome = TrialOutcome::detected;
    rec.violated = sip_violations(report);
    return;
  }
  rec.outcome = decode_sip_to_w(seq, DecodeMode::lenient) == w ? TrialOutcome::correct : TrialOutcome::false_decode;
}

/// Strict decode of a structurally valid graph; a tampered permutation counts
/// as a detection.
inline std::optional<Watermark> decode_graph(const ReduciblePermutationGraph& g, TrialRecord& rec) {
  const Permutation p = decode_rpg_to_sip(g);
  const SipTamperReport report = validate_sip(p.to_sequence());
  if (!report.valid()) {
    for (auto& v : sip_violations(report)) rec.violated.push_back(std::move(v));
    return std::nullopt;
  }
  return decode_sip_to_w(p, DecodeMode::lenient);
}

inline void score_graph(const Watermark& w, const GraphAttackResult& attacked, TrialRecord& rec) {
  if (const auto* unlabeled = std::get_if<UnlabeledGraph>(&attacked.graph)) {
    ReduciblePermutationGraph restored;
    try {
      restored = restore_labels(*unlabeled);
    } catch (const CodecError&) {
      rec.violated.emplace_back("restore");
      rec.outcome = TrialOutcome::detected;
      return;
    }
    const auto decoded = decode_graph(restored, rec);
    if (!decoded) {
      rec.outcome = TrialOutcome::detected;
    } else {
      rec.outcome = *decoded == w ? TrialOutcome::repaired : TrialOutcome::false_decode;
    }
    return;
  }

  const auto& g = std::get<LabeledGraph>(attacked.graph);
  if (validate_rpg(g).ok()) {
    const auto decoded = decode_graph(to_rpg(g), rec);
    if (!decoded) {
      rec.outcome = TrialOutcome::detected;
    } else {
      rec.outcome = *decoded == w ? TrialOutcome::correct : TrialOutcome::false_decode;
    }
    return;
  }
  rec.violated.emplace_back("graph-structural");
  rec.outcome = TrialOutcome::detected;
  try {
    TrialRecord scratch = rec;
    const auto decoded = decode_graph(repair_list_pointers(g).graph, scratch);
    if (decoded && *decoded == w) rec.outcome = TrialOutcome::repaired;
  } catch (const CodecError&) {
    // not repairable; stays detected
  }
}

inline std::string describe(const EditLog& log) {
  std::string out;
  for (const auto& e : log) {
    if (!out.empty()) out += ' ';
    out += std::string(to_string(e.op)) + ":" + std::to_string(e.a) + ":" + std::to_string(e.b);
  }
  return out;
}

inline bool enumerable(const AttackSpec& spec) {
  return spec.count == 1 && spec.kind != AttackKind::none && spec.kind != AttackKind::label_scramble &&
         spec.kind != AttackKind::label_strip;
}

inline void run_exhaustive(const Watermark& w, const Permutation& sip, const ReduciblePermutationGraph& rpg,
                           const AttackSpec& spec, CampaignReport& report) {
  auto record = [&](const EditLog& log) {
    return TrialRecord{w.to_decimal(), spec.kind, spec.layer, spec.count, spec.seed, describe(log), TrialOutcome::detected, {}};
  };
  if (spec.layer == AttackLayer::sip) {
    const Sequence base = sip.to_sequence();
    const std::size_t len = base.size();
    auto run = [&](const Sequence& seq, const EditLog& log) {
      TrialRecord rec = record(log);
      score_sip(w, seq, rec);
      report.add(std::move(rec));
    };
    for (std::size_t a = 1; a <= len; ++a) {
      if (spec.kind == AttackKind::node_del) {
        EditLog log;
        run(delete_element(base, a, log), log);
      } else if (spec.kind == AttackKind::sip_swap) {
        for (std::size_t b = a + 1; b <= len; ++b) {
          EditLog log;
          run(swap_positions(base, a, b, log), log);
        }
      } else {
        for (std::size_t v = 1; v <= len; ++v) {
          if (static_cast<std::int64_t>(v) == base[a - 1]) continue;
          EditLog log;
          run(change_value(base, a, static_cast<std::int64_t>(v), log), log);
        }
      }
    }
    return;
  }

  const LabeledGraph base = rpg.to_labeled();
  auto run = [&](LabeledGraph g, EditLog log) {
    TrialRecord rec = record(log);
    score_graph(w, GraphAttackResult{std::move(g), log}, rec);
    report.add(std::move(rec));
  };
  switch (spec.kind) {
    case AttackKind::edge_del:
    case AttackKind::edge_flip:
      for (std::size_t k = 0; k < base.edges().size(); ++k) {
        LabeledGraph g = base;
        EditLog log;
        spec.kind == AttackKind::edge_del ? delete_edge(g, k, log) : flip_edge(g, k, log);
        run(std::move(g), std::move(log));
      }
      break;
    case AttackKind::edge_add: {
      std::set<std::pair<Label, Label>> present;
      for (const auto& e : base.edges()) present.emplace(e.from, e.to);
      for (Label a = 0; a < base.node_count(); ++a) {
        for (Label b = 0; b < base.node_count(); ++b) {
          if (a == b || present.contains({a, b})) continue;
          LabeledGraph g = base;
          EditLog log;
          insert_edge(g, a, b, log);
          run(std::move(g), std::move(log));
        }
      }
      break;
    }
    case AttackKind::node_del:
      if (base.body_size() < 2) break;
      for (Label k = 1; k <= base.body_size(); ++k) {
        EditLog log;
        LabeledGraph g = delete_node(base, k, log);
        run(std::move(g), std::move(log));
      }
      break;
    default:
      break;
  }
}

}  // namespace detail

/// Encodes every watermark in the range, attacks it per spec and classifies the
/// decoder's response.
inline CampaignReport run_detection_campaign(const CampaignConfig& config) {
  if (config.w_min == 0 || config.w_min > config.w_max) {
    throw CodecError(ErrorCode::invalid_watermark, "campaign range must be a nonempty range of positive integers");
  }
  if (config.specs.empty()) throw CodecError(ErrorCode::inapplicable_attack, "campaign needs at least one attack spec");

  CampaignReport report;
  for (std::uint64_t value = config.w_min; value <= config.w_max; ++value) {
    const Watermark w = Watermark::from_uint64(value);
    const Permutation sip = encode_w_to_sip(w);
    const ReduciblePermutationGraph rpg = encode_sip_to_rpg(sip);

    for (const auto& spec : config.specs) {
      if (config.exhaustive && detail::enumerable(spec)) {
        detail::run_exhaustive(w, sip, rpg, spec, report);
        continue;
      }
      for (std::size_t trial = 0; trial < config.trials_per_w; ++trial) {
        AttackSpec seeded = spec;
        seeded.seed = mix_seed(spec.seed ^ mix_seed(value) ^ mix_seed(trial + 0x51ed27));
        TrialRecord rec{w.to_decimal(), spec.kind, spec.layer, spec.count, seeded.seed, {}, TrialOutcome::detected, {}};
        try {
          if (spec.layer == AttackLayer::sip) {
            const auto attacked = apply_sip_attack(sip.to_sequence(), seeded);
            detail::score_sip(w, attacked.sequence, rec);
          } else {
            detail::score_graph(w, apply_graph_attack(rpg, seeded), rec);
          }
        } catch (const CodecError& e) {
          if (e.code() != ErrorCode::inapplicable_attack) throw;
          continue;  // e.g. node-del on a one-node body
        }
        report.add(std::move(rec));
      }
    }
  }
  return report;
}

inline void write_campaign_csv(std::ostream& out, const CampaignReport& report) {
  out << "w,attack,layer,count,seed,edit,outcome,violated\n";
  for (const auto& r : report.records) {
    std::string violated;
    for (const auto& v : r.violated) violated += (violated.empty() ? "" : ";") + v;
    out << r.w << ',' << to_string(r.kind) << ',' << to_string(r.layer) << ',' << r.count << ',' << r.seed << ','
        << r.edit << ',' << to_string(r.outcome) << ',' << violated << '\n';
  }
}

inline std::string summarize(const CampaignReport& report) {
  std::ostringstream out;
  auto pct = [&](std::size_t k) { return report.trials == 0 ? 0.0 : 100.0 * static_cast<double>(k) / static_cast<double>(report.trials); };
  out << "trials " << report.trials << "\n"
      << "detected " << report.detected << " (" << pct(report.detected) << "%)\n"
      << "repaired " << report.repaired << " (" << pct(report.repaired) << "%)\n"
      << "false_decodes " << report.false_decodes << " (" << pct(report.false_decodes) << "%)\n"
      << "correct_decodes " << report.correct_decodes << " (" << pct(report.correct_decodes) << "%)\n";
  for (const auto& [property, count] : report.violated) out << "violated " << property << ' ' << count << "\n";
  return out.str();
}

}  // namespace sipwm
