// sipwm: command-line front end for the watermark graph codec.
//
// Exit status: 0 success, 1 validation or tamper failure, 2 usage or I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sipwm/sipwm.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kTamper = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input could not be parsed; reported as a usage error.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw IoError("cannot write " + path);
}

template <typename Parse>
auto parse_input(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const sipwm::CodecError& e) {
    throw InputError(path + ": " + e.what());
  }
}

sipwm::Watermark parse_watermark(const std::string& text) {
  try {
    return sipwm::Watermark::from_decimal(text);
  } catch (const sipwm::CodecError& e) {
    throw InputError(e.what());
  }
}

void print_sip_report(std::ostream& out, const sipwm::SipTamperReport& report) {
  for (const auto& d : report.details) out << "sip " << d << '\n';
}

int cmd_encode(const std::string& w_text, const std::string& out_path, const std::string& dot_path) {
  const auto w = parse_watermark(w_text);
  const auto rpg = sipwm::encode_sip_to_rpg(sipwm::encode_w_to_sip(w));
  write_file(out_path, sipwm::write_rpg(rpg));
  if (!dot_path.empty()) write_file(dot_path, sipwm::export_dot(rpg, true));
  return kOk;
}

int cmd_sip(const std::string& w_text) {
  std::cout << sipwm::write_permutation(sipwm::encode_w_to_sip(parse_watermark(w_text)));
  return kOk;
}

int cmd_decode(const std::string& in_path, bool lenient) {
  const auto g = parse_input(in_path, sipwm::read_labeled_graph);
  const auto structure = sipwm::validate_rpg(g);
  if (!structure.ok()) {
    std::cerr << "tamper detected: graph-structural: " << structure.describe() << '\n';
    return kTamper;
  }
  const auto pi = sipwm::decode_rpg_to_sip(sipwm::to_rpg(g));
  if (!lenient) {
    const auto report = sipwm::validate_sip(pi.to_sequence());
    if (!report.valid()) {
      std::cerr << "tamper detected:\n";
      print_sip_report(std::cerr, report);
      return kTamper;
    }
  }
  try {
    std::cout << sipwm::decode_sip_to_w(pi, sipwm::DecodeMode::lenient).to_decimal() << '\n';
  } catch (const sipwm::CodecError& e) {
    std::cerr << "tamper detected: " << e.what() << '\n';
    return kTamper;
  }
  return kOk;
}

int cmd_validate(const std::string& in_path) {
  const auto g = parse_input(in_path, sipwm::read_labeled_graph);
  const auto structure = sipwm::validate_rpg(g);
  std::cout << "layer,check,status,detail\n";
  for (const auto& v : structure.violations) {
    std::cout << "graph," << sipwm::to_string(v.kind) << ",fail,u" << v.node << '\n';
  }
  if (!structure.ok()) {
    std::cout << "sip,all,skipped,graph does not decode\n";
    return kTamper;
  }
  std::cout << "graph,outpointer,pass,\n";
  const auto report = sipwm::validate_sip(sipwm::decode_rpg_to_sip(sipwm::to_rpg(g)).to_sequence());
  const std::pair<const char*, bool> checks[] = {
      {"length", report.length_ok}, {"sip", report.sip_ok}, {"bitonic", report.bitonic_ok}, {"block", report.block_ok}};
  for (const auto& [name, ok] : checks) {
    std::string detail;
    for (const auto& d : report.details) {
      if (d.starts_with(std::string(name) + ":")) detail += (detail.empty() ? "" : " | ") + d.substr(std::string(name).size() + 2);
    }
    std::cout << "sip," << name << ',' << (ok ? "pass" : "fail") << ',' << detail << '\n';
  }
  return report.valid() ? kOk : kTamper;
}

int cmd_hp(const std::string& in_path) {
  const auto g = parse_input(in_path, sipwm::read_labeled_graph);
  try {
    const auto path = sipwm::unique_hamiltonian_path(g);
    std::cout << sipwm::write_permutation(path);
  } catch (const sipwm::CodecError& e) {
    std::cerr << e.what() << '\n';
    return kTamper;
  }
  return kOk;
}

int cmd_restore(const std::string& in_path, const std::string& out_path) {
  const auto g = parse_input(in_path, sipwm::read_unlabeled);
  try {
    write_file(out_path, sipwm::write_rpg(sipwm::restore_labels(g)));
  } catch (const sipwm::CodecError& e) {
    std::cerr << e.what() << '\n';
    return kTamper;
  }
  return kOk;
}

int cmd_repair(const std::string& in_path, const std::string& out_path) {
  const auto g = parse_input(in_path, sipwm::read_labeled_graph);
  try {
    const auto repair = sipwm::repair_list_pointers(g);
    for (const auto& e : repair.missing) std::cerr << "restored " << e.from << ' ' << e.to << " L\n";
    for (const auto& e : repair.extra) std::cerr << "dropped " << e.from << ' ' << e.to << (e.kind == sipwm::EdgeKind::list ? " L\n" : " F\n");
    write_file(out_path, sipwm::write_rpg(repair.graph));
  } catch (const sipwm::CodecError& e) {
    std::cerr << e.what() << '\n';
    return kTamper;
  }
  return kOk;
}

int cmd_attack(const std::string& in_path, const std::string& kind_text, std::uint32_t count, std::uint64_t seed,
               const std::string& layer_text, const std::string& out_path) {
  sipwm::AttackSpec spec;
  try {
    spec = sipwm::AttackSpec::make(sipwm::parse_attack_kind(kind_text), count, seed);
  } catch (const sipwm::CodecError& e) {
    throw InputError(e.what());
  }
  if (layer_text == "sip") spec.layer = sipwm::AttackLayer::sip;
  if (layer_text == "graph") spec.layer = sipwm::AttackLayer::graph;

  sipwm::EditLog log;
  try {
    if (spec.layer == sipwm::AttackLayer::sip) {
      const auto seq = parse_input(in_path, sipwm::read_permutation);
      auto result = sipwm::apply_sip_attack(seq, spec);
      write_file(out_path, sipwm::write_sequence(result.sequence));
      log = std::move(result.log);
    } else {
      const auto g = parse_input(in_path, sipwm::read_labeled_graph);
      auto result = sipwm::apply_graph_attack(g, spec);
      if (result.labeled()) {
        write_file(out_path, sipwm::write_rpg(std::get<sipwm::LabeledGraph>(result.graph)));
      } else {
        write_file(out_path, sipwm::write_unlabeled(std::get<sipwm::UnlabeledGraph>(result.graph)));
      }
      log = std::move(result.log);
    }
  } catch (const sipwm::CodecError& e) {
    if (e.code() != sipwm::ErrorCode::inapplicable_attack) throw;
    throw InputError(e.what());
  }
  for (const auto& e : log) std::cerr << sipwm::to_string(e.op) << ' ' << e.a << ' ' << e.b << '\n';
  return kOk;
}

int cmd_fuzz(std::uint64_t max_w, bool exhaustive, std::size_t trials, std::uint64_t seed) {
  if (max_w == 0) throw InputError("--max-w must be positive");
  std::size_t failures = 0;
  for (std::uint64_t value = 1; value <= max_w; ++value) {
    const auto w = sipwm::Watermark::from_uint64(value);
    const auto pi = sipwm::encode_w_to_sip(w);
    const auto rpg = sipwm::encode_sip_to_rpg(pi);
    const auto text = sipwm::write_rpg(rpg);
    bool ok = sipwm::decode_sip_to_w(pi) == w && sipwm::decode_rpg_to_sip(rpg) == pi;
    ok = ok && sipwm::read_rpg(text) == rpg && sipwm::write_rpg(sipwm::read_rpg(text)) == text;
    if (!ok) {
      ++failures;
      std::cerr << "round-trip failure at w=" << value << '\n';
    }
  }

  sipwm::CampaignConfig config;
  config.w_max = max_w;
  config.trials_per_w = trials;
  config.exhaustive = exhaustive;
  using K = sipwm::AttackKind;
  for (auto kind : {K::edge_del, K::edge_flip, K::edge_add, K::node_del, K::label_scramble, K::label_strip, K::sip_swap,
                    K::sip_value_change}) {
    config.specs.push_back(sipwm::AttackSpec::make(kind, 1, seed));
  }
  config.specs.push_back(sipwm::AttackSpec::on_sip(K::node_del, 1, seed));

  const auto report = sipwm::run_detection_campaign(config);
  sipwm::write_campaign_csv(std::cout, report);
  std::cerr << "round-trip failures " << failures << " of " << max_w << '\n' << sipwm::summarize(report);
  return failures == 0 ? kOk : kTamper;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Watermark codec: integers <-> self-inverting permutations <-> reducible permutation graphs"};
  app.require_subcommand(1);

  std::string w_text, in_path, out_path, dot_path, kind_text, layer_text;
  bool lenient = false;
  bool exhaustive = false;
  std::uint32_t count = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_w = 0;
  std::size_t trials = 4;

  auto* encode = app.add_subcommand("encode", "w -> permutation -> graph file");
  encode->add_option("-w", w_text, "watermark (positive decimal integer)")->required();
  encode->add_option("-o", out_path, "output graph file")->required();
  encode->add_option("--dot", dot_path, "also write an annotated DOT rendering");

  auto* sip = app.add_subcommand("sip", "print the self-inverting permutation of w");
  sip->add_option("-w", w_text, "watermark (positive decimal integer)")->required();

  auto* decode = app.add_subcommand("decode", "graph file -> w");
  decode->add_option("-i", in_path, "input graph file")->required();
  decode->add_flag("--lenient", lenient, "skip the bitonic/block permutation checks");

  auto* validate = app.add_subcommand("validate", "structural and permutation checks, CSV report");
  validate->add_option("-i", in_path, "input graph file")->required();

  auto* hp = app.add_subcommand("hp", "print the unique Hamiltonian path");
  hp->add_option("-i", in_path, "input graph file")->required();

  auto* restore = app.add_subcommand("restore", "recover labels of an unlabeled graph");
  restore->add_option("-i", in_path, "input edges file")->required();
  restore->add_option("-o", out_path, "output graph file")->required();

  auto* repair = app.add_subcommand("repair", "rebuild list pointers");
  repair->add_option("-i", in_path, "input graph file")->required();
  repair->add_option("-o", out_path, "output graph file")->required();

  auto* attack = app.add_subcommand("attack", "apply a seeded attack");
  attack->add_option("-i", in_path, "input graph (or permutation, for permutation attacks) file")->required();
  attack->add_option("--kind", kind_text, "edge-flip|edge-add|edge-del|label-scramble|label-strip|node-del|sip-swap|sip-value-change")
      ->required();
  attack->add_option("--count", count, "number of applications")->check(CLI::PositiveNumber);
  attack->add_option("--seed", seed, "random seed");
  attack->add_option("--layer", layer_text, "graph|sip; node-del defaults to graph")->check(CLI::IsMember({"graph", "sip"}));
  attack->add_option("-o", out_path, "output file")->required();

  auto* fuzz = app.add_subcommand("fuzz", "round-trip every w in 1..N, then run an attack campaign (CSV on stdout)");
  fuzz->add_option("--max-w", max_w, "largest watermark")->required();
  fuzz->add_flag("--exhaustive-attacks", exhaustive, "enumerate every single edit instead of sampling");
  fuzz->add_option("--trials", trials, "sampled trials per watermark and attack");
  fuzz->add_option("--seed", seed, "campaign seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) return cmd_encode(w_text, out_path, dot_path);
    if (*sip) return cmd_sip(w_text);
    if (*decode) return cmd_decode(in_path, lenient);
    if (*validate) return cmd_validate(in_path);
    if (*hp) return cmd_hp(in_path);
    if (*restore) return cmd_restore(in_path, out_path);
    if (*repair) return cmd_repair(in_path, out_path);
    if (*attack) return cmd_attack(in_path, kind_text, count, seed, layer_text, out_path);
    if (*fuzz) return cmd_fuzz(max_w, exhaustive, trials, seed);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sipwm::CodecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTamper;
  }
  return kUsage;
}
