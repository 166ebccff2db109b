#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sipwm {

enum class ErrorCode {
  invalid_watermark,
  not_a_permutation,
  not_self_inverting,
  even_length,
  bitonic_violation,
  block_violation,
  incomplete_cycles,
  graph_structure,
  not_a_tree,
  no_hamiltonian_path,
  restore_failed,
  forward_damage,
  inapplicable_attack,
  parse_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_watermark: return "invalid-watermark";
    case ErrorCode::not_a_permutation: return "not-a-permutation";
    case ErrorCode::not_self_inverting: return "not-self-inverting";
    case ErrorCode::even_length: return "even-length";
    case ErrorCode::bitonic_violation: return "bitonic-violation";
    case ErrorCode::block_violation: return "block-violation";
    case ErrorCode::incomplete_cycles: return "incomplete-cycles";
    case ErrorCode::graph_structure: return "graph-structure";
    case ErrorCode::not_a_tree: return "not-a-tree";
    case ErrorCode::no_hamiltonian_path: return "no-hamiltonian-path";
    case ErrorCode::restore_failed: return "restore-failed";
    case ErrorCode::forward_damage: return "forward-damage";
    case ErrorCode::inapplicable_attack: return "inapplicable-attack";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Raised by every codec operation that rejects its input.
class CodecError : public std::runtime_error {
 public:
  CodecError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sipwm
