#pragma once

// Watermark <-> self-inverting permutation codec and the structural checks a
// decoder uses to notice tampering (odd length, bitonic shape, block layout).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sipwm/error.hpp"
#include "sipwm/permutation.hpp"
#include "sipwm/watermark.hpp"

namespace sipwm {

/// B' = 0^n || B || 1 and its complement B*.
struct BitBlocks {
  Bits b_prime;
  Bits b_star;
};

/// 1-indexed positions of the 0-bits (zeros) and 1-bits (ones) of a bit
/// sequence, each strictly increasing.
struct PositionSequences {
  std::vector<Label> zeros;
  std::vector<Label> ones;
};

/// A permutation that increases and then decreases.
using BitonicPermutation = std::vector<Label>;

/// One cycle of an involution: a fixed point when first == second, otherwise
/// a transposition with first < second.
struct Cycle {
  Label first;
  Label second;

  bool is_fixed_point() const noexcept { return first == second; }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Cycles of an involution sorted ascending by their smallest element.
using CycleRepresentation = std::vector<Cycle>;

enum class DecodeMode { strict, lenient };

struct SipTamperReport {
  bool length_ok = true;
  bool sip_ok = true;
  bool bitonic_ok = true;
  bool block_ok = true;
  std::vector<std::string> details;

  bool valid() const noexcept { return length_ok && sip_ok && bitonic_ok && block_ok; }
};

inline BitBlocks make_bit_blocks(const Watermark& w) {
  const std::size_t n = w.bit_length();
  BitBlocks blocks;
  blocks.b_prime.assign(n, 0);
  blocks.b_prime.insert(blocks.b_prime.end(), w.bits().begin(), w.bits().end());
  blocks.b_prime.push_back(1);
  blocks.b_star.reserve(blocks.b_prime.size());
  for (auto b : blocks.b_prime) blocks.b_star.push_back(static_cast<std::uint8_t>(1 - b));
  return blocks;
}

inline PositionSequences position_sequences(std::span<const std::uint8_t> bits) {
  PositionSequences pos;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    (bits[i] == 0 ? pos.zeros : pos.ones).push_back(static_cast<Label>(i + 1));
  }
  return pos;
}

/// X || reverse(Y).
inline BitonicPermutation make_bitonic(const PositionSequences& pos) {
  BitonicPermutation pib(pos.zeros.begin(), pos.zeros.end());
  pib.insert(pib.end(), pos.ones.rbegin(), pos.ones.rend());
  return pib;
}

/// Length of the first increasing run: the index of the first strict descent,
/// or the whole length when there is none.
inline std::size_t increasing_prefix_length(std::span<const Label> seq) {
  if (seq.empty()) return 0;
  std::size_t k = 1;
  while (k < seq.size() && seq[k - 1] < seq[k]) ++k;
  return k;
}

inline Permutation encode_w_to_sip(const Watermark& w) {
  const BitBlocks blocks = make_bit_blocks(w);
  const BitonicPermutation pib = make_bitonic(position_sequences(blocks.b_star));
  const std::size_t len = pib.size();

  // Pair pi^b front to back; the middle element stays a fixed point.
  std::vector<Label> sip(len);
  for (std::size_t k = 0; k < len; ++k) sip[k] = static_cast<Label>(k + 1);
  for (std::size_t i = 0, j = len - 1; i < j; ++i, --j) {
    sip[pib[i] - 1] = pib[j];
    sip[pib[j] - 1] = pib[i];
  }
  return Permutation(std::move(sip));
}

inline CycleRepresentation to_cycle_representation(const Permutation& p) {
  CycleRepresentation cycles;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const Label image = p.at(i);
    if (p.at(image) != i) {
      throw CodecError(ErrorCode::not_self_inverting,
                       "cycle through " + std::to_string(i) + " is longer than 2");
    }
    if (i <= image) cycles.push_back({static_cast<Label>(i), image});
  }
  return cycles;
}

/// Two-cursor reconstruction of pi^b: a transposition (a, b) puts b at the
/// front cursor and a at the back cursor, a fixed point (a) goes to the front.
inline BitonicPermutation rebuild_bitonic(const CycleRepresentation& cycles) {
  std::size_t len = 0;
  for (const auto& c : cycles) len += c.is_fixed_point() ? 1 : 2;

  std::vector<bool> covered(len + 1, false);
  Label previous = 0;
  for (const auto& c : cycles) {
    if (c.first <= previous || c.first > c.second || c.second > len || covered[c.first] || covered[c.second]) {
      throw CodecError(ErrorCode::incomplete_cycles,
                       "cycles do not cover 1.." + std::to_string(len) + " in increasing order");
    }
    covered[c.first] = covered[c.second] = true;
    previous = c.first;
  }

  BitonicPermutation pib(len, 0);
  std::size_t front = 0;
  std::size_t back = len;  // one past the next back slot
  for (const auto& c : cycles) {
    if (c.is_fixed_point()) {
      pib[front++] = c.first;
    } else {
      pib[front++] = c.second;
      pib[--back] = c.first;
    }
  }
  return pib;
}

namespace detail {

/// B* recovered from pi^b: zeros at the positions of the increasing prefix,
/// ones at the remaining positions.
inline Bits star_bits_from_bitonic(std::span<const Label> pib, std::size_t prefix) {
  Bits b_star(pib.size(), 1);
  for (std::size_t k = 0; k < prefix; ++k) b_star[pib[k] - 1] = 0;
  return b_star;
}

inline bool strictly_decreasing(std::span<const Label> seq) {
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (seq[k - 1] <= seq[k]) return false;
  }
  return true;
}

inline void check_block(const Bits& b_star, SipTamperReport& report) {
  const std::size_t n = (b_star.size() - 1) / 2;
  std::string bad;
  for (std::size_t k = 0; k < n; ++k) {
    if (b_star[k] == 0) bad += " " + std::to_string(k + 1);
  }
  if (!bad.empty()) {
    report.block_ok = false;
    report.details.push_back("block: leading block has 1-bits at positions" + bad);
  }
  if (b_star[n] != 0) {
    report.block_ok = false;
    report.details.push_back("block: watermark block has a leading 0 at position " + std::to_string(n + 1));
  }
  if (b_star.back() != 0) {
    report.block_ok = false;
    report.details.push_back("block: trailing bit at position " + std::to_string(b_star.size()) + " is 0");
  }
}

}  // namespace detail

inline SipTamperReport validate_sip(std::span<const std::int64_t> seq) {
  SipTamperReport report;
  if (seq.size() % 2 == 0) {
    report.length_ok = false;
    report.details.push_back("length: " + std::to_string(seq.size()) + " is even");
  }
  if (!is_permutation_sequence(seq)) {
    report.sip_ok = false;
    report.details.push_back("sip: not a permutation of 1.." + std::to_string(seq.size()));
  } else {
    const Permutation p = Permutation::from_sequence(seq);
    std::string bad;
    for (std::size_t i = 1; i <= p.size(); ++i) {
      if (p.at(p.at(i)) != i) bad += " " + std::to_string(i);
    }
    if (!bad.empty()) {
      report.sip_ok = false;
      report.details.push_back("sip: pi(pi(i)) != i at positions" + bad);
    }
  }

  if (!report.sip_ok) {
    report.bitonic_ok = false;
    report.block_ok = false;
    report.details.emplace_back("bitonic: not evaluated, input is not an involution");
    report.details.emplace_back("block: not evaluated, input is not an involution");
    return report;
  }

  const BitonicPermutation pib = rebuild_bitonic(to_cycle_representation(Permutation::from_sequence(seq)));
  const std::size_t prefix = increasing_prefix_length(pib);
  if (!detail::strictly_decreasing(std::span<const Label>(pib).subspan(prefix))) {
    report.bitonic_ok = false;
    report.details.push_back("bitonic: rebuilt sequence is not decreasing after position " + std::to_string(prefix));
  }
  if (!report.length_ok) {
    report.block_ok = false;
    report.details.emplace_back("block: not evaluated, length is even");
  } else {
    detail::check_block(detail::star_bits_from_bitonic(pib, prefix), report);
  }
  return report;
}

inline Watermark decode_sip_to_w(const Permutation& p, DecodeMode mode = DecodeMode::strict) {
  if (mode == DecodeMode::strict) {
    const Sequence seq = p.to_sequence();
    const SipTamperReport report = validate_sip(seq);
    if (!report.valid()) {
      std::string msg;
      for (const auto& d : report.details) msg += (msg.empty() ? "" : "; ") + d;
      ErrorCode code = !report.sip_ok      ? ErrorCode::not_self_inverting
                       : !report.length_ok ? ErrorCode::even_length
                       : !report.bitonic_ok ? ErrorCode::bitonic_violation
                                            : ErrorCode::block_violation;
      throw CodecError(code, msg);
    }
  }
  if (!p.is_self_inverting()) throw CodecError(ErrorCode::not_self_inverting, "permutation is not an involution");
  if (p.size() % 2 == 0) throw CodecError(ErrorCode::even_length, "length " + std::to_string(p.size()) + " is even");

  const BitonicPermutation pib = rebuild_bitonic(to_cycle_representation(p));
  const Bits b_star = detail::star_bits_from_bitonic(pib, increasing_prefix_length(pib));
  const std::size_t n = (b_star.size() - 1) / 2;
  Bits payload;
  payload.reserve(n);
  for (std::size_t k = n; k < 2 * n; ++k) payload.push_back(static_cast<std::uint8_t>(1 - b_star[k]));
  return Watermark::from_bits(payload);
}

inline Watermark decode_sip_to_w(std::span<const std::int64_t> seq, DecodeMode mode = DecodeMode::strict) {
  if (!is_permutation_sequence(seq)) {
    throw CodecError(ErrorCode::not_a_permutation, "not a permutation of 1.." + std::to_string(seq.size()));
  }
  return decode_sip_to_w(Permutation::from_sequence(seq), mode);
}

}  // namespace sipwm
