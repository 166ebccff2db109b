#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sipwm/error.hpp"

namespace sipwm {

/// Bit sequence, most significant bit first; each element is 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// A positive watermark integer of unbounded magnitude, held as its canonical
/// binary representation (leading bit always 1).
class Watermark {
 public:
  /// Strips leading zeros. Throws if the value is zero.
  static Watermark from_bits(std::span<const std::uint8_t> bits) {
    auto first_one = std::find_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
    if (first_one == bits.end()) {
      throw CodecError(ErrorCode::invalid_watermark, "watermark must be positive");
    }
    Watermark w;
    w.bits_.reserve(static_cast<std::size_t>(bits.end() - first_one));
    for (auto it = first_one; it != bits.end(); ++it) {
      if (*it > 1) throw CodecError(ErrorCode::invalid_watermark, "bit value out of range");
      w.bits_.push_back(*it);
    }
    return w;
  }

  static Watermark from_uint64(std::uint64_t value) {
    if (value == 0) throw CodecError(ErrorCode::invalid_watermark, "watermark must be positive");
    Watermark w;
    for (int shift = 63 - __builtin_clzll(value); shift >= 0; --shift) {
      w.bits_.push_back(static_cast<std::uint8_t>((value >> shift) & 1U));
    }
    return w;
  }

  /// Parses an unsigned base-10 literal.
  static Watermark from_decimal(std::string_view text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw CodecError(ErrorCode::invalid_watermark, "not a positive decimal integer: '" + std::string(text) + "'");
    }
    // cpp_int treats a leading 0 as an octal prefix.
    const std::size_t first_nonzero = text.find_first_not_of('0');
    if (first_nonzero == std::string_view::npos) {
      throw CodecError(ErrorCode::invalid_watermark, "watermark must be positive");
    }
    boost::multiprecision::cpp_int value(std::string{text.substr(first_nonzero)});
    Bits bits;
    boost::multiprecision::export_bits(value, std::back_inserter(bits), 1);
    return from_bits(bits);
  }

  const Bits& bits() const noexcept { return bits_; }
  std::size_t bit_length() const noexcept { return bits_.size(); }

  bool fits_uint64() const noexcept { return bits_.size() <= 64; }

  std::uint64_t to_uint64() const {
    if (!fits_uint64()) throw CodecError(ErrorCode::invalid_watermark, "watermark exceeds 64 bits");
    std::uint64_t value = 0;
    for (auto b : bits_) value = (value << 1) | b;
    return value;
  }

  std::string to_decimal() const {
    if (fits_uint64()) return std::to_string(to_uint64());
    boost::multiprecision::cpp_int value;
    boost::multiprecision::import_bits(value, bits_.begin(), bits_.end(), 1);
    return value.str();
  }

  friend bool operator==(const Watermark&, const Watermark&) = default;

 private:
  Watermark() = default;
  Bits bits_;
};

}  // namespace sipwm
