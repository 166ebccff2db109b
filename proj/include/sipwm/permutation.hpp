#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sipwm/error.hpp"

namespace sipwm {

using Label = std::uint32_t;

/// Raw integer sequence as read from a file or produced by an attack. It need
/// not be a permutation.
using Sequence = std::vector<std::int64_t>;

/// A permutation of 1..n stored in one-line notation. Values are 1-indexed;
/// `at(i)` is pi_i for 1 <= i <= n.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Label> values) : values_(std::move(values)) {
    std::vector<bool> seen(values_.size() + 1, false);
    for (Label v : values_) {
      if (v == 0 || v > values_.size() || seen[v]) {
        throw CodecError(ErrorCode::not_a_permutation,
                         "value " + std::to_string(v) + " breaks a permutation of 1.." + std::to_string(values_.size()));
      }
      seen[v] = true;
    }
  }

  static Permutation from_sequence(std::span<const std::int64_t> seq) {
    std::vector<Label> values;
    values.reserve(seq.size());
    for (auto v : seq) {
      if (v < 1 || static_cast<std::uint64_t>(v) > seq.size()) {
        throw CodecError(ErrorCode::not_a_permutation, "value " + std::to_string(v) + " out of range");
      }
      values.push_back(static_cast<Label>(v));
    }
    return Permutation(std::move(values));
  }

  static Permutation identity(std::size_t n) {
    std::vector<Label> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<Label>(i + 1);
    Permutation p;
    p.values_ = std::move(values);
    return p;
  }

  std::size_t size() const noexcept { return values_.size(); }
  Label at(std::size_t i) const { return values_.at(i - 1); }
  std::span<const Label> values() const noexcept { return values_; }

  bool is_self_inverting() const noexcept {
    for (std::size_t i = 1; i <= values_.size(); ++i) {
      if (values_[values_[i - 1] - 1] != i) return false;
    }
    return true;
  }

  Sequence to_sequence() const { return Sequence(values_.begin(), values_.end()); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Label> values_;
};

/// True iff `seq` holds each of 1..|seq| exactly once.
inline bool is_permutation_sequence(std::span<const std::int64_t> seq) {
  std::vector<bool> seen(seq.size() + 1, false);
  for (auto v : seq) {
    if (v < 1 || static_cast<std::uint64_t>(v) > seq.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

}  // namespace sipwm
