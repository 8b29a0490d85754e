#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "tropconv/errors.hpp"

namespace tropconv {

/// Nonnegative 64-bit integer extended with a single absorbing element.
///
/// In min-type semirings the extra element is +∞. Max-sum functions reuse the
/// same marker for "infeasible" (−∞): in both readings it is the identity of
/// the aggregation and absorbing under +, so the algebra is identical.
class ExtInt {
 public:
  static constexpr std::uint64_t kInfRaw = std::numeric_limits<std::uint64_t>::max();
  static constexpr std::uint64_t kMaxFinite = kInfRaw - 1;

  constexpr ExtInt() = default;
  constexpr explicit ExtInt(std::uint64_t v) : raw_(v) {
    if (v == kInfRaw) throw OverflowError("ExtInt: value collides with the infinity sentinel");
  }

  static constexpr ExtInt infinity() {
    ExtInt r;
    r.raw_ = kInfRaw;
    return r;
  }

  constexpr bool is_infinite() const { return raw_ == kInfRaw; }
  constexpr bool is_finite() const { return raw_ != kInfRaw; }
  constexpr std::uint64_t value() const { return raw_; }

  friend constexpr auto operator<=>(ExtInt, ExtInt) = default;

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.raw_ > kMaxFinite - b.raw_) throw OverflowError("ExtInt: sum exceeds 2^64 - 2");
    return ExtInt(a.raw_ + b.raw_);
  }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(raw_); }

 private:
  std::uint64_t raw_ = 0;
};

}  // namespace tropconv
