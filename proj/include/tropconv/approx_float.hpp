#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tropconv {

enum class Rounding { nearest, up, down };

/// Nonnegative binary floating-point number with a 64-bit significand and a
/// 64-bit signed exponent, plus +∞.
///
/// The value of a finite nonzero number is mantissa * 2^(exponent - 63) with the
/// top mantissa bit set, so exponent() == floor(log2(x)). The wide exponent lets
/// numbers such as t^r for r in the thousands be stored exactly when t is a
/// power of two. Comparison is exact; arithmetic rounds as requested.
class ApproxFloat {
 public:
  static constexpr int kMantissaBits = 64;

  constexpr ApproxFloat() = default;

  static constexpr ApproxFloat zero() { return ApproxFloat{}; }
  static constexpr ApproxFloat infinity() {
    ApproxFloat r;
    r.inf_ = true;
    return r;
  }
  static ApproxFloat from_uint(std::uint64_t v);
  static ApproxFloat from_u128(unsigned __int128 v, Rounding mode);
  /// Exact; throws DomainError for negative, NaN or infinite input.
  static ApproxFloat from_double(double v);
  static ApproxFloat pow2(std::int64_t e);
  /// mantissa * 2^scale_exponent, normalized (exact).
  static ApproxFloat from_parts(std::uint64_t mantissa, std::int64_t scale_exponent);

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  constexpr bool is_zero() const { return !inf_ && mant_ == 0; }
  constexpr std::uint64_t mantissa() const { return mant_; }
  /// floor(log2(x)) for finite nonzero x.
  constexpr std::int64_t exponent() const { return exp_; }

  ApproxFloat add(const ApproxFloat& other, Rounding mode = Rounding::nearest) const;
  /// x * num / den, den < 2^62.
  ApproxFloat mul_ratio(std::uint64_t num, std::uint64_t den, Rounding mode) const;
  ApproxFloat scale_pow2(std::int64_t k) const;

  bool is_integer() const;
  std::optional<std::uint64_t> to_uint() const;
  double to_double() const;

  /// Exact text form: decimal integer, shortest double literal, or hex
  /// "0x<mantissa>p<exp>" when neither is exact. Infinity prints as "inf".
  std::string to_string() const;
  static std::optional<ApproxFloat> parse(std::string_view text);

  friend std::strong_ordering operator<=>(const ApproxFloat& a, const ApproxFloat& b);
  friend constexpr bool operator==(const ApproxFloat&, const ApproxFloat&) = default;
  friend ApproxFloat operator+(const ApproxFloat& a, const ApproxFloat& b) { return a.add(b); }

 private:
  std::uint64_t mant_ = 0;
  std::int64_t exp_ = 0;
  bool inf_ = false;
};

/// Sign of p*x - q*y, computed exactly (p, q < 2^64).
int compare_scaled(const ApproxFloat& x, std::uint64_t p, const ApproxFloat& y, std::uint64_t q);

/// ceil(x * num * 2^shift / den), saturating at UINT64_MAX (also for +∞).
std::uint64_t ceil_scaled(const ApproxFloat& x, std::uint64_t num, std::uint64_t den, std::int64_t shift);
/// floor(x * num * 2^shift / den), saturating at UINT64_MAX.
std::uint64_t floor_scaled(const ApproxFloat& x, std::uint64_t num, std::uint64_t den, std::int64_t shift);

}  // namespace tropconv
