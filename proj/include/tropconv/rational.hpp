#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tropconv {

/// Positive-or-zero rational num/den in lowest terms. Numerator and
/// denominator are kept below 2^32 so products with 64-bit magnitudes fit in
/// 128-bit intermediates.
class Rational {
 public:
  static constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;

  constexpr Rational() = default;
  /// Throws DomainError when den == 0 or a reduced part reaches 2^32.
  Rational(std::uint64_t num, std::uint64_t den);

  /// Accepts "0.01", "1/3", "2", "1e-2". Throws ParseError.
  static Rational parse(std::string_view text);

  constexpr std::uint64_t num() const { return num_; }
  constexpr std::uint64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  /// ceil(c * den / num), i.e. ceil(c / x). Requires x > 0.
  std::uint64_t ceil_inverse_times(std::uint64_t c) const;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend constexpr bool operator==(const Rational&, const Rational&) = default;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Throws DomainError unless 0 < eps < 1 (or eps <= 1 when allow_one).
void require_epsilon(const Rational& eps, bool allow_one = false);

/// Largest rational with denominator `den` that does not exceed
/// (1 + eps)^(1/k) - 1. Used to split an error budget over k chained steps so
/// that the compounded factor stays within 1 + eps.
Rational root_step(const Rational& eps, unsigned k, std::uint64_t den = 1U << 20);

}  // namespace tropconv
