#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tropconv/approx_float.hpp"
#include "tropconv/errors.hpp"
#include "tropconv/rational.hpp"

using namespace tropconv;
using boost::multiprecision::cpp_int;

namespace {

// Exact value of a finite ApproxFloat as num / 2^shift.
struct Dyadic {
  cpp_int num;
  std::int64_t shift;
};

Dyadic exact(const ApproxFloat& x) {
  const std::int64_t e = x.exponent() - 63;
  if (e >= 0) return {cpp_int(x.mantissa()) << e, 0};
  return {cpp_int(x.mantissa()), -e};
}

// sign(a - b) for dyadics
int cmp(const Dyadic& a, const Dyadic& b) {
  const std::int64_t s = std::max(a.shift, b.shift);
  const cpp_int x = a.num << (s - a.shift), y = b.num << (s - b.shift);
  return x < y ? -1 : (x > y ? 1 : 0);
}

ApproxFloat random_float(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> m;
  std::uniform_int_distribution<std::int64_t> e(-200, 200);
  return ApproxFloat::from_parts(m(rng) | 1, e(rng));
}

}  // namespace

TEST_CASE("ApproxFloat stores integers exactly and orders them") {
  for (std::uint64_t v : {0ULL, 1ULL, 2ULL, 3ULL, 1023ULL, 1ULL << 40, ~0ULL}) {
    const ApproxFloat x = ApproxFloat::from_uint(v);
    CHECK(x.to_uint() == v);
    CHECK(x.is_integer());
  }
  CHECK(ApproxFloat::from_uint(3) < ApproxFloat::from_uint(4));
  CHECK(ApproxFloat::zero() < ApproxFloat::from_uint(1));
  CHECK(ApproxFloat::from_uint(~0ULL) < ApproxFloat::infinity());
  CHECK(ApproxFloat::pow2(-5) < ApproxFloat::pow2(-4));
  CHECK(ApproxFloat::from_uint(12).exponent() == 3);
}

TEST_CASE("ApproxFloat addition is correctly rounded in every mode") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 4000; ++it) {
    const ApproxFloat a = random_float(rng);
    const ApproxFloat b = it % 3 == 0 ? a.scale_pow2(static_cast<int>(rng() % 130)) : random_float(rng);
    const Dyadic ea = exact(a), eb = exact(b);
    const std::int64_t s = std::max(ea.shift, eb.shift);
    const Dyadic sum{(ea.num << (s - ea.shift)) + (eb.num << (s - eb.shift)), s};
    const ApproxFloat up = a.add(b, Rounding::up), down = a.add(b, Rounding::down), near = a.add(b);
    CHECK(cmp(exact(up), sum) >= 0);
    CHECK(cmp(exact(down), sum) <= 0);
    CHECK(down <= near);
    CHECK(near <= up);
    // up and down are adjacent (or equal) representable numbers
    if (down != up) {
      const ApproxFloat next = ApproxFloat::from_parts(down.mantissa(), down.exponent() - 63)
                                   .add(ApproxFloat::from_parts(1, down.exponent() - 63), Rounding::down);
      CHECK(next == up);
    }
  }
}

TEST_CASE("ApproxFloat mul_ratio brackets the exact product") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 4000; ++it) {
    const ApproxFloat a = random_float(rng);
    const std::uint64_t num = rng() % 100000 + 1, den = rng() % 100000 + 1;
    const Dyadic ea = exact(a);
    // compare a*num/den with x  <=>  a*num vs x*den
    const auto check = [&](const ApproxFloat& x, int want) {
      const Dyadic ex = exact(x);
      const Dyadic lhs{ea.num * num, ea.shift}, rhs{ex.num * den, ex.shift};
      const int c = cmp(rhs, lhs);
      if (want > 0) CHECK(c >= 0);
      else CHECK(c <= 0);
    };
    check(a.mul_ratio(num, den, Rounding::up), 1);
    check(a.mul_ratio(num, den, Rounding::down), -1);
  }
  CHECK(ApproxFloat::from_uint(6).mul_ratio(1, 3, Rounding::up) == ApproxFloat::from_uint(2));
  CHECK(ApproxFloat::infinity().mul_ratio(1, 3, Rounding::up).is_infinite());
  CHECK_THROWS_AS(ApproxFloat::from_uint(1).mul_ratio(1, 0, Rounding::up), DomainError);
}

TEST_CASE("compare_scaled and scaled rounding are exact") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 4000; ++it) {
    const ApproxFloat x = ApproxFloat::from_uint(rng() % 5000), y = ApproxFloat::from_uint(rng() % 5000);
    const std::uint64_t p = rng() % 50 + 1, q = rng() % 50 + 1;
    const long long lhs = static_cast<long long>(*x.to_uint() * p), rhs = static_cast<long long>(*y.to_uint() * q);
    CHECK(compare_scaled(x, p, y, q) == (lhs > rhs) - (lhs < rhs));
    const std::uint64_t num = rng() % 20 + 1, den = rng() % 20 + 1;
    const int shift = static_cast<int>(rng() % 9) - 4;
    // reference with rationals: x*num*2^shift/den
    cpp_int n = cpp_int(*x.to_uint()) * num, d = den;
    if (shift >= 0) n <<= shift;
    else d <<= -shift;
    const cpp_int fl = n / d, ce = (n + d - 1) / d;
    CHECK(floor_scaled(x, num, den, shift) == static_cast<std::uint64_t>(fl));
    CHECK(ceil_scaled(x, num, den, shift) == static_cast<std::uint64_t>(ce));
  }
  CHECK(ceil_scaled(ApproxFloat::infinity(), 1, 1, 0) == ~0ULL);
  CHECK(compare_scaled(ApproxFloat::infinity(), 1, ApproxFloat::from_uint(5), 1) == 1);
}

TEST_CASE("ApproxFloat text round trip") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 500; ++it) {
    const ApproxFloat a = random_float(rng);
    const auto back = ApproxFloat::parse(a.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK(ApproxFloat::parse("inf")->is_infinite());
  CHECK(ApproxFloat::parse("2.5")->to_double() == 2.5);
  CHECK(ApproxFloat::from_double(0.1).to_string() == "0.1");
  CHECK_FALSE(ApproxFloat::parse("-1").has_value());
  CHECK_FALSE(ApproxFloat::parse("abc").has_value());
  CHECK_THROWS_AS(ApproxFloat::from_double(-1.0), DomainError);
}

TEST_CASE("pow2 values survive exponents far beyond double range") {
  const ApproxFloat big = ApproxFloat::pow2(1 << 20);
  CHECK(big.exponent() == (1 << 20));
  CHECK(big.add(ApproxFloat::pow2(1 << 20)) == ApproxFloat::pow2((1 << 20) + 1));
  CHECK(big.add(ApproxFloat::from_uint(1), Rounding::down) == big);
  CHECK(big.add(ApproxFloat::from_uint(1), Rounding::up) > big);
}

TEST_CASE("Rational parsing is exact") {
  CHECK(Rational::parse("0.01") == Rational(1, 100));
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse("1e-2") == Rational(1, 100));
  CHECK(Rational::parse("1") == Rational(1, 1));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("0.1x"), ParseError);
  CHECK_THROWS_AS(Rational::parse("-0.5"), ParseError);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 2).ceil_inverse_times(4) == 8);
  CHECK(Rational(3, 10).ceil_inverse_times(4) == 14);
}

TEST_CASE("epsilon domain") {
  CHECK_NOTHROW(require_epsilon(Rational(1, 2)));
  CHECK_THROWS_AS(require_epsilon(Rational(0, 1)), DomainError);
  CHECK_THROWS_AS(require_epsilon(Rational(1, 1)), DomainError);
  CHECK_NOTHROW(require_epsilon(Rational(1, 1), true));
  CHECK_THROWS_AS(require_epsilon(Rational(3, 2), true), DomainError);
}

TEST_CASE("root_step compounds to at most 1 + eps and is tight") {
  for (unsigned k : {1U, 2U, 3U, 5U, 9U}) {
    for (const Rational eps : {Rational(1, 2), Rational(1, 10), Rational(1, 100)}) {
      const Rational d = root_step(eps, k);
      const cpp_int pn = d.num(), pd = d.den();
      const cpp_int lhs = boost::multiprecision::pow(pd + pn, k) * eps.den();
      const cpp_int rhs = (cpp_int(eps.num()) + eps.den()) * boost::multiprecision::pow(pd, k);
      CHECK(lhs <= rhs);
      const double want = std::pow(1.0 + eps.to_double(), 1.0 / k) - 1.0;
      CHECK(d.to_double() == doctest::Approx(want).epsilon(1e-4));
    }
  }
}
