#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tropconv/approx.hpp"
#include "tropconv/guarantee.hpp"
#include "tropconv/semiring.hpp"

using namespace tropconv;
using namespace testing_support;

namespace {

RealFunction reals(int n, std::initializer_list<double> v) {
  RealFunction f(n);
  std::size_t i = 0;
  for (double x : v) f[static_cast<Mask>(i++)] = std::isinf(x) ? ApproxFloat::infinity() : ApproxFloat::from_double(x);
  return f;
}

const double INF = std::numeric_limits<double>::infinity();

std::vector<ApproxFloat> vec(std::initializer_list<double> v) {
  std::vector<ApproxFloat> r;
  for (double x : v) r.push_back(std::isinf(x) ? ApproxFloat::infinity() : ApproxFloat::from_double(x));
  return r;
}

double at(const RealFunction& f, Mask m) { return f[m].to_double(); }

}  // namespace

TEST_CASE("scale_weak formula") {
  const Rational half(1, 2);
  const IntFunction s = scale_weak(reals(2, {7, 9, 0, INF}), 2, half);
  CHECK(s[0] == ExtInt(7));
  CHECK(s[1].is_infinite());
  CHECK(s[2] == ExtInt(0));
  CHECK(s[3].is_infinite());
}

TEST_CASE("scale_close formula") {
  const Rational half(1, 2);
  const IntFunction s = scale_close(reals(2, {8, 0.2, 9, 0.25}), 3, half);
  CHECK(s[0] == ExtInt(8));
  CHECK(s[1].is_infinite());
  CHECK(s[2].is_infinite());
  CHECK(s[3] == ExtInt(1));
}

TEST_CASE("weak approximation examples") {
  const Rational half(1, 2);
  const RealFunction h = approx_minsum_weak(reals(1, {0, 3}), reals(1, {0, 3}), half);
  CHECK(h[0].is_zero());
  CHECK(at(h, 1) >= 3);
  CHECK(at(h, 1) <= 4.5);
  std::mt19937_64 rng(31);
  const IntFunction g = random_int_function(rng, 6, 1000, 0.2);
  // every sum equals g(S), but the rounding grid still applies
  const RealFunction hg = approx_minsum_weak(to_real(min_sum_identity(6)), to_real(g), Rational(1, 10));
  CHECK(check_minsum_guarantee(g, hg, Rational(1, 10)).ok());
  const IntFunction small(1, {ExtInt(3), ExtInt(6)});
  CHECK(approx_minsum_weak(to_real(min_sum_identity(1)), to_real(small), half) == to_real(small));
  CHECK_THROWS_AS(approx_minsum_weak(reals(1, {0, 1}), reals(1, {0, 1}), Rational(1, 1)), DomainError);
  CHECK_THROWS_AS(approx_minsum_weak(reals(1, {0, 1}), reals(0, {0}), half), DimensionError);
}

TEST_CASE("degenerate inputs are answered exactly") {
  const Rational eps(1, 10);
  const RealFunction f = reals(2, {0, INF, 0, INF}), g = reals(2, {INF, 0, INF, INF});
  const RealFunction want = reals(2, {INF, 0, INF, 0});
  CHECK(approx_minsum_weak(f, g, eps) == want);
  CHECK(approx_minsum_strong(f, g, eps) == want);
  CHECK(approx_minsum_simple(f, g, eps) == want);
  const RealFunction all_inf(2, ApproxFloat::infinity());
  CHECK(approx_minsum_strong(all_inf, all_inf, eps) == all_inf);
  CHECK(approx_maxsum(f, g, eps) == want);
}

TEST_CASE("simple, strong and max-sum examples") {
  const RealFunction f = reals(1, {0, 3}), g = reals(1, {0, 2});
  const RealFunction s = approx_minsum_simple(f, g, Rational(1, 2));
  CHECK(s[0].is_zero());
  CHECK(at(s, 1) >= 2);
  CHECK(at(s, 1) <= 3);
  const RealFunction t = approx_minsum_strong(f, g, Rational(1, 4));
  CHECK(t[0].is_zero());
  CHECK(at(t, 1) >= 2);
  CHECK(at(t, 1) <= 2.5);
  const RealFunction m = approx_maxsum(reals(1, {0, 3}), reals(1, {0, 3}), Rational(1, 2));
  CHECK(at(m, 1) >= 1.5);
  CHECK(at(m, 1) <= 3);
  const RealFunction c = close_conv(reals(1, {1, 1}), reals(1, {1, 1}), Rational(1, 2));
  CHECK(at(c, 1) >= 2);
  CHECK(at(c, 1) <= 3);
  const RealFunction d = distant_conv(RealFunction(3), RealFunction(3), Rational(1, 2));
  for (const auto& v : d) CHECK(v.is_zero());
}

TEST_CASE("covering examples") {
  const auto A = vec({1}), B = vec({4});
  const CoveringFamily fam = sum_to_max_covering(A, B, Rational(1, 2));
  CHECK(check_sum_to_max_covering(A, B, fam).ok());
  const auto Z = vec({0, 0, 0});
  const CoveringFamily zf = sum_to_max_covering(Z, Z, Rational(1, 2));
  for (std::size_t i = 0; i < 3; ++i) {
    ApproxFloat best = ApproxFloat::infinity();
    for (const auto& m : zf.members) best = std::min(best, std::max(m.a[i], m.b[i]));
    CHECK(best.is_zero());
  }
  const auto big = vec({100}), one = vec({1});
  const CoveringFamily dist = distant_covering(big, one, Rational(1, 10));
  bool found = false;
  for (const auto& m : dist.members) {
    const ApproxFloat v = std::max(m.a[0], m.b[0]);
    if (v.to_double() <= 101) found = true;
    if (v.is_finite()) CHECK(v.to_double() >= 0.8 * 101);
  }
  CHECK(found);
  CHECK(check_distant_covering(big, one, dist).ok());
  CHECK(check_distant_covering(one, one, distant_covering(one, one, Rational(1, 10))).ok());
}

TEST_CASE("coverings on random vectors with zeros and infinities") {
  std::mt19937_64 rng(32);
  for (const Rational eps : {Rational(1, 2), Rational(1, 10)}) {
    for (int it = 0; it < 6; ++it) {
      const std::size_t d = 200;
      std::vector<ApproxFloat> A(d), B(d);
      for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t range = it % 2 ? (1ULL << 30) : 100;
        A[i] = rng() % 10 == 0 ? ApproxFloat::infinity()
                               : (rng() % 10 == 0 ? ApproxFloat::zero() : ApproxFloat::from_uint(rng() % range));
        B[i] = rng() % 10 == 0 ? ApproxFloat::infinity()
                               : (rng() % 10 == 0 ? ApproxFloat::zero() : ApproxFloat::from_uint(rng() % range));
      }
      CHECK(check_sum_to_max_covering(A, B, sum_to_max_covering(A, B, eps)).ok());
      CHECK(check_distant_covering(A, B, distant_covering(A, B, eps)).ok());
    }
  }
}

TEST_CASE("all approximators meet their guarantees on random instances") {
  std::mt19937_64 rng(33);
  for (const Rational eps : {Rational(1, 2), Rational(1, 10), Rational(1, 100)}) {
    for (int it = 0; it < 12; ++it) {
      const int n = 1 + static_cast<int>(rng() % 7);
      const std::uint64_t M = it % 3 == 0 ? 20 : (it % 3 == 1 ? 1 << 12 : 1ULL << 30);
      const IntFunction f = random_int_function(rng, n, M, 0.15, it % 4 == 0 ? 4 : 0);
      const IntFunction g = random_int_function(rng, n, M, 0.15);
      const IntFunction h = naive_convolution<MinPlus>(f, g);
      const RealFunction rf = to_real(f), rg = to_real(g);
      CHECK(check_minsum_guarantee(h, approx_minsum_weak(rf, rg, eps), eps).ok());
      CHECK(check_minsum_guarantee(h, approx_minsum_simple(rf, rg, eps), eps).ok());
      CHECK(check_minsum_guarantee(h, approx_minsum_strong(rf, rg, eps), eps).ok());
      const SplitClasses cls = classify_optimal_splits(f, g, eps);
      CHECK(check_minsum_guarantee(h, distant_conv(rf, rg, eps), eps, cls.distant).ok());
      CHECK(check_minsum_guarantee(h, close_conv(rf, rg, eps), eps, cls.close).ok());
      CHECK(check_maxsum_guarantee(naive_convolution<MaxPlus>(f, g), approx_maxsum(rf, rg, eps), eps).ok());
    }
  }
}

TEST_CASE("distant split with a zero summand") {
  // optimum at {1,2} is 0 + 50 (ratio 0)
  const IntFunction f(2, {ExtInt(0), ExtInt(40), ExtInt(40), ExtInt(90)});
  const IntFunction g(2, {ExtInt(80), ExtInt(30), ExtInt(35), ExtInt(50)});
  const Rational eps(1, 10);
  const IntFunction h = naive_convolution<MinPlus>(f, g);
  const SplitClasses cls = classify_optimal_splits(f, g, eps);
  CHECK(cls.distant[3] == 1);
  CHECK(check_minsum_guarantee(h, distant_conv(to_real(f), to_real(g), eps), eps, cls.distant).ok());
}

TEST_CASE("guarantee checker flags violations") {
  const IntFunction h(1, {ExtInt(10), ExtInt(0)});
  CHECK(check_minsum_guarantee(h, reals(1, {10, 0}), Rational(1, 10)).ok());
  CHECK(check_minsum_guarantee(h, reals(1, {11, 0}), Rational(1, 10)).ok());
  CHECK(check_minsum_guarantee(h, reals(1, {11.5, 0}), Rational(1, 10)).ratio_violations == 1);
  CHECK(check_minsum_guarantee(h, reals(1, {9, 0}), Rational(1, 10)).soundness_violations == 1);
  CHECK(check_minsum_guarantee(h, reals(1, {10, 1}), Rational(1, 10)).support_violations == 1);
  CHECK(check_maxsum_guarantee(h, reals(1, {8.5, 0}), Rational(1, 10)).ratio_violations == 1);
  CHECK(check_maxsum_guarantee(h, reals(1, {9, 0}), Rational(1, 10)).ok());
}

TEST_CASE("stats are reported") {
  std::mt19937_64 rng(34);
  const IntFunction f = random_int_function(rng, 6, 1000, 0.1), g = random_int_function(rng, 6, 1000, 0.1);
  ApproxStats st;
  ApproxOptions o;
  o.stats = &st;
  approx_minsum_strong(to_real(f), to_real(g), Rational(1, 10), o);
  CHECK(st.family_size > 0);
  CHECK(st.minmax_calls == st.family_size);
  CHECK(st.rounds > 0);
}
