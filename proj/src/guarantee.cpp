#include "tropconv/guarantee.hpp"

#include "tropconv/semiring.hpp"

namespace tropconv {

namespace {

void fail(GuaranteeReport& r, std::size_t& counter, Mask m) {
  ++counter;
  if (r.failing.size() < 64) r.failing.push_back(m);
}

}  // namespace

GuaranteeReport check_minsum_guarantee(const IntFunction& exact, const RealFunction& approx, const Rational& eps,
                                       const std::vector<std::uint8_t>& only) {
  require_same_order(exact, approx, "check_minsum_guarantee");
  const std::uint64_t a = eps.num(), b = eps.den();
  GuaranteeReport r;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    ++r.checked;
    const ExtInt h = exact[m];
    const ApproxFloat& x = approx[m];
    const bool bounded = only.empty() || only[i];
    if (h.is_infinite() || x.is_infinite()) {
      if (h.is_infinite() && x.is_finite()) fail(r, r.soundness_violations, m);
      else if (bounded && h.is_finite()) fail(r, r.support_violations, m);
      continue;
    }
    const ApproxFloat hv = to_real(h);
    if (x < hv) {
      fail(r, r.soundness_violations, m);
      continue;
    }
    if (!bounded) continue;
    if (h.value() == 0) {
      if (!x.is_zero()) fail(r, r.support_violations, m);
      continue;
    }
    r.extreme_ratio = std::max(r.extreme_ratio, x.to_double() / static_cast<double>(h.value()));
    // b·h̃ ≤ (a+b)·h
    if (compare_scaled(x, b, hv, a + b) > 0) fail(r, r.ratio_violations, m);
  }
  return r;
}

GuaranteeReport check_maxsum_guarantee(const IntFunction& exact, const RealFunction& approx, const Rational& eps) {
  require_same_order(exact, approx, "check_maxsum_guarantee");
  const std::uint64_t a = eps.num(), b = eps.den();
  GuaranteeReport r;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    ++r.checked;
    const ExtInt h = exact[m];
    const ApproxFloat& x = approx[m];
    if (h.is_infinite() || x.is_infinite()) {
      if (h.is_infinite() != x.is_infinite()) fail(r, h.is_infinite() ? r.soundness_violations : r.support_violations, m);
      continue;
    }
    const ApproxFloat hv = to_real(h);
    if (hv < x) {
      fail(r, r.soundness_violations, m);
      continue;
    }
    if (h.value() == 0) continue;
    r.extreme_ratio = std::min(r.extreme_ratio, x.to_double() / static_cast<double>(h.value()));
    // (b−a)·h ≤ b·h̃
    if (compare_scaled(hv, b - a, x, b) > 0) fail(r, r.ratio_violations, m);
  }
  return r;
}

SplitClasses classify_optimal_splits(const IntFunction& f, const IntFunction& g, const Rational& eps) {
  require_same_order(f, g, "classify_optimal_splits");
  const IntFunction h = naive_convolution<MinPlus>(f, g);
  const std::uint64_t a = eps.num(), b = eps.den();
  SplitClasses c{std::vector<std::uint8_t>(h.size(), 0), std::vector<std::uint8_t>(h.size(), 0)};
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto s = static_cast<Mask>(i);
    if (h[s].is_infinite()) continue;
    for_each_submask(s, [&](Mask t) {
      const ExtInt x = f[t], y = g[s ^ t];
      if (x.is_infinite() || y.is_infinite() || x.value() + y.value() != h[s].value()) return;
      const unsigned __int128 xv = x.value(), yv = y.value();
      if (xv == 0 && yv == 0) return;  // ratio undefined: neither kind
      // close iff ε/4 ≤ x/y ≤ 4/ε  <=>  a·y ≤ 4b·x  and  a·x ≤ 4b·y
      const bool is_close = a * yv <= 4 * b * xv && a * xv <= 4 * b * yv;
      (is_close ? c.close : c.distant)[i] = 1;
    });
  }
  return c;
}

namespace {

ApproxFloat member_max(const CoveringMember& m, std::size_t i, std::size_t j) { return std::max(m.a[i], m.b[j]); }

}  // namespace

CoveringReport check_sum_to_max_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                         const CoveringFamily& family) {
  const std::uint64_t a = family.eps.num(), b = family.eps.den();
  CoveringReport r;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].is_infinite()) continue;
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (B[j].is_infinite()) continue;
      ++r.pairs;
      ApproxFloat best = ApproxFloat::infinity();
      for (const CoveringMember& m : family.members) best = std::min(best, member_max(m, i, j));
      const ApproxFloat sum = A[i].add(B[j]);
      if (best < sum) ++r.lower_violations;
      if (compare_scaled(best, b, sum, a + b) > 0) ++r.upper_violations;
    }
  }
  return r;
}

CoveringReport check_distant_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                      const CoveringFamily& family) {
  const std::uint64_t a = family.eps.num(), b = family.eps.den();
  CoveringReport r;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].is_infinite()) continue;
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (B[j].is_infinite()) continue;
      ++r.pairs;
      const ApproxFloat sum = A[i].add(B[j]);
      ApproxFloat best = ApproxFloat::infinity();
      bool lower_ok = true;
      for (const CoveringMember& m : family.members) {
        const ApproxFloat v = member_max(m, i, j);
        best = std::min(best, v);
        // b·v ≥ (b − 2a)·sum
        if (v.is_finite() && 2 * a < b && compare_scaled(v, b, sum, b - 2 * a) < 0) lower_ok = false;
      }
      if (!lower_ok) ++r.lower_violations;
      // distant: A/B ∉ [ε, 1/ε]  <=>  A·b < a·B  or  a·A > b·B; 0/0 excluded
      const bool zero_pair = A[i].is_zero() && B[j].is_zero();
      const bool distant =
          !zero_pair && (compare_scaled(A[i], b, B[j], a) < 0 || compare_scaled(A[i], a, B[j], b) > 0);
      if (distant && sum < best) ++r.upper_violations;
    }
  }
  return r;
}

}  // namespace tropconv
