#include "tropconv/approx.hpp"

#include <algorithm>
#include <optional>

#include "tropconv/minmax.hpp"

namespace tropconv {

namespace {

struct Range {
  ApproxFloat min_positive;
  ApproxFloat max_finite;
};

std::optional<Range> positive_range(std::span<const ApproxFloat> a, std::span<const ApproxFloat> b) {
  std::optional<Range> r;
  for (auto side : {a, b}) {
    for (const ApproxFloat& v : side) {
      if (v.is_infinite() || v.is_zero()) continue;
      if (!r) r = Range{v, v};
      r->min_positive = std::min(r->min_positive, v);
      r->max_finite = std::max(r->max_finite, v);
    }
  }
  return r;
}

BoolFunction indicator(const RealFunction& f, bool zeros_only) {
  BoolFunction r(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ApproxFloat& v = f[static_cast<Mask>(i)];
    r[static_cast<Mask>(i)] = zeros_only ? v.is_zero() : v.is_finite();
  }
  return r;
}

// 1 where some split has both summands zero.
BoolFunction zero_splits(const RealFunction& f, const RealFunction& g, Exec exec) {
  return boolean_subset_convolution(indicator(f, true), indicator(g, true), exec);
}

void pin_zeros(RealFunction& h, const RealFunction& f, const RealFunction& g, Exec exec) {
  const BoolFunction z = zero_splits(f, g, exec);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (z[static_cast<Mask>(i)]) h[static_cast<Mask>(i)] = ApproxFloat::zero();
  }
}

void min_into(RealFunction& acc, const RealFunction& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    if (x[m] < acc[m]) acc[m] = x[m];
  }
}

bool all_infinite(const IntFunction& f) {
  return std::all_of(f.begin(), f.end(), [](ExtInt v) { return v.is_infinite(); });
}

std::size_t finite_count(const IntFunction& f) {
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](ExtInt v) { return v.is_finite(); }));
}

// h_q(S) * num / den * 2^q_exp, rounded in the given direction.
ApproxFloat unscale(ExtInt v, std::uint64_t num, std::uint64_t den, std::int64_t q_exp, Rounding mode) {
  if (v.is_infinite()) return ApproxFloat::infinity();
  return ApproxFloat::from_uint(v.value()).mul_ratio(num, den, mode).scale_pow2(q_exp);
}

// ⌈log2 x⌉ for finite positive x.
std::int64_t ceil_log2(const ApproxFloat& x) {
  const bool power_of_two = x.mantissa() == (std::uint64_t{1} << 63);
  return x.exponent() + (power_of_two ? 0 : 1);
}

void require_inputs(const RealFunction& f, const RealFunction& g, const Rational& eps, const char* where,
                    bool allow_one = false) {
  require_same_order(f, g, where);
  require_epsilon(eps, allow_one);
}

MinMaxOptions minmax_options(const ApproxOptions& o) {
  MinMaxOptions m;
  m.chunk_size = o.minmax_chunk_size;
  m.exec = o.exec;
  return m;
}

RealFunction min_over_family(int n, const CoveringFamily& family, const ApproxOptions& options) {
  RealFunction h(n, ApproxFloat::infinity());
  const MinMaxOptions mo = minmax_options(options);
  for (const CoveringMember& member : family.members) {
    const RealFunction a(n, member.a), b(n, member.b);
    min_into(h, minmax_convolution(a, b, mo));
  }
  if (options.stats) {
    options.stats->family_size += family.size();
    options.stats->minmax_calls += family.size();
  }
  return h;
}

// Sorted distinct finite values, cut greedily into groups whose largest member
// is at most (1+ε) times the smallest; returns the largest value of each group.
std::vector<ApproxFloat> group_tops(std::span<const ApproxFloat> values, const Rational& eps) {
  std::vector<ApproxFloat> v;
  for (const ApproxFloat& x : values) {
    if (x.is_finite()) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<ApproxFloat> tops;
  const std::uint64_t a = eps.num(), b = eps.den();
  std::size_t i = 0;
  while (i < v.size()) {
    const ApproxFloat y0 = v[i];
    // first index whose value exceeds (1+ε)·y0
    const auto it = std::partition_point(v.begin() + static_cast<std::ptrdiff_t>(i), v.end(),
                                         [&](const ApproxFloat& y) { return compare_scaled(y, b, y0, a + b) <= 0; });
    const auto last = static_cast<std::size_t>(it - v.begin()) - 1;
    tops.push_back(v[last]);
    i = last + 1;
  }
  return tops;
}

std::vector<ApproxFloat> shifted(std::span<const ApproxFloat> x, const ApproxFloat& v) {
  std::vector<ApproxFloat> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i].add(v, Rounding::up);
  return r;
}

std::vector<ApproxFloat> at_most(std::span<const ApproxFloat> x, const ApproxFloat& v) {
  std::vector<ApproxFloat> r(x.size(), ApproxFloat::infinity());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= v) r[i] = ApproxFloat::zero();
  }
  return r;
}

struct Level {
  std::vector<ApproxFloat> large;
  std::vector<ApproxFloat> small;
};

// Members for the role where `large` holds the dominant summand.
std::vector<Level> distant_levels(std::span<const ApproxFloat> large, std::span<const ApproxFloat> small,
                                  const Rational& eps) {
  const std::uint64_t a = eps.num(), b = eps.den();
  std::vector<std::int64_t> levels;
  bool small_has_zero = false;
  std::optional<ApproxFloat> min_large;
  for (const ApproxFloat& y : small) {
    if (y.is_infinite()) continue;
    if (y.is_zero()) small_has_zero = true;
    else levels.push_back(y.exponent() + 1);
  }
  for (const ApproxFloat& x : large) {
    if (x.is_finite() && !x.is_zero() && (!min_large || x < *min_large)) min_large = x;
  }
  if (!min_large) return {};
  if (small_has_zero) {
    // 2^l0 <= 2ε · min positive large value
    levels.push_back(min_large->mul_ratio(2 * a, b, Rounding::down).exponent());
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Level> out;
  for (const std::int64_t l : levels) {
    const ApproxFloat p = ApproxFloat::pow2(l);
    Level lv{std::vector<ApproxFloat>(large.size(), ApproxFloat::infinity()),
             std::vector<ApproxFloat>(small.size(), ApproxFloat::infinity())};
    bool any_large = false, any_small = false;
    for (std::size_t i = 0; i < large.size(); ++i) {
      // large[i] >= 2^l / (2ε)
      if (large[i].is_finite() && compare_scaled(large[i], 2 * a, p, b) >= 0) {
        lv.large[i] = large[i];
        any_large = true;
      }
    }
    for (std::size_t j = 0; j < small.size(); ++j) {
      if (small[j] < p) {
        lv.small[j] = small[j];
        any_small = true;
      }
    }
    if (any_large && any_small) out.push_back(std::move(lv));
  }
  return out;
}

}  // namespace

CoveringFamily sum_to_max_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                   const Rational& eps) {
  require_epsilon(eps, true);
  CoveringFamily fam;
  fam.kind = CoveringKind::sum_to_max;
  fam.eps = eps;
  const auto tops_a = group_tops(A, eps), tops_b = group_tops(B, eps);
  if (tops_a.empty() || tops_b.empty()) return fam;
  if (tops_b.size() <= tops_a.size()) {
    for (const ApproxFloat& v : tops_b) fam.members.push_back({shifted(A, v), at_most(B, v)});
  } else {
    for (const ApproxFloat& v : tops_a) fam.members.push_back({at_most(A, v), shifted(B, v)});
  }
  return fam;
}

CoveringFamily sum_to_max_covering(const RealFunction& f, const RealFunction& g, const Rational& eps) {
  require_same_order(f, g, "sum_to_max_covering");
  return sum_to_max_covering(f.values(), g.values(), eps);
}

CoveringFamily distant_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B, const Rational& eps) {
  require_epsilon(eps);
  CoveringFamily fam;
  fam.kind = CoveringKind::distant;
  fam.eps = eps;
  for (Level& lv : distant_levels(A, B, eps)) fam.members.push_back({std::move(lv.large), std::move(lv.small)});
  for (Level& lv : distant_levels(B, A, eps)) fam.members.push_back({std::move(lv.small), std::move(lv.large)});
  return fam;
}

CoveringFamily distant_covering(const RealFunction& f, const RealFunction& g, const Rational& eps) {
  require_same_order(f, g, "distant_covering");
  return distant_covering(f.values(), g.values(), eps);
}

IntFunction scale_weak(const RealFunction& f, std::int64_t q_exp, const Rational& eps) {
  require_epsilon(eps);
  const std::uint64_t a = eps.num(), b = eps.den();
  const std::uint64_t cap = eps.ceil_inverse_times(4);
  IntFunction r(f.order(), ExtInt::infinity());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ApproxFloat& v = f[static_cast<Mask>(i)];
    if (v.is_infinite()) continue;
    const std::uint64_t s = ceil_scaled(v, 2 * b, a, -q_exp);
    if (s <= cap) r[static_cast<Mask>(i)] = ExtInt(s);
  }
  return r;
}

IntFunction scale_close(const RealFunction& f, std::int64_t q_exp, const Rational& eps) {
  require_epsilon(eps);
  const std::uint64_t a = eps.num(), b = eps.den();
  const ApproxFloat q = ApproxFloat::pow2(q_exp);
  IntFunction r(f.order(), ExtInt::infinity());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ApproxFloat& v = f[static_cast<Mask>(i)];
    if (v.is_infinite() || q < v) continue;
    if (compare_scaled(v, 16 * b, q, a) < 0) continue;  // v < εq/16
    r[static_cast<Mask>(i)] = ExtInt(ceil_scaled(v, 4 * b, a, -q_exp));
  }
  return r;
}

RealFunction approx_minsum_weak(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                const ApproxOptions& options) {
  require_inputs(f, g, eps, "approx_minsum_weak");
  const std::uint64_t a = eps.num(), b = eps.den();
  const auto cap = static_cast<std::int64_t>(eps.ceil_inverse_times(4));
  RealFunction h(f.order(), ApproxFloat::infinity());
  if (const auto range = positive_range(f.values(), g.values())) {
    const std::int64_t top = ceil_log2(range->max_finite) + 1;
    const std::int64_t bottom = range->min_positive.exponent();
    for (std::int64_t j = top; j >= bottom; --j) {
      const IntFunction fs = scale_weak(f, j, eps), gs = scale_weak(g, j, eps);
      if (all_infinite(fs) || all_infinite(gs)) {
        if (options.stats) ++options.stats->skipped_rounds;
        continue;
      }
      if (options.stats) ++options.stats->rounds;
      const IntFunction hq = bounded_minsum_convolution(fs, gs, cap, options.bounded, options.exec);
      for (std::size_t i = 0; i < h.size(); ++i) {
        const auto m = static_cast<Mask>(i);
        const ApproxFloat v = unscale(hq[m], a, 2 * b, j, Rounding::up);
        if (v < h[m]) h[m] = v;
      }
    }
  }
  pin_zeros(h, f, g, options.exec);
  return h;
}

RealFunction approx_minsum_simple(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                  const ApproxOptions& options) {
  require_inputs(f, g, eps, "approx_minsum_simple", true);
  return min_over_family(f.order(), sum_to_max_covering(f, g, eps), options);
}

RealFunction distant_conv(const RealFunction& f, const RealFunction& g, const Rational& eps,
                          const ApproxOptions& options) {
  require_inputs(f, g, eps, "distant_conv");
  const Rational quarter(eps.num(), 4 * eps.den());
  RealFunction h = min_over_family(f.order(), distant_covering(f, g, quarter), options);
  // divide by 1 − ε/2
  const std::uint64_t a = eps.num(), b = eps.den();
  for (ApproxFloat& v : h) v = v.mul_ratio(2 * b, 2 * b - a, Rounding::up);
  pin_zeros(h, f, g, options.exec);
  return h;
}

RealFunction close_conv(const RealFunction& f, const RealFunction& g, const Rational& eps,
                        const ApproxOptions& options) {
  require_inputs(f, g, eps, "close_conv");
  const std::uint64_t a = eps.num(), b = eps.den();
  const std::uint64_t cap = eps.ceil_inverse_times(4);
  const int n = f.order();
  RealFunction h(n, ApproxFloat::infinity());
  pin_zeros(h, f, g, options.exec);
  const auto range = positive_range(f.values(), g.values());
  if (!range) return h;
  const double sparse_limit = options.sparse_threshold * static_cast<double>(lattice_size(n)) * static_cast<double>(cap);
  const std::int64_t bottom = range->min_positive.exponent();
  const std::int64_t top = ceil_log2(range->max_finite);
  for (std::int64_t j = bottom; j <= top; ++j) {
    const IntFunction fs = scale_close(f, j, eps), gs = scale_close(g, j, eps);
    const std::size_t alpha = finite_count(fs), beta = finite_count(gs);
    if (alpha == 0 || beta == 0) {
      if (options.stats) ++options.stats->skipped_rounds;
      continue;
    }
    if (options.stats) ++options.stats->rounds;
    BoundedStrategy route = options.bounded;
    if (static_cast<double>(alpha) * static_cast<double>(beta) <= sparse_limit) {
      route = BoundedStrategy::sparse;
      if (options.stats) ++options.stats->sparse_rounds;
    }
    const IntFunction hq = bounded_minsum_convolution(fs, gs, static_cast<std::int64_t>(cap), route, options.exec);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto m = static_cast<Mask>(i);
      const ApproxFloat v = unscale(hq[m], a, 4 * b, j, Rounding::up);
      if (v < h[m]) h[m] = v;
    }
  }
  return h;
}

RealFunction approx_minsum_strong(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                  const ApproxOptions& options) {
  require_inputs(f, g, eps, "approx_minsum_strong");
  RealFunction h = distant_conv(f, g, eps, options);
  min_into(h, close_conv(f, g, eps, options));
  return h;
}

RealFunction approx_maxsum(const RealFunction& f, const RealFunction& g, const Rational& eps,
                           const ApproxOptions& options) {
  require_inputs(f, g, eps, "approx_maxsum");
  const std::uint64_t a = eps.num(), b = eps.den();
  const std::uint64_t cap = 4 * b / a;
  const int n = f.order();
  // feasible sets start at 0, the others at the −∞ marker
  const BoolFunction feasible = boolean_subset_convolution(indicator(f, false), indicator(g, false), options.exec);
  RealFunction h(n, ApproxFloat::infinity());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (feasible[static_cast<Mask>(i)]) h[static_cast<Mask>(i)] = ApproxFloat::zero();
  }
  const auto range = positive_range(f.values(), g.values());
  if (!range) return h;
  const auto scale_floor = [&](const RealFunction& x, std::int64_t j) {
    IntFunction r(n, ExtInt::infinity());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const ApproxFloat& v = x[static_cast<Mask>(i)];
      if (v.is_infinite()) continue;
      const std::uint64_t s = floor_scaled(v, 2 * b, a, -j);
      if (s <= cap) r[static_cast<Mask>(i)] = ExtInt(s);
    }
    return r;
  };
  const std::int64_t bottom = range->min_positive.exponent();
  const std::int64_t top = range->max_finite.exponent() + 1;
  for (std::int64_t j = bottom; j <= top; ++j) {
    const IntFunction fs = scale_floor(f, j), gs = scale_floor(g, j);
    if (all_infinite(fs) || all_infinite(gs)) {
      if (options.stats) ++options.stats->skipped_rounds;
      continue;
    }
    if (options.stats) ++options.stats->rounds;
    const IntFunction hq =
        bounded_maxsum_convolution(fs, gs, static_cast<std::int64_t>(cap), options.bounded, options.exec);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto m = static_cast<Mask>(i);
      if (hq[m].is_infinite()) continue;
      const ApproxFloat v = unscale(hq[m], a, 2 * b, j, Rounding::down);
      if (h[m].is_infinite() || h[m] < v) h[m] = v;
    }
  }
  return h;
}

}  // namespace tropconv
