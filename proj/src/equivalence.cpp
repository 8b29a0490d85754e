#include "tropconv/equivalence.hpp"

#include "tropconv/rank_table.hpp"
#include "tropconv/semiring.hpp"

namespace tropconv {

namespace {

using u128 = unsigned __int128;

// Is x ≤ 2^(E/2)?
bool at_most_half_power(const ApproxFloat& x, std::int64_t E) {
  if (x.is_zero()) return true;
  const std::int64_t e = x.exponent();
  if (2 * e + 2 <= E) return true;
  if (2 * e > E) return false;
  if (E == 2 * e) return x.mantissa() == (std::uint64_t{1} << 63);
  const u128 sq = u128{x.mantissa()} * x.mantissa();  // (m / 2^63)^2 ≤ 2
  return sq <= (u128{1} << 127);
}

}  // namespace

int exponent_bits(const Rational& eps) {
  const u128 a = eps.num(), b = eps.den();
  const u128 num = 4 * (a + b) * (a + b), den = b * b;
  const u128 t = (num + den - 1) / den;
  int k = 0;
  while ((u128{1} << k) < t) ++k;
  return k;
}

IntFunction minmax_via_approx_minsum(const IntFunction& f, const IntFunction& g, const Rational& eps,
                                     const MinSumSolver& solver, EquivalenceTrace* trace) {
  require_same_order(f, g, "minmax_via_approx_minsum");
  require_epsilon(eps, true);
  const int n = f.order();
  const int k = exponent_bits(eps);
  const RankTable<ExtInt> table(f, g);
  const auto lift = [&](const IntFunction& x, IntFunction& ranks) {
    RealFunction out(n);
    ranks = IntFunction(n);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto m = static_cast<Mask>(i);
      const std::uint32_t r = table.rank_of(x[m]);
      ranks[m] = r == kInfiniteRank ? ExtInt::infinity() : ExtInt(r);
      out[m] = r == kInfiniteRank ? ApproxFloat::infinity() : ApproxFloat::pow2(static_cast<std::int64_t>(k) * r);
    }
    return out;
  };
  IntFunction fr, gr;
  const RealFunction fp = lift(f, fr), gp = lift(g, gr);
  const RealFunction hp = solver(fp, gp, eps);
  require_same_order(fp, hp, "minmax_via_approx_minsum: solver output");

  IntFunction h(n, ExtInt::infinity());
  for (std::size_t i = 0; i < hp.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    const ApproxFloat& v = hp[m];
    if (v.is_infinite()) continue;
    if (v.is_zero()) throw IntegrityError("solver returned 0 at set " + std::to_string(i) + "; all inputs are ≥ 1");
    const std::int64_t e = v.exponent();
    const std::int64_t r = e / k;
    // decoding is only sound inside [t^r, t^{r+1/2}]
    if (!at_most_half_power(v, 2 * k * r + k)) {
      throw IntegrityError("solver output at set " + std::to_string(i) + " lies outside every window [t^r, t^(r+1/2)]");
    }
    if (r < 0 || static_cast<std::size_t>(r) >= table.size()) {
      throw IntegrityError("solver output at set " + std::to_string(i) + " decodes to an unknown rank");
    }
    h[m] = table.value_of(static_cast<std::uint32_t>(r));
  }
  if (trace) {
    trace->k = k;
    trace->f_ranks = std::move(fr);
    trace->g_ranks = std::move(gr);
    trace->f_prime = fp;
    trace->g_prime = gp;
    trace->h_prime = hp;
  }
  return h;
}

Claim1Report verify_claim1(const IntFunction& f, const IntFunction& g, const Rational& eps,
                           const RealFunction& h_prime) {
  require_same_order(f, g, "verify_claim1");
  require_same_order(f, h_prime, "verify_claim1");
  const std::int64_t k = exponent_bits(eps);
  const IntFunction h = naive_convolution<MinMax>(f, g);
  Claim1Report rep;
  rep.entries.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    Claim1Entry e;
    e.set = m;
    const ApproxFloat& v = h_prime[m];
    if (h[m].is_infinite() || v.is_infinite()) {
      e.lower_ok = v.is_infinite();
      e.upper_ok = h[m].is_infinite();
    } else {
      const auto r = static_cast<std::int64_t>(h[m].value());
      e.lower_ok = !(v < ApproxFloat::pow2(k * r));
      e.upper_ok = at_most_half_power(v, 2 * k * r + k);
    }
    if (!e.lower_ok || !e.upper_ok) ++rep.failures;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace tropconv
