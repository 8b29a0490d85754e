#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tropconv/rational.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// Any (1+ε)-approximate min-sum convolution.
using MinSumSolver = std::function<RealFunction(const RealFunction&, const RealFunction&, const Rational&)>;

/// Smallest k with 2^k ≥ ⌈4(1+ε)^2⌉. The base t = 2^k makes t^r exact in
/// ApproxFloat and keeps log_t a shift of the binary exponent.
int exponent_bits(const Rational& eps);

/// Intermediate tables of a min-max-via-min-sum run.
struct EquivalenceTrace {
  int k = 0;
  IntFunction f_ranks, g_ranks;
  RealFunction f_prime, g_prime, h_prime;
};

/// Exact min-max convolution through an approximate min-sum solver: ranks r
/// are lifted to t^r, the solver runs, and ⌊log_t h′⌋ is read back. Throws
/// IntegrityError when some h′(S) does not sit in a window [t^r, t^{r+1/2}]
/// (the solver broke its guarantee).
IntFunction minmax_via_approx_minsum(const IntFunction& f, const IntFunction& g, const Rational& eps,
                                     const MinSumSolver& solver, EquivalenceTrace* trace = nullptr);

struct Claim1Entry {
  Mask set = 0;
  bool lower_ok = true;  // t^h ≤ h′
  bool upper_ok = true;  // h′ ≤ t^{h+1/2}
};

struct Claim1Report {
  std::vector<Claim1Entry> entries;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

/// Checks t^{h(S)} ≤ h′(S) ≤ t^{h(S)+1/2} at every S, where h is the exact
/// min-max convolution of the exponent tables f, g and t = 2^exponent_bits(eps).
/// Each side is compared exactly; infinite h requires infinite h′.
Claim1Report verify_claim1(const IntFunction& f, const IntFunction& g, const Rational& eps, const RealFunction& h_prime);

}  // namespace tropconv
