#pragma once

#include <cstdint>

#include "tropconv/exec.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// (ζf)(S) = Σ_{T⊆S} f(T). Throws OverflowError when the integer result could
/// exceed 64 bits.
RingFunction zeta_transform(const RingFunction& f, Exec exec = Exec::parallel);
/// Inverse of zeta_transform, computed modulo 2^64.
RingFunction moebius_transform(const RingFunction& f, Exec exec = Exec::parallel);

/// Sum-product subset convolution in O(2^n n^2). Throws OverflowError when
/// Σf · Σg ≥ 2^64, i.e. whenever some output could wrap.
RingFunction fast_sumproduct_convolution(const RingFunction& f, const RingFunction& g, Exec exec = Exec::parallel);

/// h(S) = 1 iff a(T) = b(S\T) = 1 for some T ⊆ S. Throws DomainError on
/// non-boolean entries.
BoolFunction boolean_subset_convolution(const BoolFunction& a, const BoolFunction& b, Exec exec = Exec::parallel);

/// Exact routes for bounded-value min-sum / max-sum convolution.
///   polynomial   values as monomials x^v, ranked transforms over Z[x]/(x^{2M+1})
///   enumeration  direct submask enumeration, 3^n
///   sparse       all pairs of finite entries
/// automatic picks the cheapest by operation count.
enum class BoundedStrategy { automatic, polynomial, enumeration, sparse };

/// Estimated operation counts used by BoundedStrategy::automatic.
struct BoundedCost {
  double polynomial = 0;
  double enumeration = 0;
  double sparse = 0;
};
BoundedCost bounded_cost(int n, std::uint64_t M, std::size_t finite_f, std::size_t finite_g);
BoundedStrategy choose_bounded_strategy(const BoundedCost& cost);

/// Exact min-sum convolution for inputs whose finite values lie in [0, M].
/// Throws DomainError when M < 0 or a finite value exceeds M.
IntFunction bounded_minsum_convolution(const IntFunction& f, const IntFunction& g, std::int64_t M,
                                       BoundedStrategy strategy = BoundedStrategy::automatic,
                                       Exec exec = Exec::parallel);

/// Exact max-sum convolution; the infinity marker means "infeasible" (−∞).
IntFunction bounded_maxsum_convolution(const IntFunction& f, const IntFunction& g, std::int64_t M,
                                       BoundedStrategy strategy = BoundedStrategy::automatic,
                                       Exec exec = Exec::parallel);

}  // namespace tropconv
