#pragma once

#include <cstdint>
#include <vector>

#include "tropconv/approx.hpp"
#include "tropconv/rational.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// Outcome of checking an approximate output against the exact one.
struct GuaranteeReport {
  std::size_t checked = 0;
  /// Sets where the approximation falls on the wrong side of h.
  std::size_t soundness_violations = 0;
  /// Sets where the approximation misses the (1±ε) bound.
  std::size_t ratio_violations = 0;
  /// Sets where exactly one of h, h̃ is infinite, or h = 0 ≠ h̃.
  std::size_t support_violations = 0;
  /// Largest h̃/h (min-sum) or smallest h̃/h (max-sum) over finite positive h.
  double extreme_ratio = 1.0;
  std::vector<Mask> failing;

  bool ok() const { return soundness_violations == 0 && ratio_violations == 0 && support_violations == 0; }
};

/// Checks h ≤ h̃ ≤ (1+ε)h exactly. If `only` is non-empty, the ratio bound is
/// checked only where only[S] != 0 (soundness is always checked).
GuaranteeReport check_minsum_guarantee(const IntFunction& exact, const RealFunction& approx, const Rational& eps,
                                       const std::vector<std::uint8_t>& only = {});

/// Checks (1−ε)h ≤ h̃ ≤ h exactly; the infinity marker means −∞ on both sides.
GuaranteeReport check_maxsum_guarantee(const IntFunction& exact, const RealFunction& approx, const Rational& eps);

/// Per set, whether some optimal min-sum split is distant (summand ratio
/// outside [ε/4, 4/ε], a zero next to a positive summand counts as distant)
/// and whether some optimal split is close (ratio inside). Brute force, 3^n.
struct SplitClasses {
  std::vector<std::uint8_t> distant;
  std::vector<std::uint8_t> close;
};
SplitClasses classify_optimal_splits(const IntFunction& f, const IntFunction& g, const Rational& eps);

/// Exhaustive pairwise check of a covering family against A, B. Returns the
/// number of violated pairs.
struct CoveringReport {
  std::uint64_t pairs = 0;
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_violations = 0;
  bool ok() const { return lower_violations == 0 && upper_violations == 0; }
};
CoveringReport check_sum_to_max_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                         const CoveringFamily& family);
CoveringReport check_distant_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                      const CoveringFamily& family);

}  // namespace tropconv
