#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tropconv/exec.hpp"
#include "tropconv/lattice.hpp"
#include "tropconv/rational.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

struct ApproxStats {
  /// Members of the covering family actually convolved.
  std::size_t family_size = 0;
  /// Scaling rounds run / skipped for empty support / run on the sparse path.
  std::size_t rounds = 0;
  std::size_t skipped_rounds = 0;
  std::size_t sparse_rounds = 0;
  std::size_t minmax_calls = 0;
};

struct ApproxOptions {
  /// Chunk size passed to min-max calls (0 = default).
  std::size_t minmax_chunk_size = 0;
  /// close_conv uses the pairwise path when α·β ≤ sparse_threshold · 2^n · ⌈4/ε⌉.
  double sparse_threshold = 1.0;
  /// Route for the exact bounded convolutions inside the scaling rounds.
  BoundedStrategy bounded = BoundedStrategy::automatic;
  ApproxStats* stats = nullptr;
  Exec exec = Exec::parallel;
};

enum class CoveringKind { sum_to_max, distant };

/// Paired vectors (A^(l), B^(l)); ∞ marks a dropped coordinate.
struct CoveringMember {
  std::vector<ApproxFloat> a;
  std::vector<ApproxFloat> b;
};

struct CoveringFamily {
  CoveringKind kind = CoveringKind::sum_to_max;
  Rational eps;
  std::vector<CoveringMember> members;

  std::size_t size() const { return members.size(); }
};

/// Family with A[i] + B[j] ≤ min_l max{A^(l)[i], B^(l)[j]} ≤ (1+ε)(A[i] + B[j])
/// for all finite pairs. Members are A + v paired with the indicator-like
/// vector [B ≤ v] (0 or ∞), one per group of B-values within a factor 1+ε of
/// each other; the side with fewer groups is the one thresholded.
CoveringFamily sum_to_max_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B,
                                   const Rational& eps);
CoveringFamily sum_to_max_covering(const RealFunction& f, const RealFunction& g, const Rational& eps);

/// Family with (i) max{A^(l)[i], B^(l)[j]} ≥ (1−2ε)(A[i] + B[j]) for every l
/// and (ii) some l with max{A^(l)[i], B^(l)[j]} ≤ A[i] + B[j] whenever
/// A[i]/B[j] ∉ [ε, 1/ε]. Members keep the large side above 2^l/(2ε) and the
/// small side below 2^l, for each occupied power-of-two band, in both roles.
CoveringFamily distant_covering(std::span<const ApproxFloat> A, std::span<const ApproxFloat> B, const Rational& eps);
CoveringFamily distant_covering(const RealFunction& f, const RealFunction& g, const Rational& eps);

/// S ↦ ⌈2f(S)/(εq)⌉ if that is ≤ ⌈4/ε⌉, else ∞; q = 2^q_exp.
IntFunction scale_weak(const RealFunction& f, std::int64_t q_exp, const Rational& eps);
/// S ↦ ⌈4f(S)/(εq)⌉ if εq/16 ≤ f(S) ≤ q, else ∞; q = 2^q_exp.
IntFunction scale_close(const RealFunction& f, std::int64_t q_exp, const Rational& eps);

/// Weakly polynomial (1+ε)-approximation, Õ(2^n log M / ε). 0 < ε < 1.
RealFunction approx_minsum_weak(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                const ApproxOptions& options = {});
/// Sum-to-max covering followed by one exact min-max convolution per member.
/// Accepts 0 < ε ≤ 1.
RealFunction approx_minsum_simple(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                  const ApproxOptions& options = {});
/// Upper bound on h everywhere; within (1+ε) wherever some optimal split has
/// summand ratio outside [ε/4, 4/ε].
RealFunction distant_conv(const RealFunction& f, const RealFunction& g, const Rational& eps,
                          const ApproxOptions& options = {});
/// Upper bound on h everywhere; within (1+ε) wherever some optimal split has
/// summand ratio inside [ε/4, 4/ε].
RealFunction close_conv(const RealFunction& f, const RealFunction& g, const Rational& eps,
                        const ApproxOptions& options = {});
/// Strongly polynomial (1+ε)-approximation: min of distant_conv and close_conv.
RealFunction approx_minsum_strong(const RealFunction& f, const RealFunction& g, const Rational& eps,
                                  const ApproxOptions& options = {});

/// (1−ε)-approximate max-sum convolution; the infinity marker means −∞.
RealFunction approx_maxsum(const RealFunction& f, const RealFunction& g, const Rational& eps,
                           const ApproxOptions& options = {});

}  // namespace tropconv
