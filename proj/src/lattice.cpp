#include "tropconv/lattice.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "tropconv/kernels.hpp"
#include "tropconv/semiring.hpp"

namespace tropconv {

namespace {

using u128 = unsigned __int128;

u128 table_sum(const RingFunction& f) {
  u128 s = 0;
  for (std::uint64_t v : f) s += v;
  return s;
}

constexpr u128 kWord = u128{1} << 64;

// Finite values as small integers; kAbsent marks ∞.
constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint32_t> bounded_values(const IntFunction& f, std::int64_t M, const char* where) {
  std::vector<std::uint32_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ExtInt v = f[static_cast<Mask>(i)];
    if (v.is_infinite()) {
      out[i] = kAbsent;
    } else if (v.value() > static_cast<std::uint64_t>(M)) {
      throw DomainError(std::string(where) + ": value " + v.to_string() + " at index " + std::to_string(i) +
                        " exceeds the bound M = " + std::to_string(M));
    } else {
      out[i] = static_cast<std::uint32_t>(v.value());
    }
  }
  return out;
}

std::size_t count_finite(const std::vector<std::uint32_t>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](std::uint32_t x) { return x != kAbsent; }));
}

// Coefficient tables [rank][degree][mask] of the monomial encoding x^{f(T)} at
// rank |T|, zeta-transformed per (rank, degree) row. Counts are at most 2^n, so
// 32-bit wrapping arithmetic recovers them exactly.
std::vector<std::uint32_t> encode_polynomial(const std::vector<std::uint32_t>& vals, int n, std::size_t width,
                                             Exec exec) {
  const std::size_t size = lattice_size(n);
  std::vector<std::uint32_t> t((n + 1) * width * size, 0);
  for (std::size_t m = 0; m < size; ++m) {
    if (vals[m] == kAbsent) continue;
    const auto r = static_cast<std::size_t>(cardinality(static_cast<Mask>(m)));
    t[(r * width + vals[m]) * size + m] = 1;
  }
  for (std::size_t row = 0; row < (n + 1) * width; ++row) zeta_inplace(t.data() + row * size, n, exec);
  return t;
}

template <bool Minimize>
IntFunction polynomial_route(const std::vector<std::uint32_t>& fv, const std::vector<std::uint32_t>& gv, int n,
                             std::uint64_t M, Exec exec) {
  const std::size_t size = lattice_size(n);
  const std::size_t in_width = M + 1;
  const std::size_t out_width = 2 * M + 1;
  const auto F = encode_polynomial(fv, n, in_width, exec);
  const auto G = encode_polynomial(gv, n, in_width, exec);
  std::vector<std::uint32_t> acc(out_width * size);
  std::vector<std::uint64_t> deg(size, ExtInt::kInfRaw);
  const bool par = detail::run_parallel(exec, size);
  const auto isize = static_cast<std::int64_t>(size);
  for (int r = 0; r <= n; ++r) {
    std::fill(acc.begin(), acc.end(), 0U);
    for (int i = 0; i <= r; ++i) {
      for (std::size_t a = 0; a < in_width; ++a) {
        const std::uint32_t* fa = F.data() + (static_cast<std::size_t>(i) * in_width + a) * size;
        for (std::size_t b = 0; b < in_width; ++b) {
          const std::uint32_t* gb = G.data() + (static_cast<std::size_t>(r - i) * in_width + b) * size;
          std::uint32_t* out = acc.data() + (a + b) * size;
#pragma omp parallel for simd schedule(static) if (par)
          for (std::int64_t m = 0; m < isize; ++m) out[m] += fa[m] * gb[m];
        }
      }
    }
    for (std::size_t e = 0; e < out_width; ++e) moebius_inplace(acc.data() + e * size, n, exec);
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t m = 0; m < isize; ++m) {
      if (cardinality(static_cast<Mask>(m)) != r) continue;
      for (std::size_t k = 0; k < out_width; ++k) {
        const std::size_t e = Minimize ? k : out_width - 1 - k;
        if (acc[e * size + m] != 0) {
          deg[m] = e;
          break;
        }
      }
    }
  }
  IntFunction h(n, ExtInt::infinity());
  for (std::size_t m = 0; m < size; ++m) {
    if (deg[m] != ExtInt::kInfRaw) h[static_cast<Mask>(m)] = ExtInt(deg[m]);
  }
  return h;
}

template <bool Minimize>
IntFunction sparse_route(const std::vector<std::uint32_t>& fv, const std::vector<std::uint32_t>& gv, int n) {
  std::vector<std::pair<Mask, std::uint32_t>> a, b;
  for (std::size_t m = 0; m < fv.size(); ++m) {
    if (fv[m] != kAbsent) a.emplace_back(static_cast<Mask>(m), fv[m]);
    if (gv[m] != kAbsent) b.emplace_back(static_cast<Mask>(m), gv[m]);
  }
  std::vector<std::uint64_t> best(lattice_size(n), ExtInt::kInfRaw);
  for (const auto& [ma, va] : a) {
    for (const auto& [mb, vb] : b) {
      if ((ma & mb) != 0) continue;
      const std::uint64_t s = std::uint64_t{va} + vb;
      std::uint64_t& slot = best[ma | mb];
      if (slot == ExtInt::kInfRaw || (Minimize ? s < slot : s > slot)) slot = s;
    }
  }
  IntFunction h(n, ExtInt::infinity());
  for (std::size_t m = 0; m < best.size(); ++m) {
    if (best[m] != ExtInt::kInfRaw) h[static_cast<Mask>(m)] = ExtInt(best[m]);
  }
  return h;
}

template <bool Minimize>
IntFunction bounded_convolution(const IntFunction& f, const IntFunction& g, std::int64_t M, BoundedStrategy strategy,
                                Exec exec, const char* where) {
  require_same_order(f, g, where);
  if (M < 0) throw DomainError(std::string(where) + ": bound M must be nonnegative");
  if (static_cast<std::uint64_t>(M) >= kAbsent / 2) throw DomainError(std::string(where) + ": bound M too large");
  const auto fv = bounded_values(f, M, where);
  const auto gv = bounded_values(g, M, where);
  const int n = f.order();
  if (strategy == BoundedStrategy::automatic) {
    strategy = choose_bounded_strategy(bounded_cost(n, static_cast<std::uint64_t>(M), count_finite(fv), count_finite(gv)));
  }
  switch (strategy) {
    case BoundedStrategy::polynomial: {
      const double cells = static_cast<double>(n + 1) * static_cast<double>(M + 1) * static_cast<double>(lattice_size(n));
      if (cells > static_cast<double>(std::size_t{1} << 28)) {
        throw DomainError(std::string(where) + ": polynomial route would need too much memory for this n and M");
      }
      return polynomial_route<Minimize>(fv, gv, n, static_cast<std::uint64_t>(M), exec);
    }
    case BoundedStrategy::sparse:
      return sparse_route<Minimize>(fv, gv, n);
    case BoundedStrategy::enumeration:
    case BoundedStrategy::automatic:
      break;
  }
  if constexpr (Minimize) return naive_convolution<MinPlus>(f, g, exec);
  else return naive_convolution<MaxPlus>(f, g, exec);
}

}  // namespace

RingFunction zeta_transform(const RingFunction& f, Exec exec) {
  if (table_sum(f) >= kWord) throw OverflowError("zeta_transform: subset sums may exceed 64 bits");
  RingFunction r = f;
  zeta_inplace(r.data(), r.order(), exec);
  return r;
}

RingFunction moebius_transform(const RingFunction& f, Exec exec) {
  RingFunction r = f;
  moebius_inplace(r.data(), r.order(), exec);
  return r;
}

RingFunction fast_sumproduct_convolution(const RingFunction& f, const RingFunction& g, Exec exec) {
  require_same_order(f, g, "fast_sumproduct_convolution");
  const u128 sf = table_sum(f), sg = table_sum(g);
  if (sf != 0 && sg != 0 && (sf >= kWord || sg >= kWord || sf * sg >= kWord)) {
    throw OverflowError("fast_sumproduct_convolution: outputs may exceed 64 bits");
  }
  RingFunction h(f.order());
  RankedConvolver<std::uint64_t> conv(f.order());
  conv.convolve(f.data(), g.data(), h.data(), exec);
  return h;
}

BoolFunction boolean_subset_convolution(const BoolFunction& a, const BoolFunction& b, Exec exec) {
  require_same_order(a, b, "boolean_subset_convolution");
  const std::size_t size = a.size();
  std::vector<std::uint32_t> x(size), y(size), z(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto m = static_cast<Mask>(i);
    if (a[m] > 1 || b[m] > 1) {
      throw DomainError("boolean_subset_convolution: non-boolean entry at index " + std::to_string(i));
    }
    x[i] = a[m];
    y[i] = b[m];
  }
  RankedConvolver<std::uint32_t> conv(a.order());
  conv.convolve(x.data(), y.data(), z.data(), exec);
  BoolFunction h(a.order());
  for (std::size_t i = 0; i < size; ++i) h[static_cast<Mask>(i)] = z[i] != 0;
  return h;
}

BoundedCost bounded_cost(int n, std::uint64_t M, std::size_t finite_f, std::size_t finite_g) {
  const double size = std::ldexp(1.0, n);
  const double w = static_cast<double>(M) + 1.0;
  BoundedCost c;
  c.polynomial = size * ((n + 1.0) * (n + 2.0) / 2.0 * w * w + n * (n + 1.0) * (4.0 * w));
  c.enumeration = std::pow(3.0, n);
  c.sparse = static_cast<double>(finite_f) * static_cast<double>(finite_g);
  return c;
}

BoundedStrategy choose_bounded_strategy(const BoundedCost& c) {
  if (c.sparse <= c.enumeration && c.sparse <= c.polynomial) return BoundedStrategy::sparse;
  if (c.polynomial < c.enumeration) return BoundedStrategy::polynomial;
  return BoundedStrategy::enumeration;
}

IntFunction bounded_minsum_convolution(const IntFunction& f, const IntFunction& g, std::int64_t M,
                                       BoundedStrategy strategy, Exec exec) {
  return bounded_convolution<true>(f, g, M, strategy, exec, "bounded_minsum_convolution");
}

IntFunction bounded_maxsum_convolution(const IntFunction& f, const IntFunction& g, std::int64_t M,
                                       BoundedStrategy strategy, Exec exec) {
  return bounded_convolution<false>(f, g, M, strategy, exec, "bounded_maxsum_convolution");
}

IntFunction to_int(const RealFunction& f) {
  IntFunction r(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ApproxFloat& v = f[static_cast<Mask>(i)];
    if (v.is_infinite()) {
      r[static_cast<Mask>(i)] = ExtInt::infinity();
      continue;
    }
    const auto u = v.to_uint();
    if (!u || *u == ExtInt::kInfRaw) {
      throw DomainError("value " + v.to_string() + " at index " + std::to_string(i) + " is not a 64-bit integer");
    }
    r[static_cast<Mask>(i)] = ExtInt(*u);
  }
  return r;
}

void configure_threads_from_env() {
  if (const char* s = std::getenv("TROPCONV_THREADS")) {
    const int t = std::atoi(s);
    if (t > 0) omp_set_num_threads(t);
  }
}

}  // namespace tropconv
