#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "tropconv/exec.hpp"
#include "tropconv/mask.hpp"

// Transform kernels over unsigned words. All arithmetic wraps modulo 2^w, so
// the parallel and serial loops give bitwise identical results.

namespace tropconv {

namespace detail {

inline bool run_parallel(Exec exec, std::size_t work) { return exec == Exec::parallel && work >= (std::size_t{1} << 12); }

}  // namespace detail

namespace detail {

template <class T, bool Inverse>
inline void step(T& hi, T lo) {
  if constexpr (Inverse) hi -= lo;
  else hi += lo;
}

// One pass per bit. The three lowest bits are done inside blocks of eight
// words; higher bits run contiguous inner loops the compiler vectorizes.
template <class T, bool Inverse>
void subset_sweep(T* a, int n, Exec exec) {
  const auto size = static_cast<std::int64_t>(lattice_size(n));
  const bool par = run_parallel(exec, static_cast<std::size_t>(size));
  int bit = 0;
  if (n >= 3) {
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t blk = 0; blk < size / 8; ++blk) {
      T* p = a + blk * 8;
      step<T, Inverse>(p[1], p[0]);
      step<T, Inverse>(p[3], p[2]);
      step<T, Inverse>(p[5], p[4]);
      step<T, Inverse>(p[7], p[6]);
      step<T, Inverse>(p[2], p[0]);
      step<T, Inverse>(p[3], p[1]);
      step<T, Inverse>(p[6], p[4]);
      step<T, Inverse>(p[7], p[5]);
      step<T, Inverse>(p[4], p[0]);
      step<T, Inverse>(p[5], p[1]);
      step<T, Inverse>(p[6], p[2]);
      step<T, Inverse>(p[7], p[3]);
    }
    bit = 3;
  }
  for (; bit < n; ++bit) {
    const std::int64_t half = std::int64_t{1} << bit;
    const std::int64_t blocks = size / (2 * half);
    if (blocks >= 16) {
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t b = 0; b < blocks; ++b) {
        T* lo = a + b * 2 * half;
        T* hi = lo + half;
#pragma omp simd
        for (std::int64_t j = 0; j < half; ++j) step<T, Inverse>(hi[j], lo[j]);
      }
    } else {
      for (std::int64_t b = 0; b < blocks; ++b) {
        T* lo = a + b * 2 * half;
        T* hi = lo + half;
#pragma omp parallel for simd schedule(static) if (par)
        for (std::int64_t j = 0; j < half; ++j) step<T, Inverse>(hi[j], lo[j]);
      }
    }
  }
}

}  // namespace detail

/// a[S] <- Σ_{T⊆S} a[T].
template <class T>
void zeta_inplace(T* a, int n, Exec exec) {
  detail::subset_sweep<T, false>(a, n, exec);
}

/// Inverse of zeta_inplace.
template <class T>
void moebius_inplace(T* a, int n, Exec exec) {
  detail::subset_sweep<T, true>(a, n, exec);
}

/// Disjoint-union (subset) convolution over the ring of w-bit words via
/// cardinality-ranked transforms. Buffers are kept between calls so repeated
/// convolutions of the same order do not reallocate.
template <class T>
class RankedConvolver {
 public:
  explicit RankedConvolver(int n) : n_(n), size_(lattice_size(n)) {
    fr_.resize((n + 1) * size_);
    gr_.resize((n + 1) * size_);
    acc_.resize(size_);
  }

  int order() const { return n_; }

  /// h[S] = Σ_{T⊆S} f[T] g[S\T] (mod 2^w). h may alias neither f nor g.
  void convolve(const T* f, const T* g, T* h, Exec exec) {
    load(f, fr_.data(), exec);
    load(g, gr_.data(), exec);
    const bool par = detail::run_parallel(exec, size_);
    const auto size = static_cast<std::int64_t>(size_);
    // Rank-polynomial product per mask; descending r lets row r of fr_ be
    // overwritten once no lower rank needs it.
    for (int r = n_; r >= 0; --r) {
      T* acc = acc_.data();
      std::fill(acc, acc + size_, T{0});
      for (int i = 0; i <= r; ++i) {
        const T* a = row(fr_, i);
        const T* b = row(gr_, r - i);
#pragma omp parallel for simd schedule(static) if (par)
        for (std::int64_t m = 0; m < size; ++m) acc[m] += a[m] * b[m];
      }
      std::copy(acc, acc + size_, row(fr_, r));
    }
    for (int r = 0; r <= n_; ++r) moebius_inplace(row(fr_, r), n_, exec);
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t m = 0; m < size; ++m) h[m] = row(fr_, cardinality(static_cast<Mask>(m)))[m];
  }

 private:
  T* row(std::vector<T>& v, int r) { return v.data() + static_cast<std::size_t>(r) * size_; }

  void load(const T* src, T* dst, Exec exec) {
    std::fill(dst, dst + (n_ + 1) * size_, T{0});
    for (std::size_t m = 0; m < size_; ++m) dst[cardinality(static_cast<Mask>(m)) * size_ + m] = src[m];
    for (int r = 0; r <= n_; ++r) zeta_inplace(dst + r * size_, n_, exec);
  }

  int n_;
  std::size_t size_;
  std::vector<T> fr_, gr_, acc_;
};

}  // namespace tropconv
