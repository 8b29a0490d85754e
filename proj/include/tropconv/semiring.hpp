#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>

#include "tropconv/exec.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// (min, +) over ExtInt.
struct MinPlus {
  using value_type = ExtInt;
  static ExtInt zero() { return ExtInt::infinity(); }
  static ExtInt add(ExtInt a, ExtInt b) { return std::min(a, b); }
  static ExtInt mul(ExtInt a, ExtInt b) { return a + b; }
};

/// (max, +) over ExtInt; the infinity marker stands for −∞ (infeasible).
struct MaxPlus {
  using value_type = ExtInt;
  static ExtInt zero() { return ExtInt::infinity(); }
  static ExtInt add(ExtInt a, ExtInt b) {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    return std::max(a, b);
  }
  static ExtInt mul(ExtInt a, ExtInt b) { return a + b; }
};

/// (min, max) over any totally ordered value type with an infinity().
template <class V>
struct BasicMinMax {
  using value_type = V;
  static V zero() { return V::infinity(); }
  static V add(const V& a, const V& b) { return std::min(a, b); }
  static V mul(const V& a, const V& b) { return std::max(a, b); }
};
using MinMax = BasicMinMax<ExtInt>;

/// (+, ×) modulo 2^64.
struct SumProduct {
  using value_type = std::uint64_t;
  static std::uint64_t zero() { return 0; }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a + b; }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a * b; }
};

/// (or, and) over {0, 1}.
struct BoolOrAnd {
  using value_type = std::uint8_t;
  static std::uint8_t zero() { return 0; }
  static std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a | b; }
  static std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return a & b; }
};

/// h(S) = ⊕_{T⊆S} f(T) ⊗ g(S\T) by direct submask enumeration, 3^n products.
template <class Semiring>
SetFunction<typename Semiring::value_type> naive_convolution(const SetFunction<typename Semiring::value_type>& f,
                                                             const SetFunction<typename Semiring::value_type>& g,
                                                             Exec exec = Exec::parallel) {
  using V = typename Semiring::value_type;
  require_same_order(f, g, "naive_convolution");
  SetFunction<V> h(f.order());
  const auto size = static_cast<std::int64_t>(h.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel && size >= 256)
  for (std::int64_t i = 0; i < size; ++i) {
    try {
      const auto s = static_cast<Mask>(i);
      V acc = Semiring::zero();
      for_each_submask(s, [&](Mask t) { acc = Semiring::add(acc, Semiring::mul(f[t], g[s ^ t])); });
      h[s] = acc;
    } catch (...) {
#pragma omp critical(tropconv_naive_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return h;
}

}  // namespace tropconv
