#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropconv/approx_float.hpp"
#include "tropconv/errors.hpp"
#include "tropconv/ext_int.hpp"
#include "tropconv/mask.hpp"

namespace tropconv {

/// Dense table of 2^n values indexed by subset bitmask.
template <class V>
class SetFunction {
 public:
  using value_type = V;

  SetFunction() : values_(1) {}
  explicit SetFunction(int n, V fill = V{}) : n_(checked_order(n)), values_(lattice_size(n), fill) {}
  SetFunction(int n, std::vector<V> values) : n_(checked_order(n)), values_(std::move(values)) {
    if (values_.size() != lattice_size(n)) {
      throw DimensionError("set function of order " + std::to_string(n) + " needs " +
                           std::to_string(lattice_size(n)) + " values, got " + std::to_string(values_.size()));
    }
  }

  int order() const { return n_; }
  std::size_t size() const { return values_.size(); }

  V& operator[](Mask m) { return values_[m]; }
  const V& operator[](Mask m) const { return values_[m]; }

  std::span<V> values() { return values_; }
  std::span<const V> values() const { return values_; }
  V* data() { return values_.data(); }
  const V* data() const { return values_.data(); }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  static int checked_order(int n) {
    if (n < 0 || n > kMaxOrder) {
      throw DimensionError("lattice order must lie in [0, " + std::to_string(kMaxOrder) + "], got " +
                           std::to_string(n));
    }
    return n;
  }

  int n_ = 0;
  std::vector<V> values_;
};

using IntFunction = SetFunction<ExtInt>;
using RealFunction = SetFunction<ApproxFloat>;
/// Residues modulo 2^64.
using RingFunction = SetFunction<std::uint64_t>;
using BoolFunction = SetFunction<std::uint8_t>;

template <class A, class B>
void require_same_order(const SetFunction<A>& f, const SetFunction<B>& g, const char* where) {
  if (f.order() != g.order()) {
    throw DimensionError(std::string(where) + ": orders differ (" + std::to_string(f.order()) + " vs " +
                         std::to_string(g.order()) + ")");
  }
}

inline ApproxFloat to_real(ExtInt v) {
  return v.is_infinite() ? ApproxFloat::infinity() : ApproxFloat::from_uint(v.value());
}

inline RealFunction to_real(const IntFunction& f) {
  RealFunction r(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) r[static_cast<Mask>(i)] = to_real(f[static_cast<Mask>(i)]);
  return r;
}

/// Throws DomainError if some finite value is not an integer below 2^64 - 1.
IntFunction to_int(const RealFunction& f);

/// Largest finite value, or nullopt when every entry is infinite.
template <class V>
std::optional<V> max_finite(const SetFunction<V>& f) {
  std::optional<V> best;
  for (const V& v : f) {
    if (v.is_finite() && (!best || *best < v)) best = v;
  }
  return best;
}

}  // namespace tropconv
