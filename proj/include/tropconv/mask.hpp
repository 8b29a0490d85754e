#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace tropconv {

/// Subset of [n] as a bitmask: bit i set <=> element i+1 is in the set.
using Mask = std::uint32_t;

/// Largest supported lattice order (dense tables of 2^n entries).
inline constexpr int kMaxOrder = 30;

constexpr std::size_t lattice_size(int n) { return std::size_t{1} << n; }

constexpr Mask full_mask(int n) { return static_cast<Mask>(lattice_size(n) - 1); }

constexpr int cardinality(Mask m) { return std::popcount(m); }

constexpr bool is_subset(Mask sub, Mask super) { return (sub & ~super) == 0; }

/// Calls fn(t) for every t ⊆ s, starting with s itself and ending with ∅.
template <class Fn>
constexpr void for_each_submask(Mask s, Fn&& fn) {
  Mask t = s;
  while (true) {
    fn(t);
    if (t == 0) break;
    t = (t - 1) & s;
  }
}

}  // namespace tropconv
