#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tropconv/set_function.hpp"

namespace tropconv {

/// Rank used for infinite entries after rank replacement.
inline constexpr std::uint32_t kInfiniteRank = std::numeric_limits<std::uint32_t>::max();

/// Sorted distinct finite values with dense 0-based ranks. Rank replacement
/// preserves every comparison, so min/max computations can run on ranks.
template <class V>
class RankTable {
 public:
  RankTable() = default;

  template <class... Fs>
  explicit RankTable(const Fs&... fs) {
    (collect(fs), ...);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<V>& values() const { return values_; }

  /// Rank of a value present in the table; kInfiniteRank for infinity.
  std::uint32_t rank_of(const V& v) const {
    if (v.is_infinite()) return kInfiniteRank;
    const auto it = std::lower_bound(values_.begin(), values_.end(), v);
    return static_cast<std::uint32_t>(it - values_.begin());
  }

  V value_of(std::uint32_t r) const { return r == kInfiniteRank ? V::infinity() : values_[r]; }

  std::vector<std::uint32_t> ranks(const SetFunction<V>& f) const {
    std::vector<std::uint32_t> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = rank_of(f[static_cast<Mask>(i)]);
    return out;
  }

  SetFunction<V> unrank(int n, std::span<const std::uint32_t> r) const {
    SetFunction<V> out(n);
    for (std::size_t i = 0; i < r.size(); ++i) out[static_cast<Mask>(i)] = value_of(r[i]);
    return out;
  }

 private:
  void collect(const SetFunction<V>& f) {
    for (const V& v : f) {
      if (v.is_finite()) values_.push_back(v);
    }
  }

  std::vector<V> values_;
};

}  // namespace tropconv
