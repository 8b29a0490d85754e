#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tropconv/exec.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// One entry of the merged sorted list of f- and g-values.
struct ChunkEntry {
  std::uint32_t rank;  // kInfiniteRank for ∞
  std::uint8_t origin;  // 0 = f, 1 = g
  Mask mask;
};

/// All 2·2^n entries of f and g sorted by (rank, origin, mask), cut into
/// consecutive chunks of chunk_size entries. Infinite entries sort last.
struct ChunkPlan {
  std::vector<ChunkEntry> entries;
  std::size_t chunk_size = 1;
  std::size_t finite_count = 0;

  std::size_t chunk_count() const { return (entries.size() + chunk_size - 1) / chunk_size; }
  std::span<const ChunkEntry> chunk(std::size_t i) const;
};

/// ⌈√(2^{n+1})⌉.
std::size_t default_chunk_size(int n);

ChunkPlan make_chunk_plan(std::span<const std::uint32_t> f_ranks, std::span<const std::uint32_t> g_ranks,
                          std::size_t chunk_size);

struct MinMaxStats {
  std::size_t chunk_size = 0;
  std::size_t chunks_processed = 0;
  std::size_t boolean_convolutions = 0;
  std::uint64_t comparisons = 0;
  /// Largest number of local-scan comparisons spent on one set.
  std::uint64_t max_comparisons_per_set = 0;
  /// Number of times each set was finalized (0 or 1).
  std::vector<std::uint8_t> resolutions;
};

struct MinMaxOptions {
  /// 0 selects default_chunk_size(n).
  std::size_t chunk_size = 0;
  MinMaxStats* stats = nullptr;
  /// Stop sweeping once every set is resolved. Disable to time the full sweep.
  bool stop_when_resolved = true;
  Exec exec = Exec::parallel;
};

/// Exact min-max convolution on rank tables (kInfiniteRank = ∞).
std::vector<std::uint32_t> minmax_convolution_ranks(int n, std::span<const std::uint32_t> f_ranks,
                                                    std::span<const std::uint32_t> g_ranks,
                                                    const MinMaxOptions& options = {});

/// h(S) = min_{T⊆S} max{f(T), g(S\T)} via sorted chunks and boolean subset
/// convolutions, Õ(2^{3n/2}).
IntFunction minmax_convolution(const IntFunction& f, const IntFunction& g, const MinMaxOptions& options = {});
RealFunction minmax_convolution(const RealFunction& f, const RealFunction& g, const MinMaxOptions& options = {});

}  // namespace tropconv
