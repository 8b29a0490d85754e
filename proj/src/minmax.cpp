#include "tropconv/minmax.hpp"

#include <algorithm>
#include <cmath>

#include "tropconv/kernels.hpp"
#include "tropconv/rank_table.hpp"

namespace tropconv {

std::span<const ChunkEntry> ChunkPlan::chunk(std::size_t i) const {
  const std::size_t begin = i * chunk_size;
  const std::size_t end = std::min(entries.size(), begin + chunk_size);
  return std::span<const ChunkEntry>(entries).subspan(begin, end - begin);
}

std::size_t default_chunk_size(int n) {
  const double total = std::ldexp(1.0, n + 1);
  auto c = static_cast<std::size_t>(std::ceil(std::sqrt(total)));
  while (c * c < static_cast<std::size_t>(total)) ++c;
  return std::max<std::size_t>(c, 1);
}

ChunkPlan make_chunk_plan(std::span<const std::uint32_t> f_ranks, std::span<const std::uint32_t> g_ranks,
                          std::size_t chunk_size) {
  if (f_ranks.size() != g_ranks.size()) throw DimensionError("make_chunk_plan: tables differ in length");
  if (chunk_size == 0) throw DomainError("make_chunk_plan: chunk size must be positive");
  ChunkPlan plan;
  plan.chunk_size = chunk_size;
  plan.entries.reserve(2 * f_ranks.size());
  for (std::size_t m = 0; m < f_ranks.size(); ++m) {
    plan.entries.push_back({f_ranks[m], 0, static_cast<Mask>(m)});
    plan.entries.push_back({g_ranks[m], 1, static_cast<Mask>(m)});
  }
  std::sort(plan.entries.begin(), plan.entries.end(), [](const ChunkEntry& a, const ChunkEntry& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.origin != b.origin) return a.origin < b.origin;
    return a.mask < b.mask;
  });
  plan.finite_count = static_cast<std::size_t>(std::count_if(
      plan.entries.begin(), plan.entries.end(), [](const ChunkEntry& e) { return e.rank != kInfiniteRank; }));
  return plan;
}

std::vector<std::uint32_t> minmax_convolution_ranks(int n, std::span<const std::uint32_t> fr,
                                                    std::span<const std::uint32_t> gr,
                                                    const MinMaxOptions& options) {
  const std::size_t size = lattice_size(n);
  if (fr.size() != size || gr.size() != size) throw DimensionError("minmax_convolution: table length is not 2^n");
  const std::size_t chunk_size = options.chunk_size ? options.chunk_size : default_chunk_size(n);
  const ChunkPlan plan = make_chunk_plan(fr, gr, chunk_size);

  // Indicators are defined by position in the sorted list, not by value: a
  // threshold on values would admit tied entries from later chunks.
  std::vector<std::uint32_t> pos_f(size), pos_g(size);
  for (std::size_t p = 0; p < plan.entries.size(); ++p) {
    const ChunkEntry& e = plan.entries[p];
    (e.origin == 0 ? pos_f : pos_g)[e.mask] = static_cast<std::uint32_t>(p);
  }

  std::vector<std::uint32_t> h(size, kInfiniteRank);
  std::vector<std::uint8_t> resolved(size, 0);
  std::vector<std::uint32_t> a(size), b(size), c(size);
  RankedConvolver<std::uint32_t> conv(n);
  std::size_t remaining = size;
  std::uint64_t comparisons = 0, max_per_set = 0;
  std::size_t processed = 0;
  const auto isize = static_cast<std::int64_t>(size);
  const bool par = detail::run_parallel(options.exec, size);

  for (std::size_t i = 0; i < plan.chunk_count(); ++i) {
    if (remaining == 0 && options.stop_when_resolved) break;
    const std::size_t end = std::min((i + 1) * chunk_size, plan.finite_count);
    if (i * chunk_size >= end) break;  // only infinite entries remain
    const std::span<const ChunkEntry> chunk = plan.chunk(i);
    ++processed;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t m = 0; m < isize; ++m) {
      a[m] = pos_f[m] < end;
      b[m] = pos_g[m] < end;
    }
    conv.convolve(a.data(), b.data(), c.data(), options.exec);
    std::size_t newly = 0;
#pragma omp parallel for schedule(dynamic, 64) if (par) reduction(+ : comparisons, newly) reduction(max : max_per_set)
    for (std::int64_t si = 0; si < isize; ++si) {
      if (resolved[si] || c[si] == 0) continue;
      const auto s = static_cast<Mask>(si);
      std::uint32_t best = kInfiniteRank;
      std::uint64_t local = 0;
      for (const ChunkEntry& e : chunk) {
        if (e.rank == kInfiniteRank || !is_subset(e.mask, s)) continue;
        const std::uint32_t other = e.origin == 0 ? gr[s ^ e.mask] : fr[s ^ e.mask];
        best = std::min(best, std::max(e.rank, other));
        ++local;
      }
      h[si] = best;
      resolved[si] = 1;
      comparisons += local;
      max_per_set = std::max(max_per_set, local);
      ++newly;
    }
    remaining -= newly;
  }

  if (options.stats) {
    MinMaxStats& st = *options.stats;
    st.chunk_size = chunk_size;
    st.chunks_processed = processed;
    st.boolean_convolutions = processed;
    st.comparisons = comparisons;
    st.max_comparisons_per_set = max_per_set;
    st.resolutions = std::move(resolved);
  }
  return h;
}

namespace {

template <class V>
SetFunction<V> minmax_by_rank(const SetFunction<V>& f, const SetFunction<V>& g, const MinMaxOptions& options) {
  require_same_order(f, g, "minmax_convolution");
  const RankTable<V> table(f, g);
  const auto fr = table.ranks(f), gr = table.ranks(g);
  const auto h = minmax_convolution_ranks(f.order(), fr, gr, options);
  return table.unrank(f.order(), h);
}

}  // namespace

IntFunction minmax_convolution(const IntFunction& f, const IntFunction& g, const MinMaxOptions& options) {
  return minmax_by_rank(f, g, options);
}

RealFunction minmax_convolution(const RealFunction& f, const RealFunction& g, const MinMaxOptions& options) {
  return minmax_by_rank(f, g, options);
}

}  // namespace tropconv
