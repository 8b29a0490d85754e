#pragma once

#include <algorithm>
#include <optional>
#include <random>

#include "tropconv/applications.hpp"

namespace testing_support {

using namespace tropconv;

inline Graph random_graph(std::mt19937_64& rng, int n, int colors, double density, std::int64_t lo, std::int64_t hi) {
  Graph g(n, colors);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<std::int64_t> cost(lo, hi);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (edge(rng)) g.add_edge(u, v);
    }
    for (int c = 0; c < colors; ++c) g.set_cost(u, c, cost(rng));
  }
  return g;
}

// all k^n assignments
inline std::optional<std::int64_t> brute_coloring(const Graph& g, int k) {
  const int n = g.vertices();
  std::vector<int> col(n, 0);
  std::optional<std::int64_t> best;
  while (true) {
    bool proper = true;
    for (auto [u, v] : g.edges()) proper = proper && col[u] != col[v];
    if (proper) {
      std::int64_t c = 0;
      for (int v = 0; v < n; ++v) c += g.cost(v, col[v]);
      if (!best || c < *best) best = c;
    }
    int i = 0;
    while (i < n && ++col[i] == k) col[i++] = 0;
    if (i == n) break;
  }
  return best;
}

// Every colorful vertex set with a unique parentless vertex is a tree once each
// other vertex keeps its heaviest in-set parent.
inline std::uint64_t brute_subtree(const ColoredDag& d) {
  const int n = d.vertices();
  std::uint64_t best = 0;
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    Mask used = 0;
    bool colorful = true;
    for (int v = 0; v < n; ++v) {
      if (!((s >> v) & 1U)) continue;
      const Mask bit = Mask{1} << d.color(v);
      colorful = colorful && !(used & bit);
      used |= bit;
    }
    if (!colorful) continue;
    int roots = 0;
    std::uint64_t total = 0;
    for (int v = 0; v < n; ++v) {
      if (!((s >> v) & 1U)) continue;
      std::optional<std::uint64_t> in;
      for (const auto& e : d.edges()) {
        if (e.to == v && ((s >> e.from) & 1U) && (!in || *in < e.weight)) in = e.weight;
      }
      if (in) total += *in;
      else ++roots;
    }
    if (roots == 1) best = std::max(best, total);
  }
  return best;
}

inline ColoredDag random_dag(std::mt19937_64& rng, int n, int k, double density, std::uint64_t max_w) {
  std::uniform_int_distribution<int> color(0, k - 1);
  std::vector<int> colors(n);
  for (int& c : colors) c = color(rng);
  ColoredDag d(k, colors);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<std::uint64_t> w(0, max_w);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) d.add_edge(order[i], order[j], w(rng));
    }
  }
  return d;
}

}  // namespace testing_support
