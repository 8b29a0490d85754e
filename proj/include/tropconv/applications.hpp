#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropconv/approx.hpp"
#include "tropconv/rational.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// Undirected simple graph with a vertex × color cost table.
class Graph {
 public:
  static constexpr int kMaxVertices = 22;

  /// Throws DomainError unless 0 ≤ n ≤ 22 and colors ≥ 1.
  Graph(int n, int colors);

  int vertices() const { return n_; }
  int colors() const { return colors_; }
  Mask neighbors(int v) const { return adjacency_[v]; }
  std::int64_t cost(int v, int color) const { return costs_[static_cast<std::size_t>(v) * colors_ + color]; }

  /// 0-based endpoints; throws DomainError on self-loops or bad indices.
  void add_edge(int u, int v);
  void set_cost(int v, int color, std::int64_t c);
  bool has_edge(int u, int v) const { return (adjacency_[u] >> v) & 1U; }
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_;
  int colors_;
  std::vector<Mask> adjacency_;
  std::vector<std::int64_t> costs_;
};

/// 1 exactly on the independent sets of g.
BoolFunction independent_set_table(const Graph& g);

/// s_i(X) = Σ_{x∈X} (c(x, i) + shift) if X is independent, else ∞.
/// Throws DomainError if some shifted cost is negative.
IntFunction color_cost_function(const Graph& g, int color, std::int64_t shift = 0);

/// Minimum-cost coloring of all vertices with colors 0..k−1 (k ≤ g.colors()),
/// or nullopt when g is not k-colorable. Negative costs are allowed. With
/// `witness`, also returns one optimal color per vertex.
std::optional<std::int64_t> kcoloring_cost_exact(const Graph& g, int k, std::vector<int>* witness = nullptr);

/// (1+ε)-approximate minimum cost (∞ when not k-colorable). Costs must be
/// nonnegative. Chains approx_minsum_strong with per-step error δ chosen so
/// that (1+δ)^(k−1) ≤ 1+ε.
ApproxFloat kcoloring_cost_approx(const Graph& g, int k, const Rational& eps, const ApproxOptions& options = {});

/// Vertex-colored DAG with nonnegative integer edge weights.
class ColoredDag {
 public:
  static constexpr int kMaxColors = 20;

  /// colors[v] ∈ [0, k). Throws DomainError on bad sizes or colors.
  ColoredDag(int k, std::vector<int> colors);

  int vertices() const { return static_cast<int>(colors_.size()); }
  int colors() const { return k_; }
  int color(int v) const { return colors_[v]; }

  struct Edge {
    int from;
    int to;
    std::uint64_t weight;
  };
  const std::vector<Edge>& edges() const { return edges_; }

  /// Throws DomainError on bad endpoints or when the edge closes a cycle.
  void add_edge(int from, int to, std::uint64_t weight);

 private:
  int k_;
  std::vector<int> colors_;
  std::vector<Edge> edges_;
};

/// Maximum total weight of a colorful subtree (all vertices distinct colors,
/// edges directed away from the root). Exact layer DP.
std::uint64_t max_colorful_subtree_exact(const ColoredDag& d);

/// Value in [(1−ε)·OPT, OPT]; the merge step runs approx_maxsum with
/// δ = ε/(k·|V|).
ApproxFloat max_colorful_subtree(const ColoredDag& d, const Rational& eps, const ApproxOptions& options = {});

}  // namespace tropconv
