#include "tropconv/applications.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "tropconv/lattice.hpp"
#include "tropconv/semiring.hpp"

namespace tropconv {

Graph::Graph(int n, int colors) : n_(n), colors_(colors) {
  if (n < 0 || n > kMaxVertices) throw DomainError("graph: vertex count must lie in [0, 22]");
  if (colors < 1) throw DomainError("graph: need at least one color");
  adjacency_.assign(n, 0);
  costs_.assign(static_cast<std::size_t>(n) * colors, 0);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("graph: edge endpoint out of range");
  if (u == v) throw DomainError("graph: self-loop at vertex " + std::to_string(u + 1));
  adjacency_[u] |= Mask{1} << v;
  adjacency_[v] |= Mask{1} << u;
}

void Graph::set_cost(int v, int color, std::int64_t c) {
  if (v < 0 || v >= n_ || color < 0 || color >= colors_) throw DomainError("graph: cost index out of range");
  costs_[static_cast<std::size_t>(v) * colors_ + color] = c;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

BoolFunction independent_set_table(const Graph& g) {
  BoolFunction is(g.vertices());
  is[0] = 1;
  for (std::size_t x = 1; x < is.size(); ++x) {
    const auto m = static_cast<Mask>(x);
    const int v = std::countr_zero(m);
    const Mask rest = m & (m - 1);
    is[m] = is[rest] && (g.neighbors(v) & rest) == 0;
  }
  return is;
}

IntFunction color_cost_function(const Graph& g, int color, std::int64_t shift) {
  if (color < 0 || color >= g.colors()) throw DomainError("color_cost_function: color out of range");
  const BoolFunction is = independent_set_table(g);
  for (int v = 0; v < g.vertices(); ++v) {
    if (g.cost(v, color) + shift < 0) throw DomainError("color_cost_function: negative cost; shift costs first");
  }
  std::vector<std::uint64_t> sum(is.size(), 0);
  IntFunction s(g.vertices(), ExtInt::infinity());
  s[0] = ExtInt(0);
  for (std::size_t x = 1; x < is.size(); ++x) {
    const auto m = static_cast<Mask>(x);
    const int v = std::countr_zero(m);
    sum[x] = sum[m & (m - 1)] + static_cast<std::uint64_t>(g.cost(v, color) + shift);
    if (is[m]) s[m] = ExtInt(sum[x]);
  }
  return s;
}

namespace {

void require_k(const Graph& g, int k) {
  if (k < 1) throw DomainError("k-coloring: k must be at least 1");
  if (k > g.colors()) throw DomainError("k-coloring: cost table has only " + std::to_string(g.colors()) + " colors");
}

std::uint64_t max_finite_value(const IntFunction& f) {
  std::uint64_t m = 0;
  for (ExtInt v : f) {
    if (v.is_finite()) m = std::max(m, v.value());
  }
  return m;
}

}  // namespace

std::optional<std::int64_t> kcoloring_cost_exact(const Graph& g, int k, std::vector<int>* witness) {
  require_k(g, k);
  std::int64_t shift = 0;
  for (int v = 0; v < g.vertices(); ++v) {
    for (int i = 0; i < k; ++i) shift = std::max(shift, -g.cost(v, i));
  }
  std::vector<IntFunction> s;
  for (int i = 0; i < k; ++i) s.push_back(color_cost_function(g, i, shift));
  // tables[i] = s_i ⋆ (s_{i+1} ⋆ (… ⋆ s_{k−1}))
  std::vector<IntFunction> tables(k);
  tables[k - 1] = s[k - 1];
  for (int i = k - 2; i >= 0; --i) {
    const auto bound = static_cast<std::int64_t>(std::max(max_finite_value(s[i]), max_finite_value(tables[i + 1])));
    tables[i] = bounded_minsum_convolution(s[i], tables[i + 1], bound);
  }
  const Mask all = full_mask(g.vertices());
  const ExtInt best = tables[0][all];
  if (best.is_infinite()) return std::nullopt;
  if (witness) {
    witness->assign(g.vertices(), k - 1);
    Mask rest = all;
    for (int i = 0; i + 1 < k; ++i) {
      const ExtInt target = tables[i][rest];
      Mask chosen = 0;
      bool found = false;
      for_each_submask(rest, [&](Mask t) {
        if (!found && s[i][t] + tables[i + 1][rest ^ t] == target) {
          chosen = t;
          found = true;
        }
      });
      for (int v = 0; v < g.vertices(); ++v) {
        if ((chosen >> v) & 1U) (*witness)[v] = i;
      }
      rest ^= chosen;
    }
  }
  return static_cast<std::int64_t>(best.value()) - shift * g.vertices();
}

ApproxFloat kcoloring_cost_approx(const Graph& g, int k, const Rational& eps, const ApproxOptions& options) {
  require_k(g, k);
  require_epsilon(eps);
  for (int v = 0; v < g.vertices(); ++v) {
    for (int i = 0; i < k; ++i) {
      if (g.cost(v, i) < 0) {
        throw DomainError("approximate k-coloring needs nonnegative costs (vertex " + std::to_string(v + 1) + ")");
      }
    }
  }
  const Mask all = full_mask(g.vertices());
  if (k == 1) return to_real(color_cost_function(g, 0)[all]);
  const Rational delta = root_step(eps, static_cast<unsigned>(k - 1));
  RealFunction acc = to_real(color_cost_function(g, k - 1));
  for (int i = k - 2; i >= 0; --i) acc = approx_minsum_strong(to_real(color_cost_function(g, i)), acc, delta, options);
  return acc[all];
}

ColoredDag::ColoredDag(int k, std::vector<int> colors) : k_(k), colors_(std::move(colors)) {
  if (k < 1 || k > kMaxColors) throw DomainError("colored DAG: color count must lie in [1, 20]");
  for (int c : colors_) {
    if (c < 0 || c >= k) throw DomainError("colored DAG: vertex color out of range");
  }
}

void ColoredDag::add_edge(int from, int to, std::uint64_t weight) {
  const int n = vertices();
  if (from < 0 || to < 0 || from >= n || to >= n) throw DomainError("colored DAG: edge endpoint out of range");
  if (from == to) throw DomainError("colored DAG: self-loop closes a cycle");
  // reject if `from` is reachable from `to`
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack{to};
  seen[to] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == from) throw DomainError("colored DAG: edge " + std::to_string(from + 1) + "->" + std::to_string(to + 1) + " closes a cycle");
    for (const Edge& e : edges_) {
      if (e.from == u && !seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  edges_.push_back({from, to, weight});
}

namespace {

// W[v][X] over the lattice of colors other than c(v): W(v, X ∪ {c(v)}).
// Ordinal X ⊆ [k−1] is expanded to a color set by inserting c(v).
Mask expand(Mask x, int c) {
  const Mask low = x & ((Mask{1} << c) - 1);
  return low | ((x ^ low) << 1) | (Mask{1} << c);
}

Mask compress(Mask s, int c) {
  const Mask low = s & ((Mask{1} << c) - 1);
  const Mask high = (s >> (c + 1)) << c;
  return low | high;
}

// Runs the layer DP with a value type V supporting ∞ as "absent" and a merge
// operation on per-vertex tables restricted to the previous layers.
template <class V, class AddWeight, class Merge>
V colorful_dp(const ColoredDag& d, AddWeight add_weight, Merge merge, V zero) {
  const int n = d.vertices(), k = d.colors();
  const int order = k - 1;
  const std::size_t size = lattice_size(order);
  std::vector<SetFunction<V>> W(n, SetFunction<V>(order, V::infinity()));
  V best = n > 0 ? zero : V::infinity();
  for (int v = 0; v < n; ++v) W[v][0] = zero;
  std::vector<std::vector<std::size_t>> layer(order + 1);
  for (std::size_t x = 0; x < size; ++x) layer[cardinality(static_cast<Mask>(x))].push_back(x);
  const auto better = [](const V& cand, const V& cur) { return cur.is_infinite() || (!cand.is_infinite() && cur < cand); };
  for (int L = 1; L <= order; ++L) {
    std::vector<SetFunction<V>> next = W;
    for (int v = 0; v < n; ++v) {
      const int cv = d.color(v);
      // merges of two smaller trees rooted at v
      SetFunction<V> below(order, V::infinity());
      for (std::size_t x = 0; x < size; ++x) {
        if (cardinality(static_cast<Mask>(x)) < L) below[static_cast<Mask>(x)] = W[v][static_cast<Mask>(x)];
      }
      const SetFunction<V> merged = L >= 2 ? merge(below) : SetFunction<V>(order, V::infinity());
      for (std::size_t x : layer[L]) {
        V cur = merged[static_cast<Mask>(x)];
        const Mask colors = expand(static_cast<Mask>(x), cv);
        // one child u below v
        for (const auto& e : d.edges()) {
          if (e.from != v) continue;
          const int cu = d.color(e.to);
          if (!((colors >> cu) & 1U) || cu == cv) continue;
          const Mask child_colors = colors & ~(Mask{1} << cv);
          const V sub = W[e.to][compress(child_colors, cu)];
          if (sub.is_infinite()) continue;
          const V cand = add_weight(sub, e.weight);
          if (better(cand, cur)) cur = cand;
        }
        next[v][static_cast<Mask>(x)] = cur;
        if (better(cur, best)) best = cur;
      }
    }
    W = std::move(next);
  }
  return best;
}

}  // namespace

std::uint64_t max_colorful_subtree_exact(const ColoredDag& d) {
  const auto add = [](ExtInt a, std::uint64_t w) { return a + ExtInt(w); };
  const auto merge = [](const IntFunction& f) {
    return bounded_maxsum_convolution(f, f, static_cast<std::int64_t>(max_finite_value(f)));
  };
  const ExtInt best = colorful_dp<ExtInt>(d, add, merge, ExtInt(0));
  return best.is_infinite() ? 0 : best.value();
}

ApproxFloat max_colorful_subtree(const ColoredDag& d, const Rational& eps, const ApproxOptions& options) {
  require_epsilon(eps);
  const std::uint64_t denom = static_cast<std::uint64_t>(d.colors()) * std::max(1, d.vertices());
  const Rational delta(eps.num(), eps.den() * denom);
  const auto add = [](const ApproxFloat& a, std::uint64_t w) { return a.add(ApproxFloat::from_uint(w), Rounding::down); };
  const auto merge = [&](const RealFunction& f) { return approx_maxsum(f, f, delta, options); };
  const ApproxFloat best = colorful_dp<ApproxFloat>(d, add, merge, ApproxFloat::zero());
  return best.is_infinite() ? ApproxFloat::zero() : best;
}

}  // namespace tropconv
