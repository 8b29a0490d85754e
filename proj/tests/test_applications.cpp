#include <doctest.h>

#include <random>

#include "app_oracles.hpp"
#include "test_support.hpp"
#include "tropconv/applications.hpp"
#include "tropconv/errors.hpp"
#include "tropconv/guarantee.hpp"

using namespace tropconv;
using namespace testing_support;

TEST_CASE("independent set table") {
  Graph g(3, 1);
  g.add_edge(0, 1);
  const BoolFunction is = independent_set_table(g);
  CHECK(is[0b000] == 1);
  CHECK(is[0b011] == 0);
  CHECK(is[0b101] == 1);
  CHECK(is[0b111] == 0);
}

TEST_CASE("color cost function") {
  Graph g(2, 2);
  g.add_edge(0, 1);
  g.set_cost(0, 1, 4);
  g.set_cost(1, 1, 7);
  const IntFunction s = color_cost_function(g, 1);
  CHECK(s[0b01] == ExtInt(4));
  CHECK(s[0b10] == ExtInt(7));
  CHECK(s[0b11].is_infinite());
  g.set_cost(0, 0, -3);
  CHECK_THROWS_AS(color_cost_function(g, 0), DomainError);
  CHECK(color_cost_function(g, 0, 3)[0b01] == ExtInt(0));
}

TEST_CASE("triangle colorings") {
  Graph g(3, 3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  for (int v = 0; v < 3; ++v) {
    for (int c = 0; c < 3; ++c) g.set_cost(v, c, 1);
  }
  CHECK(kcoloring_cost_exact(g, 3) == 3);
  CHECK_FALSE(kcoloring_cost_exact(g, 2).has_value());
  CHECK(kcoloring_cost_approx(g, 2, Rational(1, 10)).is_infinite());
  CHECK_THROWS_AS(kcoloring_cost_exact(g, 0), DomainError);
  CHECK_THROWS_AS(kcoloring_cost_exact(g, 4), DomainError);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(23, 1), DomainError);
  CHECK_THROWS_AS(Graph(3, 0), DomainError);
  Graph g(3, 1);
  CHECK_THROWS_AS(g.add_edge(1, 1), DomainError);
  CHECK_THROWS_AS(g.add_edge(0, 3), DomainError);
}

TEST_CASE("empty graph has cost zero") {
  Graph g(0, 2);
  CHECK(kcoloring_cost_exact(g, 2) == 0);
  CHECK(kcoloring_cost_approx(g, 2, Rational(1, 2)).is_zero());
}

TEST_CASE("exact k-coloring matches brute force, with witnesses") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    const int k = 1 + trial % 4;
    const Graph g = random_graph(rng, n, k, 0.4, -20, 50);
    std::vector<int> witness;
    const auto got = kcoloring_cost_exact(g, k, &witness);
    const auto want = brute_coloring(g, k);
    REQUIRE(got == want);
    if (got) {
      std::int64_t c = 0;
      for (int v = 0; v < n; ++v) {
        REQUIRE(witness[v] >= 0);
        REQUIRE(witness[v] < k);
        c += g.cost(v, witness[v]);
      }
      for (auto [u, v] : g.edges()) CHECK(witness[u] != witness[v]);
      CHECK(c == *got);
    }
  }
}

TEST_CASE("approximate k-coloring stays within 1+eps") {
  std::mt19937_64 rng(202);
  const Rational eps(1, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    const int k = 1 + trial % 4;
    const Graph g = random_graph(rng, n, k, 0.35, 0, 1000);
    const auto want = brute_coloring(g, k);
    const ApproxFloat got = kcoloring_cost_approx(g, k, eps);
    if (!want) {
      CHECK(got.is_infinite());
      continue;
    }
    const ApproxFloat exact = ApproxFloat::from_uint(static_cast<std::uint64_t>(*want));
    CHECK(exact <= got);
    CHECK(compare_scaled(got, eps.den(), exact, eps.den() + eps.num()) <= 0);
  }
  Graph neg(1, 1);
  neg.set_cost(0, 0, -1);
  CHECK_THROWS_AS(kcoloring_cost_approx(neg, 1, eps), DomainError);
}

TEST_CASE("colored DAG validation") {
  CHECK_THROWS_AS(ColoredDag(0, {}), DomainError);
  CHECK_THROWS_AS(ColoredDag(21, {}), DomainError);
  CHECK_THROWS_AS(ColoredDag(2, {0, 2}), DomainError);
  ColoredDag d(2, {0, 1, 0});
  d.add_edge(0, 1, 3);
  d.add_edge(1, 2, 1);
  CHECK_THROWS_AS(d.add_edge(2, 0, 5), DomainError);
  CHECK_THROWS_AS(d.add_edge(1, 1, 5), DomainError);
}

TEST_CASE("colorful subtree small cases") {
  ColoredDag single(1, {0});
  CHECK(max_colorful_subtree_exact(single) == 0);
  // path 0 -> 1 -> 2 with a repeated color at the end
  ColoredDag path(2, {0, 1, 0});
  path.add_edge(0, 1, 3);
  path.add_edge(1, 2, 10);
  CHECK(max_colorful_subtree_exact(path) == 10);
  // star with two distinct-colored children
  ColoredDag star(3, {0, 1, 2});
  star.add_edge(0, 1, 4);
  star.add_edge(0, 2, 5);
  CHECK(max_colorful_subtree_exact(star) == 9);
  CHECK(max_colorful_subtree(star, Rational(1, 10)) == ApproxFloat::from_uint(9));
}

TEST_CASE("colorful subtree matches brute force") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 9;
    const int k = 1 + trial % 5;
    const ColoredDag d = random_dag(rng, n, k, 0.4, 100);
    REQUIRE(max_colorful_subtree_exact(d) == brute_subtree(d));
  }
}

TEST_CASE("approximate colorful subtree stays within 1-eps") {
  std::mt19937_64 rng(404);
  const Rational eps(1, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 7;
    const int k = 2 + trial % 4;
    const ColoredDag d = random_dag(rng, n, k, 0.45, 1000);
    const std::uint64_t opt = brute_subtree(d);
    const ApproxFloat got = max_colorful_subtree(d, eps);
    const ApproxFloat exact = ApproxFloat::from_uint(opt);
    CHECK(got <= exact);
    CHECK(compare_scaled(got, eps.den(), exact, eps.den() - eps.num()) >= 0);
  }
}
