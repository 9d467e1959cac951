#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "udb/homog_theta.hpp"

using namespace udb;

namespace {

// alpha by scanning all 2^n vertex subsets.
std::uint64_t alpha_by_subsets(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      if (mask >> u & 1)
        for (std::size_t v = u + 1; v < n; ++v)
          if ((mask >> v & 1) && g.adjacent(u, v)) {
            ok = false;
            break;
          }
    if (ok) best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(__builtin_popcountll(mask)));
  }
  return best;
}

double odd_cycle_theta(int n) {
  const double c = std::cos(std::numbers::pi / n);
  return n * c / (1.0 + c);
}

}  // namespace

TEST_CASE("cayley graph arithmetic") {
  const AbelianCayleyGraph g({4, 6}, {{1, 0}, {0, 2}});
  CHECK(g.order() == 24);
  CHECK(g.exponent() == 12);
  CHECK(g.connection().size() == 4);
  for (std::size_t x = 0; x < g.order(); ++x) {
    CHECK(g.index(g.element(x)) == x);
    CHECK(g.add(x, g.negate(x)) == 0);
    CHECK(g.in_connection(x) == g.in_connection(g.negate(x)));
  }
  CHECK(g.index({-1, 7}) == g.index({3, 1}));
  CHECK(std::abs(g.pairing(g.index({1, 1}), g.index({1, 1})) - (0.25 + 1.0 / 6.0)) < 1e-15);
  CHECK_THROWS_AS(AbelianCayleyGraph::circulant(5, {0}), std::invalid_argument);
  CHECK_THROWS_AS(AbelianCayleyGraph::circulant(5, {5}), std::invalid_argument);
  CHECK_THROWS_AS(AbelianCayleyGraph({1000, 1000}, {}), std::invalid_argument);
  CHECK_THROWS_AS(g.index({1}), std::invalid_argument);
}

TEST_CASE("theta of standard Cayley graphs") {
  CHECK(std::abs(theta_cayley(AbelianCayleyGraph::circulant(5, {1})).value - std::sqrt(5.0)) < 1e-9);
  for (int n = 7; n <= 21; n += 2)
    CHECK(std::abs(theta_cayley(AbelianCayleyGraph::circulant(n, {1})).value - odd_cycle_theta(n)) < 1e-9);
  CHECK(std::abs(theta_cayley(AbelianCayleyGraph::circulant(9, {1, 2, 3, 4})).value - 1.0) < 1e-12);
  CHECK(std::abs(theta_cayley(AbelianCayleyGraph({3, 4}, {})).value - 12.0) < 1e-9);
  // the 5-cube is bipartite and vertex transitive: theta = 16
  const AbelianCayleyGraph cube({2, 2, 2, 2, 2}, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0},
                                                   {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
  CHECK(std::abs(theta_cayley(cube).value - 16.0) < 1e-9);
  // Paley graph on 13 vertices is self-complementary: theta = sqrt(13)
  CHECK(std::abs(theta_cayley(AbelianCayleyGraph::circulant(13, {1, 3, 4})).value - std::sqrt(13.0)) < 1e-9);
}

TEST_CASE("strengthened theta on the 5-cycle") {
  const auto c5 = AbelianCayleyGraph::circulant(5, {1});
  const double plain = theta_cayley(c5).value;
  CHECK(std::abs(theta_cayley_strengthened(c5, {{0}, 1}).value - plain) < 1e-9);
  // the path 0-1-2 does not bind: 1 + f(2) = (1 + sqrt 5)/2 < 2
  CHECK(std::abs(theta_cayley_strengthened(c5, {{0, 1, 2}, 2}).value - plain) < 1e-9);
  // {0, 2, 3} induces an edge plus a vertex, alpha 2, and forces 1 + 2 f(2) <= 2
  const double s = theta_cayley_strengthened(c5, {{0, 2, 3}, 2}).value;
  CHECK(s < plain - 1e-3);
  CHECK(std::abs(s - 2.0) < 1e-9);
  CHECK_THROWS_AS(theta_cayley_strengthened(c5, {{}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(theta_cayley_strengthened(c5, {{7}, 1}), std::invalid_argument);
}

TEST_CASE("exhaustive alpha against subset scan") {
  const auto g = AbelianCayleyGraph::circulant(13, {1, 5});
  CHECK(alpha_exhaustive(g.adjacency()) == alpha_by_subsets(g.adjacency()));
  CHECK(alpha_exhaustive(g.adjacency()) == 4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 13);
    AdjacencyMatrix a(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) a.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    CHECK(alpha_exhaustive(a) == alpha_by_subsets(a));
  }
}

TEST_CASE("ratio inequality") {
  const auto c5 = AbelianCayleyGraph::circulant(5, {1});
  const RatioCheck r = ratio_inequality_check(c5, {0, 1, 2});
  CHECK(r.alpha_graph == 2);
  CHECK(r.alpha_subgraph == 2);
  CHECK(r.holds);
  const RatioCheck all = ratio_inequality_check(c5, {0, 1, 2, 3, 4});
  CHECK(all.alpha_graph * all.subgraph_size == all.alpha_subgraph * all.order);
}

TEST_CASE("random circulants: sandwich, ratio inequality and positive definiteness") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 16);
    std::vector<int> s;
    for (int k = 1; k <= n / 2; ++k)
      if (rng() % 3 == 0) s.push_back(k);
    if (s.empty()) s.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(n / 2)));
    const auto g = AbelianCayleyGraph::circulant(n, s);
    std::vector<std::size_t> v;
    for (int x = 0; x < n; ++x)
      if (rng() % 2) v.push_back(static_cast<std::size_t>(x));
    if (v.empty()) v.push_back(0);
    CAPTURE(n);
    CAPTURE(trial);

    const AdjacencyMatrix adj = g.adjacency();
    const std::uint64_t alpha = alpha_by_subsets(adj);
    std::vector<std::uint32_t> v32(v.begin(), v.end());
    const std::uint64_t alpha_v = alpha_by_subsets(adj.induced(v32));

    const CayleyTheta plain = theta_cayley(g);
    const CayleyTheta strong = theta_cayley_strengthened(g, {v, alpha_v});
    CHECK(static_cast<double>(alpha) <= strong.value + 1e-9);
    CHECK(strong.value <= plain.value + 1e-9);
    CHECK(plain.min_fourier >= -1e-9);
    CHECK(strong.min_fourier >= -1e-9);
    CHECK(gram_min_eigenvalue(g, plain.f) >= -1e-8);
    CHECK(gram_min_eigenvalue(g, strong.f) >= -1e-8);

    const RatioCheck r = ratio_inequality_check(g, v);
    CHECK(r.alpha_graph == alpha);
    CHECK(r.alpha_subgraph == alpha_v);
    CHECK(r.holds);
  }
}

TEST_CASE("positive definiteness on a product group") {
  const AbelianCayleyGraph g({6, 10}, {{1, 0}, {0, 1}, {2, 3}});
  const CayleyTheta t = theta_cayley(g);
  CHECK(gram_min_eigenvalue(g, t.f) >= -1e-8);
  CHECK(t.f[0] == 1.0);
  for (std::size_t s : g.connection()) CHECK(t.f[s] == 0.0);
  CHECK(t.value >= static_cast<double>(alpha_exact(g.adjacency())) - 1e-9);
}
