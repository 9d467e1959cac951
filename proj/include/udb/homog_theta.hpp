#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "udb/independence.hpp"

namespace udb {

using GroupElement = std::vector<int>;

/// Cayley graph on Z_{N_1} x ... x Z_{N_d} with a symmetric connection set.
class AbelianCayleyGraph {
 public:
  /// The connection set is reduced mod the orders and closed under negation.
  /// Throws if it contains 0 or the group has more than kMaxCayleyOrder elements.
  AbelianCayleyGraph(std::vector<int> orders, const std::vector<GroupElement>& connection);
  /// Circulant on Z_N.
  static AbelianCayleyGraph circulant(int order, const std::vector<int>& connection);

  const std::vector<int>& orders() const { return orders_; }
  std::size_t order() const { return size_; }
  /// Sorted element indices of S.
  const std::vector<std::size_t>& connection() const { return connection_; }
  bool in_connection(std::size_t x) const { return in_s_[x]; }

  /// Mixed-radix index, first coordinate most significant.
  std::size_t index(const GroupElement& x) const;
  GroupElement element(std::size_t index) const;
  std::size_t add(std::size_t x, std::size_t y) const;
  std::size_t negate(std::size_t x) const;
  std::size_t scale(std::size_t x, long long u) const;
  /// <k, x> = sum_i k_i x_i / N_i mod 1
  double pairing(std::size_t k, std::size_t x) const;
  /// lcm of the orders; <k, x> * exponent() is an integer.
  long long exponent() const { return exponent_; }
  long long phase(std::size_t k, std::size_t x) const;

  AdjacencyMatrix adjacency() const;

 private:
  std::vector<int> orders_;
  std::size_t size_ = 1;
  long long exponent_ = 1;
  std::vector<int> coords_;  // size_ x orders_.size()
  std::vector<std::size_t> connection_;
  std::vector<bool> in_s_;
};

constexpr std::size_t kMaxCayleyOrder = 100000;
/// Orbits of the multiplier symmetry become LP variables, so this also caps the group.
constexpr std::size_t kMaxCayleyOrbits = 1500;

struct SubgraphSpec {
  std::vector<std::size_t> vertices;  // element indices
  std::uint64_t alpha_value = 1;      // bound for alpha of the induced subgraph
};

struct CayleyTheta {
  double value = 0.0;         // sum_x f(x), so the empty graph gets |X|
  std::vector<double> f;      // optimal function, by element index
  std::size_t orbits = 0;     // LP variables after symmetrisation
  std::size_t symmetries = 0; // multipliers u with uS = S used for averaging
  double min_fourier = 0.0;   // smallest character coefficient of f, recomputed directly
};

/// max sum f over f(0) = 1, f = 0 on S, all character coefficients >= 0.
CayleyTheta theta_cayley(const AbelianCayleyGraph& g);

/// The same program with sum_{v in V} f(v) <= alpha_value added.
CayleyTheta theta_cayley_strengthened(const AbelianCayleyGraph& g, const SubgraphSpec& sub);

/// Smallest eigenvalue of the matrix f(y - x); |X| <= 2000.
double gram_min_eigenvalue(const AbelianCayleyGraph& g, const std::vector<double>& f);

/// Independence number by enumerating all independent sets; at most 32 vertices.
std::uint64_t alpha_exhaustive(const AdjacencyMatrix& g);

/// Exhaustive up to 24 vertices, branch and bound beyond.
std::uint64_t alpha_exact(const AdjacencyMatrix& g);

struct RatioCheck {
  std::uint64_t alpha_graph = 0;
  std::size_t order = 0;
  std::uint64_t alpha_subgraph = 0;
  std::size_t subgraph_size = 0;
  bool holds = false;  // alpha_graph * |V| <= alpha_subgraph * |X|
};

/// alpha(G)/|X| <= alpha(G[V])/|V|, both sides computed exactly.
RatioCheck ratio_inequality_check(const AbelianCayleyGraph& g, const std::vector<std::size_t>& vertices);

}  // namespace udb
