#include "udb/homog_theta.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "udb/lp.hpp"

namespace udb {
namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

}  // namespace

AbelianCayleyGraph::AbelianCayleyGraph(std::vector<int> orders, const std::vector<GroupElement>& connection)
    : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("cayley graph needs at least one cyclic factor");
  for (int n : orders_) {
    if (n < 1) throw std::invalid_argument("cyclic orders must be positive");
    size_ *= static_cast<std::size_t>(n);
    if (size_ > kMaxCayleyOrder)
      throw std::invalid_argument("group order exceeds " + std::to_string(kMaxCayleyOrder));
  }
  for (int n : orders_) exponent_ = std::lcm(exponent_, static_cast<long long>(n));
  coords_.resize(size_ * orders_.size());
  for (std::size_t x = 0; x < size_; ++x) {
    std::size_t idx = x;
    for (std::size_t i = orders_.size(); i-- > 0;) {
      coords_[x * orders_.size() + i] = static_cast<int>(idx % static_cast<std::size_t>(orders_[i]));
      idx /= static_cast<std::size_t>(orders_[i]);
    }
  }
  in_s_.assign(size_, false);
  for (const auto& s : connection) {
    const std::size_t x = index(s);
    if (x == 0) throw std::invalid_argument("connection set contains the identity");
    in_s_[x] = true;
    in_s_[negate(x)] = true;
  }
  for (std::size_t x = 0; x < size_; ++x)
    if (in_s_[x]) connection_.push_back(x);
}

AbelianCayleyGraph AbelianCayleyGraph::circulant(int order, const std::vector<int>& connection) {
  std::vector<GroupElement> s;
  for (int c : connection) s.push_back({c});
  return AbelianCayleyGraph({order}, s);
}

std::size_t AbelianCayleyGraph::index(const GroupElement& x) const {
  if (x.size() != orders_.size())
    throw std::invalid_argument("group element has " + std::to_string(x.size()) + " coordinates, expected " +
                                std::to_string(orders_.size()));
  std::size_t out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    out = out * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(mod(x[i], orders_[i]));
  return out;
}

GroupElement AbelianCayleyGraph::element(std::size_t idx) const {
  const auto* c = coords_.data() + idx * orders_.size();
  return GroupElement(c, c + orders_.size());
}

std::size_t AbelianCayleyGraph::add(std::size_t x, std::size_t y) const {
  const std::size_t d = orders_.size();
  std::size_t out = 0;
  for (std::size_t i = 0; i < d; ++i) {
    int c = coords_[x * d + i] + coords_[y * d + i];
    if (c >= orders_[i]) c -= orders_[i];
    out = out * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(c);
  }
  return out;
}

std::size_t AbelianCayleyGraph::negate(std::size_t x) const { return scale(x, -1); }

std::size_t AbelianCayleyGraph::scale(std::size_t x, long long u) const {
  const std::size_t d = orders_.size();
  std::size_t out = 0;
  for (std::size_t i = 0; i < d; ++i)
    out = out * static_cast<std::size_t>(orders_[i]) +
          static_cast<std::size_t>(mod(u * coords_[x * d + i], orders_[i]));
  return out;
}

long long AbelianCayleyGraph::phase(std::size_t k, std::size_t x) const {
  const std::size_t d = orders_.size();
  long long s = 0;
  for (std::size_t i = 0; i < d; ++i)
    s += static_cast<long long>(coords_[k * d + i]) * coords_[x * d + i] % orders_[i] * (exponent_ / orders_[i]);
  return s % exponent_;
}

double AbelianCayleyGraph::pairing(std::size_t k, std::size_t x) const {
  return static_cast<double>(phase(k, x)) / static_cast<double>(exponent_);
}

AdjacencyMatrix AbelianCayleyGraph::adjacency() const {
  AdjacencyMatrix adj(size_);
  for (std::size_t x = 0; x < size_; ++x)
    for (std::size_t s : connection_) {
      const std::size_t y = add(x, s);
      if (x < y) adj.add_edge(x, y);
    }
  return adj;
}

namespace {

// Multipliers u (units modulo every factor) with uS = S, and uV = V or uV = -V
// when a subgraph is given. f may be averaged over these without loss, since a
// real positive definite f is even and sum_{-V} f = sum_V f.
std::vector<long long> multipliers(const AbelianCayleyGraph& g, const std::vector<std::size_t>* vertices) {
  long long l = 1;
  for (int n : g.orders()) l = std::lcm(l, static_cast<long long>(n));
  std::vector<std::size_t> v_sorted, v_neg;
  if (vertices) {
    v_sorted = *vertices;
    std::sort(v_sorted.begin(), v_sorted.end());
    for (std::size_t x : v_sorted) v_neg.push_back(g.negate(x));
    std::sort(v_neg.begin(), v_neg.end());
  }
  std::vector<long long> out;
  for (long long u = 1; u < std::max(2LL, l); ++u) {
    if (std::gcd(u, l) != 1) continue;
    bool keeps = true;
    for (std::size_t s : g.connection())
      if (!g.in_connection(g.scale(s, u))) {
        keeps = false;
        break;
      }
    if (keeps && vertices) {
      std::vector<std::size_t> image;
      for (std::size_t x : v_sorted) image.push_back(g.scale(x, u));
      std::sort(image.begin(), image.end());
      keeps = image == v_sorted || image == v_neg;
    }
    if (keeps) out.push_back(u);
  }
  return out;
}

struct Orbits {
  std::vector<std::size_t> of;                 // orbit id per element
  std::vector<std::vector<std::size_t>> list;  // members; orbit 0 is {0}
};

Orbits orbits(const AbelianCayleyGraph& g, const std::vector<long long>& mult) {
  Orbits o;
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  o.of.assign(g.order(), none);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (o.of[x] != none) continue;
    const std::size_t id = o.list.size();
    o.list.emplace_back();
    for (long long u : mult) {
      for (std::size_t y : {g.scale(x, u), g.scale(x, -u)}) {
        if (o.of[y] == none) {
          o.of[y] = id;
          o.list[id].push_back(y);
        }
      }
    }
  }
  return o;
}

CayleyTheta solve_cayley(const AbelianCayleyGraph& g, const SubgraphSpec* sub) {
  const std::size_t m = g.order();
  if (sub) {
    if (sub->vertices.empty()) throw std::invalid_argument("subgraph vertex set is empty");
    if (sub->alpha_value < 1) throw std::invalid_argument("subgraph alpha must be at least 1");
    for (std::size_t v : sub->vertices)
      if (v >= m) throw std::invalid_argument("subgraph vertex outside the group");
  }
  CayleyTheta out;
  const std::vector<long long> mult = multipliers(g, sub ? &sub->vertices : nullptr);
  out.symmetries = mult.size();
  const Orbits orb = orbits(g, mult);

  // Free orbits: neither the identity nor inside S.
  std::vector<std::size_t> var_of(orb.list.size(), std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> vars;
  for (std::size_t id = 0; id < orb.list.size(); ++id) {
    const std::size_t rep = orb.list[id].front();
    if (rep == 0 || g.in_connection(rep)) continue;
    var_of[id] = vars.size();
    vars.push_back(id);
  }
  out.orbits = vars.size();
  if (vars.size() > kMaxCayleyOrbits)
    throw std::invalid_argument("cayley LP has " + std::to_string(vars.size()) + " orbit variables, limit " +
                                std::to_string(kMaxCayleyOrbits));

  std::vector<double> cosine(static_cast<std::size_t>(g.exponent()));
  for (std::size_t j = 0; j < cosine.size(); ++j)
    cosine[j] = std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(g.exponent()));

  std::vector<double> f(m, 0.0);
  f[0] = 1.0;
  if (!vars.empty()) {
    std::vector<double> objective(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) objective[j] = -static_cast<double>(orb.list[vars[j]].size());
    LinearProgram lp(objective);
    std::vector<double> row(vars.size());
    // One character per orbit: the coefficient sum over an invariant orbit is constant along character orbits.
    for (const auto& kset : orb.list) {
      const std::size_t k = kset.front();
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t j = 0; j < vars.size(); ++j)
        for (std::size_t x : orb.list[vars[j]]) row[j] += cosine[static_cast<std::size_t>(g.phase(k, x))];
      lp.add_constraint(row, -1.0);
    }
    if (sub) {
      std::fill(row.begin(), row.end(), 0.0);
      double fixed = 0.0;
      for (std::size_t v : sub->vertices) {
        if (v == 0) fixed += 1.0;
        else if (const std::size_t j = var_of[orb.of[v]]; j != std::numeric_limits<std::size_t>::max())
          row[j] -= 1.0;
      }
      lp.add_constraint(row, fixed - static_cast<double>(sub->alpha_value));
    }
    const LpSolution sol = solve(lp);
    if (sol.status != LpStatus::optimal)
      throw std::runtime_error("cayley theta LP is " + to_string(sol.status));
    for (std::size_t j = 0; j < vars.size(); ++j)
      for (std::size_t x : orb.list[vars[j]]) f[x] = sol.z[j];
  } else if (sub) {
    const bool has_zero = std::find(sub->vertices.begin(), sub->vertices.end(), 0) != sub->vertices.end();
    if (has_zero && sub->alpha_value < 1) throw std::runtime_error("cayley theta LP is infeasible");
  }

  out.value = std::accumulate(f.begin(), f.end(), 0.0);
  out.min_fourier = std::numeric_limits<double>::infinity();
  for (const auto& kset : orb.list) {
    double c = 0.0;
    for (std::size_t x = 0; x < m; ++x) c += f[x] * cosine[static_cast<std::size_t>(g.phase(kset.front(), x))];
    out.min_fourier = std::min(out.min_fourier, c);
  }
  out.f = std::move(f);
  return out;
}

}  // namespace

CayleyTheta theta_cayley(const AbelianCayleyGraph& g) { return solve_cayley(g, nullptr); }

CayleyTheta theta_cayley_strengthened(const AbelianCayleyGraph& g, const SubgraphSpec& sub) {
  return solve_cayley(g, &sub);
}

double gram_min_eigenvalue(const AbelianCayleyGraph& g, const std::vector<double>& f) {
  const std::size_t m = g.order();
  if (m > 2000) throw std::invalid_argument("gram matrix check is limited to 2000 elements");
  if (f.size() != m) throw std::invalid_argument("function size does not match the group order");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t nx = g.negate(x);
    for (std::size_t y = 0; y < m; ++y)
      a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = f[g.add(y, nx)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("gram matrix eigenvalues did not converge");
  return es.eigenvalues().minCoeff();
}

std::uint64_t alpha_exhaustive(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  if (n > 32) throw std::invalid_argument("exhaustive alpha is limited to 32 vertices");
  std::vector<std::uint32_t> nbr(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v)) nbr[u] |= 1u << v;
  // Visit every independent set as an increasing vertex sequence.
  std::uint64_t best = 0;
  auto rec = [&](auto&& self, std::size_t start, std::uint32_t blocked, std::uint64_t size) -> void {
    best = std::max(best, size);
    for (std::size_t v = start; v < n; ++v)
      if (!(blocked >> v & 1u)) self(self, v + 1, blocked | nbr[v], size + 1);
  };
  rec(rec, 0, 0, 0);
  return best;
}

std::uint64_t alpha_exact(const AdjacencyMatrix& g) {
  if (g.size() <= 24) return alpha_exhaustive(g);
  SearchOptions opt;
  opt.budget_seconds = std::numeric_limits<double>::infinity();
  const SearchResult r = independence_search(g, opt);
  return r.best.size();
}

RatioCheck ratio_inequality_check(const AbelianCayleyGraph& g, const std::vector<std::size_t>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("ratio check needs a nonempty vertex set");
  std::vector<std::uint32_t> v;
  for (std::size_t x : vertices) {
    if (x >= g.order()) throw std::invalid_argument("subgraph vertex outside the group");
    v.push_back(static_cast<std::uint32_t>(x));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  const AdjacencyMatrix adj = g.adjacency();
  RatioCheck out;
  out.alpha_graph = alpha_exact(adj);
  out.order = g.order();
  out.alpha_subgraph = alpha_exact(adj.induced(v));
  out.subgraph_size = v.size();
  out.holds = out.alpha_graph * out.subgraph_size <= out.alpha_subgraph * out.order;
  return out;
}

}  // namespace udb
