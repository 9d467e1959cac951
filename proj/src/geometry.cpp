#include "udb/geometry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace udb {
namespace {

int parse_int(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::invalid_argument("graph spec '" + context + "': '" + s + "' is not an integer");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& context) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_int(item, context));
  if (out.empty()) throw std::invalid_argument("graph spec '" + context + "': empty list");
  return out;
}

std::string strip_dsq(const std::string& rest, const std::string& context) {
  if (rest.rfind("dsq=", 0) != 0)
    throw std::invalid_argument("graph spec '" + context + "': expected dsq=<value>");
  return rest.substr(4);
}

void check_johnson(int n, int w, int i) {
  if (n < 1 || n > 63 || w <= 0 || w > n || i < 0 || i >= w)
    throw std::invalid_argument("johnson parameters need 0 < w <= n <= 63 and 0 <= i < w");
  if (w - i > n - w)
    throw std::invalid_argument("johnson graph J(" + std::to_string(n) + "," + std::to_string(w) +
                                "," + std::to_string(i) + ") has no edges");
}

void check_e8_dsq(int dsq, const char* family) {
  if (dsq != 2 && dsq != 4 && dsq != 6)
    throw std::invalid_argument(std::string(family) + " distances are d^2 = 2, 4 or 6");
}

std::vector<int> normalize_connection(int order, const std::vector<int>& connection) {
  if (order < 2) throw std::invalid_argument("circulant order must be at least 2");
  std::vector<int> s;
  for (int c : connection) {
    const int r = ((c % order) + order) % order;
    if (r == 0) throw std::invalid_argument("circulant connection set may not contain 0");
    s.push_back(r);
    s.push_back((order - r) % order);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Rational parse_rational(const std::string& token) {
  const auto dot = token.find('.');
  if (dot == std::string::npos) {
    try {
      return Rational(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a rational number: '" + token + "'");
    }
  }
  std::string digits = token.substr(0, dot) + token.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("not a rational number: '" + token + "'");
  BigInt denom = 1;
  for (std::size_t k = dot + 1; k < token.size(); ++k) denom *= 10;
  try {
    return Rational(BigInt(digits), denom);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + token + "'");
  }
}

// Calls f(mask) for every k-subset of the set bits of `pool`.
template <class F>
void for_each_subset(const std::vector<int>& pool, int k, std::uint64_t base, int start, F&& f) {
  if (k == 0) {
    f(base);
    return;
  }
  for (int p = start; p <= static_cast<int>(pool.size()) - k; ++p)
    for_each_subset(pool, k - 1, base | (std::uint64_t{1} << pool[p]), p + 1, f);
}

std::vector<int> bits_of(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int b = 0; b < n; ++b)
    if (mask >> b & 1) out.push_back(b);
  return out;
}

std::vector<std::uint64_t> weight_w_words(int n, int w) {
  std::vector<std::uint64_t> out;
  if (w == 0) return {0};
  std::uint64_t x = (std::uint64_t{1} << w) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (x < limit) {
    out.push_back(x);
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

// ---- specs ----------------------------------------------------------------

GraphSpec parse_graph_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "johnson") {
    const auto v = parse_int_list(rest, text);
    if (v.size() != 3) throw std::invalid_argument("graph spec '" + text + "': expected johnson:n,w,i");
    check_johnson(v[0], v[1], v[2]);
    return JohnsonSpec{v[0], v[1], v[2]};
  }
  if (kind == "600cell") {
    const QuadExt dsq = parse_quadext(strip_dsq(rest, text));
    if (dsq.sign() <= 0) throw std::invalid_argument("graph spec '" + text + "': dsq must be positive");
    return Cell600Spec{dsq};
  }
  if (kind == "e8") {
    const int dsq = parse_int(strip_dsq(rest, text), text);
    check_e8_dsq(dsq, "e8");
    return E8RootsSpec{dsq};
  }
  if (kind == "e8kissing") {
    E8KissingSpec s;
    if (colon != std::string::npos) s.dsq = parse_int(strip_dsq(rest, text), text);
    check_e8_dsq(s.dsq, "e8kissing");
    return s;
  }
  if (kind == "orth") {
    const int n = parse_int(rest, text);
    if (n <= 0 || n % 4 != 0 || n > 60)
      throw std::invalid_argument("orthogonality graph needs n divisible by 4, 4 <= n <= 60");
    return OrthogonalitySpec{n};
  }
  if (kind == "circulant") {
    const auto second = rest.find(':');
    if (second == std::string::npos)
      throw std::invalid_argument("graph spec '" + text + "': expected circulant:N:s1,s2,...");
    CirculantSpec s;
    s.order = parse_int(rest.substr(0, second), text);
    s.connection = normalize_connection(s.order, parse_int_list(rest.substr(second + 1), text));
    return s;
  }
  if (kind == "file") {
    if (rest.empty()) throw std::invalid_argument("graph spec '" + text + "': missing path");
    return FileSpec{rest};
  }
  throw std::invalid_argument("unknown graph family in '" + text + "'");
}

std::string to_string(const GraphSpec& spec) {
  struct Visitor {
    std::string operator()(const JohnsonSpec& s) const {
      return "johnson:" + std::to_string(s.n) + "," + std::to_string(s.w) + "," + std::to_string(s.i);
    }
    std::string operator()(const Cell600Spec& s) const { return "600cell:dsq=" + s.dsq.to_string(); }
    std::string operator()(const E8RootsSpec& s) const { return "e8:dsq=" + std::to_string(s.dsq); }
    std::string operator()(const E8KissingSpec& s) const {
      return s.dsq == 4 ? "e8kissing" : "e8kissing:dsq=" + std::to_string(s.dsq);
    }
    std::string operator()(const OrthogonalitySpec& s) const { return "orth:" + std::to_string(s.n); }
    std::string operator()(const CirculantSpec& s) const {
      std::string out = "circulant:" + std::to_string(s.order) + ":";
      for (std::size_t k = 0; k < s.connection.size(); ++k)
        out += (k ? "," : "") + std::to_string(s.connection[k]);
      return out;
    }
    std::string operator()(const FileSpec& s) const { return "file:" + s.path; }
  };
  return std::visit(Visitor{}, spec);
}

// ---- point sets -------------------------------------------------------------

QuadExt squared_norm(const ExactPoint& p) {
  QuadExt s;
  for (const auto& x : p) s += x * x;
  return s;
}

QuadExt squared_distance(const ExactPoint& p, const ExactPoint& q) {
  QuadExt s;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const QuadExt d = p[k] - q[k];
    s += d * d;
  }
  return s;
}

PointSet build_600cell() {
  PointSet ps{4, {}, "600-cell"};
  const QuadExt half(Rational(1, 2));
  for (int s = 0; s < 16; ++s) {
    ExactPoint p(4);
    for (int k = 0; k < 4; ++k) p[k] = (s >> k & 1) ? -half : half;
    ps.points.push_back(p);
  }
  for (int k = 0; k < 4; ++k)
    for (int sgn : {1, -1}) {
      ExactPoint p(4, QuadExt(0));
      p[k] = QuadExt(sgn);
      ps.points.push_back(p);
    }
  // even permutations of (0, +-1/(2 phi), +-1/2, +-phi/2)
  const QuadExt base[4] = {QuadExt(0), QuadExt(Rational(-1, 4), Rational(1, 4)), half,
                           QuadExt(Rational(1, 4), Rational(1, 4))};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b];
    if (inversions % 2) continue;
    for (int s = 0; s < 8; ++s) {
      ExactPoint p(4);
      for (int k = 0; k < 4; ++k) {
        const int src = perm[k];
        p[k] = (src > 0 && (s >> (src - 1) & 1)) ? -base[src] : base[src];
      }
      ps.points.push_back(p);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ps;
}

PointSet build_e8_roots() {
  PointSet ps{8, {}, "E8 roots"};
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          ExactPoint p(8, QuadExt(0));
          p[a] = QuadExt(sa);
          p[b] = QuadExt(sb);
          ps.points.push_back(p);
        }
  const QuadExt half(Rational(1, 2));
  for (int s = 0; s < 256; ++s) {
    if (std::popcount(static_cast<unsigned>(s)) % 2) continue;
    ExactPoint p(8);
    for (int k = 0; k < 8; ++k) p[k] = (s >> k & 1) ? -half : half;
    ps.points.push_back(p);
  }
  return ps;
}

PointSet build_e8_kissing() {
  const PointSet roots = build_e8_roots();
  ExactPoint p(8, QuadExt(0));
  p[0] = p[1] = QuadExt(1);
  PointSet ps{8, {}, "E8 kissing configuration"};
  for (const auto& q : roots.points)
    if (squared_distance(p, q) == QuadExt(2)) ps.points.push_back(q);
  ExactPoint centroid(8, QuadExt(0));
  for (const auto& q : ps.points)
    for (int k = 0; k < 8; ++k) centroid[k] += q[k];
  const QuadExt count(static_cast<long long>(ps.points.size()));
  for (auto& c : centroid) c /= count;
  for (auto& q : ps.points)
    for (int k = 0; k < 8; ++k) q[k] -= centroid[k];
  return ps;
}

std::vector<QuadExt> distance_classes(const PointSet& ps) {
  std::vector<QuadExt> out;
  for (std::size_t a = 0; a < ps.points.size(); ++a)
    for (std::size_t b = a + 1; b < ps.points.size(); ++b) {
      const QuadExt d = squared_distance(ps.points[a], ps.points[b]);
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- graphs -----------------------------------------------------------------

UnitDistanceGraph::UnitDistanceGraph(GraphSpec source, int dim, std::size_t num_vertices)
    : source_(std::move(source)), dim_(dim), num_vertices_(num_vertices) {}

void UnitDistanceGraph::set_edges(std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u == v || u >= num_vertices_ || v >= num_vertices_)
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") is out of range or a loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  edges_materialized_ = true;
}

double UnitDistanceGraph::radius(std::size_t v) const {
  if (!has_embedding_) throw std::logic_error("graph " + to_string(source_) + " has no embedding");
  return radii_.empty() ? uniform_radius_ : radii_[v];
}

void UnitDistanceGraph::set_uniform_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  uniform_radius_ = r;
  radii_.clear();
  has_embedding_ = true;
}

void UnitDistanceGraph::set_radii(std::vector<double> radii) {
  if (radii.size() != num_vertices_) throw std::invalid_argument("one radius per vertex expected");
  for (double r : radii)
    if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  radii_ = std::move(radii);
  has_embedding_ = true;
}

double UnitDistanceGraph::total_weight() const {
  if (weights_.empty()) return static_cast<double>(num_vertices_);
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

void UnitDistanceGraph::set_weights(std::vector<double> weights) {
  if (weights.size() != num_vertices_) throw std::invalid_argument("one weight per vertex expected");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive and finite");
  weights_ = std::move(weights);
}

std::vector<RadialComponent> UnitDistanceGraph::radial_profile() const {
  if (!has_embedding_) throw std::logic_error("graph " + to_string(source_) + " has no embedding");
  if (radii_.empty() && weights_.empty()) return {{uniform_radius_, static_cast<double>(num_vertices_)}};
  std::vector<RadialComponent> shells;
  shells.reserve(num_vertices_);
  for (std::size_t v = 0; v < num_vertices_; ++v) shells.push_back({radius(v), weight(v)});
  std::sort(shells.begin(), shells.end(),
            [](const RadialComponent& a, const RadialComponent& b) { return a.radius < b.radius; });
  std::vector<RadialComponent> merged;
  for (const auto& s : shells) {
    if (!merged.empty() && s.radius - merged.back().radius <= 1e-12 * s.radius)
      merged.back().weight += s.weight;
    else
      merged.push_back(s);
  }
  return merged;
}

UnitDistanceGraph distance_graph(const PointSet& ps, const QuadExt& d_squared, GraphSpec source) {
  if (d_squared.sign() <= 0) throw std::invalid_argument("distance_graph: d^2 must be positive");
  UnitDistanceGraph g(std::move(source), ps.dim, ps.points.size());
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < ps.points.size(); ++a)
    for (std::size_t b = a + 1; b < ps.points.size(); ++b)
      if (squared_distance(ps.points[a], ps.points[b]) == d_squared)
        edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  if (edges.empty())
    std::clog << "warning: no pair of " << ps.label << " points at squared distance "
              << d_squared.to_string() << "\n";
  g.set_edges(std::move(edges));

  const double scale = 1.0 / std::sqrt(d_squared.to_double());
  std::vector<double> radii;
  std::vector<std::vector<double>> coords;
  for (const auto& p : ps.points) {
    radii.push_back(std::sqrt((squared_norm(p) / d_squared).to_double()));
    std::vector<double> c;
    for (const auto& x : p) c.push_back(x.to_double() * scale);
    coords.push_back(std::move(c));
  }
  const bool uniform = std::all_of(radii.begin(), radii.end(), [&](double r) { return r == radii[0]; });
  if (uniform && !radii.empty())
    g.set_uniform_radius(radii[0]);
  else
    g.set_radii(std::move(radii));
  g.set_coordinates(std::move(coords));
  return g;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

double johnson_radius(int n, int w, int i) {
  check_johnson(n, w, i);
  return std::sqrt(w * (1.0 - static_cast<double>(w) / n) / (2.0 * (w - i)));
}

UnitDistanceGraph build_johnson(int n, int w, int i, const BuildOptions& options) {
  check_johnson(n, w, i);
  const BigInt count = binomial(n, w);
  if (count > kMaxJohnsonVertices)
    throw std::invalid_argument("J(" + std::to_string(n) + "," + std::to_string(w) + "," +
                                std::to_string(i) + ") has more than 10^7 vertices");
  const auto m = static_cast<std::size_t>(count);
  UnitDistanceGraph g(JohnsonSpec{n, w, i}, n - 1, m);
  g.set_uniform_radius(johnson_radius(n, w, i));

  auto words = weight_w_words(n, w);
  const BigInt edge_count = count * binomial(w, i) * binomial(n - w, w - i) / 2;
  if (edge_count <= options.max_edges) {
    // Words come out in increasing order, so ranks are found by binary search.
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(edge_count));
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t u = 0; u < m; ++u) {
      const auto inside = bits_of(words[u], n);
      const auto outside = bits_of(all & ~words[u], n);
      for_each_subset(inside, i, 0, 0, [&](std::uint64_t kept) {
        for_each_subset(outside, w - i, kept, 0, [&](std::uint64_t nb) {
          if (nb <= words[u]) return;
          const auto it = std::lower_bound(words.begin(), words.end(), nb);
          edges.emplace_back(static_cast<std::uint32_t>(u),
                             static_cast<std::uint32_t>(it - words.begin()));
        });
      });
    }
    g.set_edges(std::move(edges));
  }
  g.set_labels(std::move(words));
  return g;
}

UnitDistanceGraph build_orthogonality(int n, const BuildOptions& options) {
  if (n <= 0 || n % 4 != 0 || n > 60)
    throw std::invalid_argument("orthogonality graph needs n divisible by 4, 4 <= n <= 60");
  const std::size_t m = std::size_t{1} << n;
  UnitDistanceGraph g(OrthogonalitySpec{n}, n, m);
  g.set_uniform_radius(std::sqrt(0.5));
  if (n > kMaxMaterializedOrthogonality) return g;

  const auto flips = weight_w_words(n, n / 2);
  if (static_cast<double>(m) * static_cast<double>(flips.size()) / 2.0 <= static_cast<double>(options.max_edges)) {
    std::vector<Edge> edges;
    edges.reserve(m * flips.size() / 2);
    for (std::uint64_t u = 0; u < m; ++u)
      for (std::uint64_t f : flips)
        if ((u ^ f) > u) edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(u ^ f));
    g.set_edges(std::move(edges));
  }
  std::vector<std::uint64_t> labels(m);
  std::iota(labels.begin(), labels.end(), std::uint64_t{0});
  g.set_labels(std::move(labels));
  return g;
}

UnitDistanceGraph build_circulant(int order, const std::vector<int>& connection) {
  const auto s = normalize_connection(order, connection);
  UnitDistanceGraph g(CirculantSpec{order, s}, 2, static_cast<std::size_t>(order));
  std::vector<Edge> edges;
  for (int u = 0; u < order; ++u)
    for (int v = u + 1; v < order; ++v)
      if (std::binary_search(s.begin(), s.end(), v - u))
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  g.set_edges(std::move(edges));
  if (s.size() <= 2) {  // {s, -s}: the chord of a regular polygon
    g.set_uniform_radius(0.5 / std::sin(std::numbers::pi * s[0] / order));
    std::vector<std::vector<double>> coords;
    const double r = g.radius(0);
    for (int u = 0; u < order; ++u) {
      const double a = 2.0 * std::numbers::pi * u / order;
      coords.push_back({r * std::cos(a), r * std::sin(a)});
    }
    g.set_coordinates(std::move(coords));
  }
  return g;
}

UnitDistanceGraph build_graph(const GraphSpec& spec, const BuildOptions& options) {
  struct Visitor {
    const BuildOptions& options;
    UnitDistanceGraph operator()(const JohnsonSpec& s) const { return build_johnson(s.n, s.w, s.i, options); }
    UnitDistanceGraph operator()(const Cell600Spec& s) const { return distance_graph(build_600cell(), s.dsq, s); }
    UnitDistanceGraph operator()(const E8RootsSpec& s) const {
      check_e8_dsq(s.dsq, "e8");
      return distance_graph(build_e8_roots(), QuadExt(s.dsq), s);
    }
    UnitDistanceGraph operator()(const E8KissingSpec& s) const {
      check_e8_dsq(s.dsq, "e8kissing");
      return distance_graph(build_e8_kissing(), QuadExt(s.dsq), s);
    }
    UnitDistanceGraph operator()(const OrthogonalitySpec& s) const { return build_orthogonality(s.n, options); }
    UnitDistanceGraph operator()(const CirculantSpec& s) const { return build_circulant(s.order, s.connection); }
    UnitDistanceGraph operator()(const FileSpec& s) const { return read_graph_file(s.path); }
  };
  return std::visit(Visitor{options}, spec);
}

// ---- interchange file -------------------------------------------------------

UnitDistanceGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("graph file '" + path + "': " + what);
  };
  if (lines.empty()) fail("missing header");
  std::istringstream header(lines[0]);
  long long dim = 0, m = 0;
  if (!(header >> dim >> m) || dim <= 0 || dim > 64 || m <= 0) fail("header must be 'dim M' with 0 < dim <= 64");
  if (static_cast<long long>(lines.size()) < 1 + m) fail("expected " + std::to_string(m) + " coordinate lines");

  PointSet ps{static_cast<int>(dim), {}, path};
  for (long long v = 0; v < m; ++v) {
    std::istringstream row(lines[1 + v]);
    ExactPoint p;
    for (std::string tok; row >> tok;) p.emplace_back(parse_rational(tok));
    if (static_cast<long long>(p.size()) != dim) fail("vertex " + std::to_string(v) + " has the wrong dimension");
    ps.points.push_back(std::move(p));
  }
  std::vector<Edge> edges;
  std::optional<QuadExt> length;
  for (std::size_t k = 1 + m; k < lines.size(); ++k) {
    std::istringstream row(lines[k]);
    long long u = -1, v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) fail("bad edge line '" + lines[k] + "'");
    if (u < 0 || v < 0 || u >= m || v >= m || u == v) fail("edge " + lines[k] + " out of range");
    const QuadExt d = squared_distance(ps.points[u], ps.points[v]);
    if (!length) length = d;
    if (!(d == *length)) fail("edges have different lengths");
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  if (!length) fail("no edges");
  UnitDistanceGraph g = distance_graph(ps, *length, FileSpec{path});
  // Keep exactly the listed edges: a file may describe a proper subgraph of the distance graph.
  g.set_edges(std::move(edges));
  return g;
}

void write_graph_file(const std::string& path, const PointSet& ps, const std::vector<Edge>& edges) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file '" + path + "'");
  out << ps.dim << " " << ps.points.size() << "\n";
  for (const auto& p : ps.points) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!p[k].is_rational()) throw std::invalid_argument("graph files hold rational coordinates only");
      out << (k ? " " : "") << p[k].rational_part().str();
    }
    out << "\n";
  }
  for (const auto& [u, v] : edges) out << u << " " << v << "\n";
}

}  // namespace udb
