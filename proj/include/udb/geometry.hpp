#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "udb/kernel_grid.hpp"
#include "udb/quadext.hpp"

namespace udb {

// ---- graph specifications -------------------------------------------------

struct JohnsonSpec {
  int n = 0, w = 0, i = 0;
};
struct Cell600Spec {
  QuadExt dsq;
};
struct E8RootsSpec {
  int dsq = 0;
};
struct E8KissingSpec {
  int dsq = 4;
};
struct OrthogonalitySpec {
  int n = 0;
};
struct CirculantSpec {
  int order = 0;
  std::vector<int> connection;  // closed under negation after parsing
};
struct FileSpec {
  std::string path;
};

using GraphSpec = std::variant<JohnsonSpec, Cell600Spec, E8RootsSpec, E8KissingSpec,
                               OrthogonalitySpec, CirculantSpec, FileSpec>;

/// Parses `johnson:n,w,i`, `600cell:dsq=<expr>`, `e8:dsq=<int>`, `e8kissing[:dsq=<int>]`,
/// `orth:n`, `circulant:N:s1,s2,...` and `file:<path>`.
GraphSpec parse_graph_spec(const std::string& text);

/// Canonical text form; parse_graph_spec(to_string(s)) reproduces s.
std::string to_string(const GraphSpec& spec);

// ---- exact point sets -----------------------------------------------------

using ExactPoint = std::vector<QuadExt>;

struct PointSet {
  int dim = 0;
  std::vector<ExactPoint> points;
  std::string label;
};

QuadExt squared_norm(const ExactPoint& p);
QuadExt squared_distance(const ExactPoint& p, const ExactPoint& q);

/// The 120 vertices of the 600-cell on the unit sphere.
PointSet build_600cell();
/// The 240 roots of E8, squared norm 2.
PointSet build_e8_roots();
/// The 56 roots at distance sqrt 2 from p = (1,1,0^6), recentered at their centroid p/2.
PointSet build_e8_kissing();

/// Distinct squared distances occurring between points of `ps`, sorted increasingly.
std::vector<QuadExt> distance_classes(const PointSet& ps);

// ---- graphs ---------------------------------------------------------------

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/**
 * A finite graph embedded in R^dim so that every edge has length 1, with a
 * positive measure on its vertices.
 *
 * Large combinatorial families can be held symbolically: the vertex count and
 * radial data are known, but edges (and possibly vertex labels) are not stored.
 * Per-vertex radii and weights are stored only when they vary; otherwise a
 * single shared value is kept.
 */
class UnitDistanceGraph {
 public:
  UnitDistanceGraph(GraphSpec source, int dim, std::size_t num_vertices);

  const GraphSpec& source() const { return source_; }
  int dim() const { return dim_; }
  std::size_t num_vertices() const { return num_vertices_; }

  bool edges_materialized() const { return edges_materialized_; }
  const std::vector<Edge>& edges() const { return edges_; }
  void set_edges(std::vector<Edge> edges);

  bool has_embedding() const { return has_embedding_; }
  double radius(std::size_t v) const;
  void set_uniform_radius(double r);
  void set_radii(std::vector<double> radii);

  double weight(std::size_t v) const { return weights_.empty() ? 1.0 : weights_[v]; }
  double total_weight() const;
  void set_weights(std::vector<double> weights);

  /// Radii grouped into shells (radii equal to 1e-12 relative are merged), each
  /// carrying the total weight of its vertices.
  std::vector<RadialComponent> radial_profile() const;

  /// Combinatorial vertex labels (Johnson subsets, cube words) when stored.
  const std::vector<std::uint64_t>& labels() const { return labels_; }
  void set_labels(std::vector<std::uint64_t> labels) { labels_ = std::move(labels); }

  /// Rescaled float coordinates, when the graph came from an explicit point set.
  const std::vector<std::vector<double>>& coordinates() const { return coordinates_; }
  void set_coordinates(std::vector<std::vector<double>> coords) { coordinates_ = std::move(coords); }

 private:
  GraphSpec source_;
  int dim_;
  std::size_t num_vertices_;
  bool edges_materialized_ = false;
  std::vector<Edge> edges_;
  bool has_embedding_ = false;
  double uniform_radius_ = 0.0;
  std::vector<double> radii_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> labels_;
  std::vector<std::vector<double>> coordinates_;
};

/// Edges join points at exact squared distance `d_squared`; the embedding is
/// rescaled by 1/sqrt(d_squared) so they have unit length.
UnitDistanceGraph distance_graph(const PointSet& ps, const QuadExt& d_squared, GraphSpec source);

struct BuildOptions {
  std::size_t max_edges = 5'000'000;  // beyond this the edge list is left symbolic
};

constexpr std::size_t kMaxJohnsonVertices = 10'000'000;
constexpr int kMaxMaterializedOrthogonality = 16;

/// Closed-form radius sqrt(w(1-w/n) / (2(w-i))) of the unit-edge embedding of J(n,w,i).
double johnson_radius(int n, int w, int i);
BigInt binomial(int n, int k);

UnitDistanceGraph build_johnson(int n, int w, int i, const BuildOptions& options = {});
/// Omega(n) on {0,1}^n, edges at Hamming distance n/2; radius sqrt(1/2).
/// Vertices are stored up to n = 16; larger n yields a symbolic graph.
UnitDistanceGraph build_orthogonality(int n, const BuildOptions& options = {});
/// Cayley graph of Z_N. Embedded on a circle only when the connection set is {+-s}.
UnitDistanceGraph build_circulant(int order, const std::vector<int>& connection);

UnitDistanceGraph build_graph(const GraphSpec& spec, const BuildOptions& options = {});

// ---- interchange file -------------------------------------------------------

/// Reads `dim M`, M lines of rational coordinates, then `u v` edge lines.
/// All edges must share one squared length, which is rescaled to 1.
UnitDistanceGraph read_graph_file(const std::string& path);
/// Writes a point set with rational coordinates and the given edges.
void write_graph_file(const std::string& path, const PointSet& ps, const std::vector<Edge>& edges);

}  // namespace udb
