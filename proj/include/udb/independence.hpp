#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "udb/geometry.hpp"

namespace udb {

enum class AlphaKind { exact, upper, lower };
enum class AlphaSource { computed_exact, computed_greedy, frankl_wilson, external };

std::string to_string(AlphaKind kind);
std::string to_string(AlphaSource source);

/// A statement about the independence number of one graph.
struct AlphaBound {
  std::string graph_id;  // canonical GraphSpec text
  AlphaKind kind = AlphaKind::lower;
  std::uint64_t value = 0;
  AlphaSource source = AlphaSource::computed_greedy;
  std::string citation;                // external bounds only
  std::vector<std::uint32_t> witness;  // exact and lower bounds: an independent set of size `value`
};

/// Dense bitset adjacency, one row of 64-bit words per vertex.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n);
  explicit AdjacencyMatrix(const UnitDistanceGraph& g);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const { return row(u)[v / 64] >> (v % 64) & 1; }
  const std::uint64_t* row(std::size_t v) const { return bits_.data() + v * words_; }
  std::size_t degree(std::size_t v) const;

  /// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  AdjacencyMatrix induced(const std::vector<std::uint32_t>& vertices) const;

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

bool is_independent(const AdjacencyMatrix& g, const std::vector<std::uint32_t>& vertices);

/// Minimum-degree greedy independent set.
std::vector<std::uint32_t> greedy_independent_set(const AdjacencyMatrix& g);

struct SearchOptions {
  double budget_seconds = 600.0;
  bool parallel = true;  // split root branches across OpenMP threads
  // Fix vertex 0 in the solution, alpha = 1 + alpha(G - N[0]). Valid only for
  // vertex-transitive graphs; the caller vouches for that.
  bool vertex_transitive = false;
};

struct SearchResult {
  std::vector<std::uint32_t> best;  // an independent set
  bool complete = false;            // search finished inside the budget
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// Branch and bound for a maximum clique of the complement, with greedy colouring
/// bounds over bitsets.
SearchResult independence_search(const AdjacencyMatrix& g, const SearchOptions& options = {});

constexpr std::size_t kMaxSearchVertices = 5000;
constexpr std::size_t kMaxGreedyVertices = 100000;

/// Exact when the search completes, otherwise a lower bound with witness.
/// Graphs above kMaxSearchVertices get the greedy lower bound only.
AlphaBound max_independent_set(const UnitDistanceGraph& g, const SearchOptions& options = {});

bool is_prime_power(long long q);

/// alpha(J(n, 2q-1, q-1)) <= C(n, q-1) for a prime power q.
AlphaBound frankl_wilson(int n, int q);

/// External independence bounds, one per line: `spec kind value citation...`.
class BoundsRegistry {
 public:
  static BoundsRegistry parse(std::istream& in, const std::string& origin = "<stream>");
  static BoundsRegistry load(const std::string& path);
  /// FD_REGISTRY if set, otherwise the shipped data/bounds.registry.
  static std::string default_path();

  /// Exact entry if any, else the smallest upper bound; lower entries are ignored here.
  std::optional<AlphaBound> lookup(const GraphSpec& spec) const;
  const std::vector<AlphaBound>& entries() const { return entries_; }

 private:
  std::vector<AlphaBound> entries_;
};

}  // namespace udb
