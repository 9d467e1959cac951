#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udb/euclid_bound.hpp"
#include "udb/independence.hpp"

namespace udb::cli {

// ---- table 1: bounds on alpha(J(n,w,i)) ------------------------------------

struct Table1Entry {
  int n = 0, w = 0, i = 0;
  std::optional<std::uint64_t> alpha, fw, theta_prime, sdp;  // reference values
};

struct Table1Row {
  Table1Entry ref;
  std::optional<AlphaBound> alpha;  // computed when the graph is small enough
  std::optional<std::uint64_t> fw;
  double theta = 0.0, theta_prime = 0.0;
  bool equality = false;
  std::optional<AlphaBound> sdp;  // from the registry
  bool matches = true;
  std::string mismatch;
};

std::vector<Table1Entry> load_table1_manifest(const std::string& path);
/// alpha is searched when C(n,w) <= alpha_vertex_cap, with the given budget.
Table1Row run_table1_row(const Table1Entry& e, const BoundsRegistry& registry, double budget_seconds,
                         double alpha_vertex_cap = 1000);

// ---- table 2: certified bounds from one subgraph per dimension ----------------

struct Table2Entry {
  int n = 0;
  std::string graph;
  bool alpha_computed = true;  // otherwise taken from the registry
  double objective = 0.0;      // reference value
  std::vector<double> z;       // reference vector (z0, z1, z2)
  std::uint64_t previous = 0;  // earlier chromatic lower bound
  std::uint64_t chromatic = 0; // reference chromatic lower bound
};

struct Table2Row {
  Table2Entry ref;
  std::optional<AlphaBound> alpha;
  double vertices = 0.0;
  double radius = 0.0;
  std::optional<CertifiedBound> bound;
  std::optional<CertificationReport> reference_check;  // the reference z run through the verifier
  bool target_met = false;
  std::string error;
};

std::vector<Table2Entry> load_table2_manifest(const std::string& path);
Table2Row run_table2_row(const Table2Entry& e, const BoundsRegistry& registry, double budget_seconds);
/// Rows run concurrently; results keep the manifest order.
std::vector<Table2Row> run_table2(const std::vector<Table2Entry>& entries, const BoundsRegistry& registry,
                                  double budget_seconds);

/// Shipped data file next to the default registry.
std::string data_path(const std::string& name);

}  // namespace udb::cli
