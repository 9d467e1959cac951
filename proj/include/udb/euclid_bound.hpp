#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "udb/kernel_grid.hpp"
#include "udb/specialfn.hpp"

namespace udb {

/// One subgraph's contribution: its radial profile under the vertex measure and
/// an upper bound for alpha(G) / lambda(V).
struct SubgraphConstraint {
  std::vector<RadialComponent> profile;
  double alpha_ratio = 1.0;
  std::string label;
};

struct BoundProblem {
  int n = 2;
  std::vector<SubgraphConstraint> constraints;
  double t_max = 50.0;  // raised to 2 j_{n/2,1} when smaller
  std::size_t samples = 4000;
  double refine_tol = 1e-9;
  std::size_t max_cut_rounds = 20;  // LP re-solves with the refined minima added as samples
};

/// Outcome of checking F(t) = z0 + z1 Omega_n(t) + sum_i z_{i+1} Omega-profile_i(t) >= 0.
struct CertificationReport {
  double objective = 0.0;   // of z as given
  double grid_min = 0.0;    // min F on [0, t_max] after refinement, before any bump
  double grid_min_t = 0.0;
  double t_max = 0.0;       // end of the checked interval, also the tail horizon T
  double tail_margin = 0.0; // z0 - sum of |coefficient| * tail bound at T; >= 0 certifies t > T
  bool feasible = false;    // grid_min >= -tolerance and tail_margin >= 0
  double fine_min = 0.0;    // min F on a 10x finer grid
};

struct CertifiedBound {
  std::vector<double> z;  // (z0, z1, z2, ...) after the bump
  double objective = 0.0; // z0 + sum_i z_{i+1} alpha_ratio_i, after the bump
  double sampled_objective = 0.0;  // LP optimum before certification
  double bump = 0.0;
  std::size_t cut_rounds = 0;
  CertificationReport report;  // of the bumped vector
};

/// -Omega_n(j) / (1 - Omega_n(j)) at the kernel minimum j = j_{n/2,1}.
double theta_infinity(int n);

/// Sample, solve, refine and certify the subgraph-strengthened program.
/// Throws std::runtime_error if the tail cannot be certified after one retry.
CertifiedBound solve_theta_g(const BoundProblem& problem);

/// Certification of a given z; `tolerance` is the admissible grid deficit.
CertificationReport verify_feasible(std::span<const double> z, const BoundProblem& problem,
                                    double tolerance = 1e-9);

/// ceil(1 / bound), the induced lower bound on the measurable chromatic number.
std::uint64_t chromatic_lower(double bound);

}  // namespace udb
