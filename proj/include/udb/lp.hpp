#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udb {

/// minimize objective . z  subject to  row_i . z >= bound_i  and optional variable bounds.
class LinearProgram {
 public:
  explicit LinearProgram(std::vector<double> objective);

  std::size_t num_variables() const { return objective_.size(); }
  std::size_t num_constraints() const { return bounds_.size(); }

  void add_constraint(std::span<const double> row, double bound);
  void set_lower_bound(std::size_t var, double value);
  void set_upper_bound(std::size_t var, double value);
  void fix(std::size_t var, double value);

  const std::vector<double>& objective() const { return objective_; }
  std::span<const double> row(std::size_t i) const;
  double bound(std::size_t i) const { return bounds_[i]; }
  const std::vector<std::optional<double>>& lower() const { return lower_; }
  const std::vector<std::optional<double>>& upper() const { return upper_; }

 private:
  std::vector<double> objective_;
  std::vector<double> rows_;  // row-major, num_constraints x num_variables
  std::vector<double> bounds_;
  std::vector<std::optional<double>> lower_;
  std::vector<std::optional<double>> upper_;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> z;
  double objective_value = 0.0;
  double max_violation = 0.0;  // largest b_i - row_i . z over all constraints and bounds
  // Nonnegative multipliers for constraints (first) and variable bounds (lower, then upper
  // for every bounded variable, in variable order); objective = sum_i dual_i * bound_i.
  std::vector<double> dual;
  double dual_objective = 0.0;
  double dual_residual = 0.0;  // max |A^T y - c|
  double duality_gap = 0.0;    // |c.z - b.y|
  std::size_t iterations = 0;
};

struct LpOptions {
  double pivot_tolerance = 1e-11;
  double feasibility_tolerance = 1e-9;
  std::size_t max_iterations = 100000;
  std::size_t stall_limit = 50;  // degenerate pivots before switching to Bland's rule
};

/// The dense basis is num_variables squared, so keep the variable count modest.
constexpr std::size_t kMaxLpVariables = 2000;

/// Dense LP solve.
LpSolution solve(const LinearProgram& program, const LpOptions& options = {});

}  // namespace udb
