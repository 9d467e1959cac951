#include "udb/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace udb {

LinearProgram::LinearProgram(std::vector<double> objective)
    : objective_(std::move(objective)),
      lower_(objective_.size()),
      upper_(objective_.size()) {
  for (double c : objective_)
    if (!std::isfinite(c)) throw std::invalid_argument("objective coefficients must be finite");
}

void LinearProgram::add_constraint(std::span<const double> row, double bound) {
  if (row.size() != objective_.size())
    throw std::invalid_argument("constraint row has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(objective_.size()));
  if (!std::isfinite(bound)) throw std::invalid_argument("constraint bound must be finite");
  for (double a : row)
    if (!std::isfinite(a)) throw std::invalid_argument("constraint coefficients must be finite");
  rows_.insert(rows_.end(), row.begin(), row.end());
  bounds_.push_back(bound);
}

void LinearProgram::set_lower_bound(std::size_t var, double value) {
  if (var >= lower_.size()) throw std::out_of_range("variable index out of range");
  lower_[var] = value;
}

void LinearProgram::set_upper_bound(std::size_t var, double value) {
  if (var >= upper_.size()) throw std::out_of_range("variable index out of range");
  upper_[var] = value;
}

void LinearProgram::fix(std::size_t var, double value) {
  set_lower_bound(var, value);
  set_upper_bound(var, value);
}

std::span<const double> LinearProgram::row(std::size_t i) const {
  const std::size_t d = objective_.size();
  return {rows_.data() + i * d, d};
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// The primal  min c.z, A z >= b  (z free) is solved through its dual
//   max b.y,  A^T y = c,  y >= 0,
// which has one equality per primal variable. With few variables the dual basis
// is tiny and a dense revised simplex on it is cheap regardless of the row count.
class DualSimplex {
 public:
  DualSimplex(std::vector<double> columns, std::vector<double> costs, std::vector<double> rhs,
              std::size_t d, const LpOptions& options)
      : d_(d),
        m_(costs.size()),
        columns_(std::move(columns)),
        benefit_(std::move(costs)),
        rhs_(std::move(rhs)),
        options_(options) {}

  enum class Outcome { optimal, dual_infeasible, dual_unbounded, iteration_limit };

  Outcome run() {
    sign_.assign(d_, 1.0);
    for (std::size_t k = 0; k < d_; ++k)
      if (rhs_[k] < 0.0) sign_[k] = -1.0;

    basis_.resize(d_);
    std::iota(basis_.begin(), basis_.end(), m_);  // artificials
    binv_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
    xb_.resize(static_cast<Eigen::Index>(d_));
    for (std::size_t k = 0; k < d_; ++k) xb_(static_cast<Eigen::Index>(k)) = std::abs(rhs_[k]);
    in_basis_.assign(m_ + d_, false);
    for (std::size_t k : basis_) in_basis_[k] = true;

    double rhs_scale = 1.0;
    for (double c : rhs_) rhs_scale = std::max(rhs_scale, std::abs(c));

    phase_ = 1;
    if (!iterate()) return Outcome::iteration_limit;
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < d_; ++r)
      if (basis_[r] >= m_) infeasibility += xb_(static_cast<Eigen::Index>(r));
    if (infeasibility > options_.feasibility_tolerance * rhs_scale) return Outcome::dual_infeasible;

    drive_out_artificials();

    phase_ = 2;
    if (!iterate()) return Outcome::iteration_limit;
    return unbounded_ ? Outcome::dual_unbounded : Outcome::optimal;
  }

  // Simplex multipliers of the equality rows; the primal solution is z = -pi.
  std::vector<double> multipliers() const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(d_));
    for (std::size_t r = 0; r < d_; ++r) cb(static_cast<Eigen::Index>(r)) = cost(basis_[r]);
    Eigen::VectorXd pi = binv_.transpose() * cb;
    std::vector<double> out(d_);
    for (std::size_t k = 0; k < d_; ++k) out[k] = pi(static_cast<Eigen::Index>(k)) * sign_[k];
    return out;
  }

  std::vector<double> dual_values() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < d_; ++r)
      if (basis_[r] < m_) y[basis_[r]] = std::max(0.0, xb_(static_cast<Eigen::Index>(r)));
    return y;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double entry(std::size_t j, std::size_t k) const {
    if (j >= m_) return j - m_ == k ? 1.0 : 0.0;
    return columns_[j * d_ + k] * sign_[k];
  }

  double cost(std::size_t j) const {
    if (phase_ == 1) return j >= m_ ? 1.0 : 0.0;
    return j >= m_ ? 0.0 : -benefit_[j];
  }

  Eigen::VectorXd column(std::size_t j) const {
    Eigen::VectorXd a(static_cast<Eigen::Index>(d_));
    for (std::size_t k = 0; k < d_; ++k) a(static_cast<Eigen::Index>(k)) = entry(j, k);
    return a;
  }

  void refactor() {
    Eigen::MatrixXd b(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
    for (std::size_t r = 0; r < d_; ++r) b.col(static_cast<Eigen::Index>(r)) = column(basis_[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(d_));
    for (std::size_t k = 0; k < d_; ++k) rhs(static_cast<Eigen::Index>(k)) = rhs_[k] * sign_[k];
    xb_ = binv_ * rhs;
    for (Eigen::Index r = 0; r < xb_.size(); ++r)
      if (xb_(r) < 0.0 && xb_(r) > -1e-12) xb_(r) = 0.0;
  }

  void pivot(std::size_t row, std::size_t entering, const Eigen::VectorXd& u) {
    const auto r = static_cast<Eigen::Index>(row);
    const double theta = xb_(r) / u(r);
    xb_ -= theta * u;
    xb_(r) = theta;
    binv_.row(r) /= u(r);
    for (Eigen::Index i = 0; i < binv_.rows(); ++i)
      if (i != r && u(i) != 0.0) binv_.row(i) -= u(i) * binv_.row(r);
    in_basis_[basis_[row]] = false;
    basis_[row] = entering;
    in_basis_[entering] = true;
  }

  bool iterate() {
    std::size_t degenerate_run = 0;
    bool bland = false;
    std::size_t since_refactor = 0;
    double cost_scale = 1.0;
    if (phase_ == 2)
      for (double b : benefit_) cost_scale = std::max(cost_scale, std::abs(b));
    const double dj_tol = 1e-11 * cost_scale;

    while (iterations_ < options_.max_iterations) {
      if (++since_refactor >= 50) {
        refactor();
        since_refactor = 0;
      }
      Eigen::VectorXd cb(static_cast<Eigen::Index>(d_));
      for (std::size_t r = 0; r < d_; ++r) cb(static_cast<Eigen::Index>(r)) = cost(basis_[r]);
      const Eigen::VectorXd pi = binv_.transpose() * cb;

      std::size_t entering = m_ + d_;
      double best = -dj_tol;
      // artificials never re-enter
      for (std::size_t j = 0; j < m_; ++j) {
        if (in_basis_[j]) continue;
        double rj = cost(j);
        const double* col = &columns_[j * d_];
        for (std::size_t k = 0; k < d_; ++k) rj -= pi(static_cast<Eigen::Index>(k)) * col[k] * sign_[k];
        if (rj < best) {
          entering = j;
          if (bland) break;
          best = rj;
        }
      }
      if (entering == m_ + d_) return true;

      const Eigen::VectorXd u = binv_ * column(entering);
      std::size_t leave = d_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < d_; ++r) {
        const double ur = u(static_cast<Eigen::Index>(r));
        if (ur <= options_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, xb_(static_cast<Eigen::Index>(r))) / ur;
        if (leave == d_ || ratio < best_ratio - 1e-14) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-14) {
          const bool prefer = bland ? basis_[r] < basis_[leave]
                                    : ur > u(static_cast<Eigen::Index>(leave));
          if (prefer) leave = r;
        }
      }
      if (leave == d_) {
        if (phase_ == 2) {
          unbounded_ = true;
          return true;
        }
        return true;  // phase 1 objective is bounded below; cannot happen
      }
      pivot(leave, entering, u);
      ++iterations_;
      if (best_ratio < 1e-12) {
        if (++degenerate_run > options_.stall_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
    return false;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < d_; ++r) {
      if (basis_[r] < m_) continue;
      std::size_t chosen = m_;
      double best = 1e-9;
      Eigen::VectorXd u_best;
      for (std::size_t j = 0; j < m_; ++j) {
        if (in_basis_[j]) continue;
        Eigen::VectorXd u = binv_ * column(j);
        if (std::abs(u(static_cast<Eigen::Index>(r))) > best) {
          best = std::abs(u(static_cast<Eigen::Index>(r)));
          chosen = j;
          u_best = std::move(u);
          if (best > 1e-3) break;
        }
      }
      if (chosen < m_) pivot(r, chosen, u_best);
    }
    refactor();
  }

  std::size_t d_;
  std::size_t m_;
  std::vector<double> columns_;  // m x d, primal rows
  std::vector<double> benefit_;  // primal right-hand sides b
  std::vector<double> rhs_;      // primal objective c
  LpOptions options_;

  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int phase_ = 1;
  bool unbounded_ = false;
  std::size_t iterations_ = 0;
};

struct ExpandedRows {
  std::vector<double> rows;  // all primal rows including bound rows
  std::vector<double> bounds;
};

ExpandedRows expand(const LinearProgram& p) {
  const std::size_t d = p.num_variables();
  ExpandedRows out;
  for (std::size_t i = 0; i < p.num_constraints(); ++i) {
    auto r = p.row(i);
    out.rows.insert(out.rows.end(), r.begin(), r.end());
    out.bounds.push_back(p.bound(i));
  }
  for (std::size_t v = 0; v < d; ++v) {
    if (p.lower()[v]) {
      for (std::size_t k = 0; k < d; ++k) out.rows.push_back(k == v ? 1.0 : 0.0);
      out.bounds.push_back(*p.lower()[v]);
    }
  }
  for (std::size_t v = 0; v < d; ++v) {
    if (p.upper()[v]) {
      for (std::size_t k = 0; k < d; ++k) out.rows.push_back(k == v ? -1.0 : 0.0);
      out.bounds.push_back(-*p.upper()[v]);
    }
  }
  return out;
}

double max_violation(const ExpandedRows& e, std::size_t d, const std::vector<double>& z) {
  double worst = 0.0;
  for (std::size_t i = 0; i < e.bounds.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < d; ++k) lhs += e.rows[i * d + k] * z[k];
    worst = std::max(worst, e.bounds[i] - lhs);
  }
  return worst;
}

bool primal_feasible(const ExpandedRows& e, std::size_t d, const LpOptions& options) {
  // min s  s.t.  A z + s >= b, s >= 0
  std::vector<double> objective(d + 1, 0.0);
  objective[d] = 1.0;
  LinearProgram aux(objective);
  std::vector<double> row(d + 1);
  double scale = 1.0;
  for (std::size_t i = 0; i < e.bounds.size(); ++i) {
    std::copy_n(e.rows.begin() + static_cast<std::ptrdiff_t>(i * d), d, row.begin());
    row[d] = 1.0;
    aux.add_constraint(row, e.bounds[i]);
    scale = std::max(scale, std::abs(e.bounds[i]));
  }
  aux.set_lower_bound(d, 0.0);
  const LpSolution s = solve(aux, options);
  return s.status == LpStatus::optimal && s.objective_value <= options.feasibility_tolerance * scale;
}

}  // namespace

LpSolution solve(const LinearProgram& program, const LpOptions& options) {
  const std::size_t d = program.num_variables();
  if (d > kMaxLpVariables)
    throw std::invalid_argument("lp solve supports at most " + std::to_string(kMaxLpVariables) + " variables");

  const ExpandedRows expanded = expand(program);
  const std::size_t m = expanded.bounds.size();

  // Scale every primal row to unit max-norm; the dual variable absorbs the factor.
  std::vector<double> scale(m, 1.0);
  std::vector<double> columns(expanded.rows);
  std::vector<double> benefit(expanded.bounds);
  for (std::size_t i = 0; i < m; ++i) {
    double mx = 0.0;
    for (std::size_t k = 0; k < d; ++k) mx = std::max(mx, std::abs(columns[i * d + k]));
    if (mx > 0.0) {
      scale[i] = 1.0 / mx;
      for (std::size_t k = 0; k < d; ++k) columns[i * d + k] *= scale[i];
      benefit[i] *= scale[i];
    }
  }

  LpSolution out;
  if (d == 0) {
    out.status = LpStatus::optimal;
    for (double b : expanded.bounds)
      if (b > options.feasibility_tolerance) out.status = LpStatus::infeasible;
    return out;
  }

  DualSimplex simplex(columns, benefit, program.objective(), d, options);
  const auto outcome = simplex.run();
  out.iterations = simplex.iterations();
  switch (outcome) {
    case DualSimplex::Outcome::iteration_limit:
      throw std::runtime_error("lp solve: iteration limit reached");
    case DualSimplex::Outcome::dual_unbounded:
      out.status = LpStatus::infeasible;
      return out;
    case DualSimplex::Outcome::dual_infeasible:
      out.status = primal_feasible(expanded, d, options) ? LpStatus::unbounded : LpStatus::infeasible;
      return out;
    case DualSimplex::Outcome::optimal:
      break;
  }

  const std::vector<double> pi = simplex.multipliers();
  std::vector<double> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = -pi[k];

  // Re-solve the active rows in extended precision when the basis is fully structural.
  const auto& basis = simplex.basis();
  if (std::all_of(basis.begin(), basis.end(), [&](std::size_t j) { return j < m; })) {
    using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const auto dd = static_cast<Eigen::Index>(d);
    MatrixL a(dd, dd);
    VectorL b(dd);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t k = 0; k < d; ++k)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = expanded.rows[basis[r] * d + k];
      b(static_cast<Eigen::Index>(r)) = expanded.bounds[basis[r]];
    }
    Eigen::FullPivLU<MatrixL> lu(a);
    if (lu.isInvertible()) {
      VectorL x = lu.solve(b);
      x += lu.solve(VectorL(b - a * x));
      std::vector<double> refined(d);
      for (std::size_t k = 0; k < d; ++k) refined[k] = static_cast<double>(x(static_cast<Eigen::Index>(k)));
      if (max_violation(expanded, d, refined) <= max_violation(expanded, d, z)) z = refined;
    }
  }

  const std::vector<double> y_scaled = simplex.dual_values();
  out.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.dual[i] = y_scaled[i] * scale[i];

  out.status = LpStatus::optimal;
  out.z = z;
  out.objective_value = 0.0;
  for (std::size_t k = 0; k < d; ++k) out.objective_value += program.objective()[k] * z[k];
  out.max_violation = max_violation(expanded, d, z);
  out.dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) out.dual_objective += out.dual[i] * expanded.bounds[i];
  for (std::size_t k = 0; k < d; ++k) {
    double s = -program.objective()[k];
    for (std::size_t i = 0; i < m; ++i) s += out.dual[i] * expanded.rows[i * d + k];
    out.dual_residual = std::max(out.dual_residual, std::abs(s));
  }
  out.duality_gap = std::abs(out.objective_value - out.dual_objective);
  return out;
}

}  // namespace udb
