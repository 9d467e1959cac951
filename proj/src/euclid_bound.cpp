#include "udb/euclid_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "udb/lp.hpp"

namespace udb {
namespace {

constexpr std::size_t kRefinedMinima = 5;
constexpr double kMaxHorizon = 1e6;

void validate(const BoundProblem& p) {
  if (p.n < 2) throw std::invalid_argument("BoundProblem: n must be at least 2");
  if (p.samples < 10) throw std::invalid_argument("BoundProblem: at least 10 samples required");
  if (!(p.t_max > 0.0)) throw std::invalid_argument("BoundProblem: t_max must be positive");
  if (!(p.refine_tol > 0.0)) throw std::invalid_argument("BoundProblem: refine_tol must be positive");
  if (p.constraints.size() + 2 > 64) throw std::invalid_argument("BoundProblem: at most 62 subgraph constraints");
  for (const auto& c : p.constraints) {
    if (c.profile.empty()) throw std::invalid_argument("SubgraphConstraint: empty radial profile");
    double total = 0.0;
    for (const auto& s : c.profile) {
      if (!(s.radius > 0.0) || !std::isfinite(s.radius))
        throw std::invalid_argument("SubgraphConstraint: radii must be positive");
      if (!(s.weight > 0.0) || !std::isfinite(s.weight))
        throw std::invalid_argument("SubgraphConstraint: weights must be positive");
      total += s.weight;
    }
    if (!(total > 0.0) || !std::isfinite(total)) throw std::invalid_argument("SubgraphConstraint: bad total weight");
    if (!(c.alpha_ratio > 0.0) || c.alpha_ratio > 1.0)
      throw std::invalid_argument("SubgraphConstraint: alpha_ratio must lie in (0, 1]");
  }
}

// F(t) and its ingredients for one problem.
class ConstraintFunction {
 public:
  explicit ConstraintFunction(const BoundProblem& p) : p_(p), kernel_(p.n) {
    for (const auto& c : p.constraints) {
      double total = 0.0;
      for (const auto& s : c.profile) total += s.weight;
      totals_.push_back(total);
    }
  }

  const OmegaKernel& kernel() const { return kernel_; }
  std::size_t vars() const { return p_.constraints.size() + 2; }

  /// Coefficient of z_j in F(t); column 0 is the constant 1.
  double column(std::size_t j, double t) const {
    if (j == 0) return 1.0;
    if (j == 1) return kernel_(t);
    const auto& c = p_.constraints[j - 2];
    double acc = 0.0;
    for (const auto& s : c.profile) acc += s.weight * kernel_(s.radius * t);
    return acc / totals_[j - 2];
  }

  std::vector<double> columns_at(double t) const {
    std::vector<double> out(vars());
    for (std::size_t j = 0; j < vars(); ++j) out[j] = column(j, t);
    return out;
  }

  /// Columns 1.. sampled on a grid, parallel over grid points.
  std::vector<std::vector<double>> sample(std::span<const double> t) const {
    std::vector<std::vector<double>> cols;
    cols.push_back(grid::sample_omega(kernel_, t));
    for (const auto& c : p_.constraints) cols.push_back(grid::sample_profile(kernel_, c.profile, t));
    return cols;
  }

  double value(std::span<const double> z, double t) const {
    double f = 0.0;
    for (std::size_t j = 0; j < vars(); ++j) f += z[j] * column(j, t);
    return f;
  }

  /// Upper bound for |F(t) - z0| over t >= T.
  double tail_sum(std::span<const double> z, double T) const {
    double acc = std::abs(z[1]) * kernel_.tail_bound(T);
    for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
      double shell = 0.0;
      for (const auto& s : p_.constraints[i].profile) shell += s.weight * kernel_.tail_bound(s.radius * T);
      acc += std::abs(z[i + 2]) * shell / totals_[i];
    }
    return acc;
  }

  double objective(std::span<const double> z) const {
    double o = z[0];
    for (std::size_t i = 0; i < p_.constraints.size(); ++i) o += z[i + 2] * p_.constraints[i].alpha_ratio;
    return o;
  }

 private:
  const BoundProblem& p_;
  OmegaKernel kernel_;
  std::vector<double> totals_;
};

struct Minimum {
  double t, value;
};

// Sampled F on a fixed grid, reusable across z.
class GridScan {
 public:
  GridScan(const ConstraintFunction& f, double t_max, std::size_t samples)
      : f_(f), t_(grid::uniform(0.0, t_max, samples)), cols_(f.sample(t_)) {}

  const std::vector<double>& points() const { return t_; }
  double column(std::size_t j, std::size_t k) const { return j == 0 ? 1.0 : cols_[j - 1][k]; }

  double value(std::span<const double> z, std::size_t k) const {
    double v = z[0];
    for (std::size_t j = 1; j < f_.vars(); ++j) v += z[j] * cols_[j - 1][k];
    return v;
  }

  /// Grid minimum refined by golden section around the lowest local minima.
  /// Returns the refined minima, lowest first.
  std::vector<Minimum> minima(std::span<const double> z) const {
    const std::size_t m = t_.size();
    std::vector<double> v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = value(z, k);
    std::vector<std::size_t> local;
    for (std::size_t k = 0; k < m; ++k) {
      const bool left = k == 0 || v[k] <= v[k - 1];
      const bool right = k + 1 == m || v[k] <= v[k + 1];
      if (left && right) local.push_back(k);
    }
    std::sort(local.begin(), local.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    if (local.size() > kRefinedMinima) local.resize(kRefinedMinima);
    std::vector<Minimum> out;
    for (std::size_t k : local) {
      const double a = t_[k == 0 ? 0 : k - 1];
      const double b = t_[std::min(k + 1, m - 1)];
      Minimum best = golden_section(z, a, b);
      if (v[k] < best.value) best = {t_[k], v[k]};
      out.push_back(best);
    }
    std::sort(out.begin(), out.end(), [](const Minimum& a, const Minimum& b) { return a.value < b.value; });
    return out;
  }

 private:
  Minimum golden_section(std::span<const double> z, double a, double b) const {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f_.value(z, c), fd = f_.value(z, d);
    for (int it = 0; it < 80 && b - a > 1e-13 * std::max(1.0, b); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = f_.value(z, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = f_.value(z, d);
      }
    }
    return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
  }

  const ConstraintFunction& f_;
  std::vector<double> t_;
  std::vector<std::vector<double>> cols_;
};

double default_horizon(const BoundProblem& p, const OmegaKernel& k) {
  return std::max(p.t_max, 2.0 * k.minimum().t_min);
}

// Smallest doubling of T at which the tail is dominated by z0.
double certified_horizon(const ConstraintFunction& f, std::span<const double> z, double T) {
  while (f.tail_sum(z, T) > z[0]) {
    T *= 2.0;
    if (T > kMaxHorizon) return std::numeric_limits<double>::infinity();
  }
  return T;
}

std::size_t scaled_samples(const BoundProblem& p, double horizon) {
  const double spacing = p.t_max / static_cast<double>(p.samples - 1);
  return std::max(p.samples, static_cast<std::size_t>(std::ceil(horizon / spacing)) + 1);
}

CertificationReport certify(const ConstraintFunction& f, std::span<const double> z, const BoundProblem& p,
                            double horizon, double tolerance) {
  CertificationReport r;
  r.objective = f.objective(z);
  r.t_max = horizon;
  const std::size_t samples = scaled_samples(p, horizon);
  const GridScan scan(f, horizon, samples);
  const auto mins = scan.minima(z);
  r.grid_min = mins.front().value;
  r.grid_min_t = mins.front().t;
  r.tail_margin = z[0] - f.tail_sum(z, horizon);
  const GridScan fine(f, horizon, 10 * (samples - 1) + 1);
  r.fine_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < fine.points().size(); ++k) r.fine_min = std::min(r.fine_min, fine.value(z, k));
  r.feasible = r.grid_min >= -tolerance && r.tail_margin >= 0.0;
  return r;
}

struct Attempt {
  std::vector<double> z;
  double sampled_objective = 0.0;
  double grid_min = 0.0;
  std::size_t rounds = 0;
};

Attempt solve_sampled(const ConstraintFunction& f, const BoundProblem& p, double horizon) {
  const std::size_t vars = f.vars();
  std::vector<double> objective(vars, 0.0);
  objective[0] = 1.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) objective[i + 2] = p.constraints[i].alpha_ratio;
  LinearProgram lp(objective);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) lp.set_lower_bound(i + 2, 0.0);
  lp.add_constraint(std::vector<double>(vars, 1.0), 1.0);

  const GridScan scan(f, horizon, scaled_samples(p, horizon));
  std::vector<double> row(vars);
  for (std::size_t k = 0; k < scan.points().size(); ++k) {
    for (std::size_t j = 0; j < vars; ++j) row[j] = scan.column(j, k);
    lp.add_constraint(row, 0.0);
  }

  Attempt a;
  for (;; ++a.rounds) {
    const LpSolution sol = solve(lp);
    if (sol.status != LpStatus::optimal)
      throw std::logic_error("sampled program is " + to_string(sol.status) + " for n = " + std::to_string(p.n));
    a.z = sol.z;
    a.sampled_objective = sol.objective_value;
    const auto mins = scan.minima(a.z);
    a.grid_min = mins.front().value;
    if (a.grid_min >= -p.refine_tol || a.rounds >= p.max_cut_rounds) break;
    for (const auto& m : mins)
      if (m.value < -p.refine_tol) lp.add_constraint(f.columns_at(m.t), 0.0);
  }
  return a;
}

}  // namespace

double theta_infinity(int n) {
  const double v = first_bessel_zero(n).value;
  return -v / (1.0 - v);
}

CertifiedBound solve_theta_g(const BoundProblem& problem) {
  validate(problem);
  const ConstraintFunction f(problem);
  double horizon = default_horizon(problem, f.kernel());

  for (int attempt = 0; attempt < 2; ++attempt) {
    Attempt a = solve_sampled(f, problem, horizon);
    CertifiedBound out;
    out.sampled_objective = a.sampled_objective;
    out.cut_rounds = a.rounds;
    out.bump = std::max(0.0, -a.grid_min) + problem.refine_tol;
    out.z = a.z;
    out.z[0] += out.bump;

    const double needed = certified_horizon(f, out.z, horizon);
    if (needed > horizon) {
      if (attempt == 1 || !std::isfinite(needed)) break;
      horizon = 1.25 * needed;  // room for the re-solved vector
      continue;
    }
    out.report = certify(f, out.z, problem, horizon, problem.refine_tol);
    out.objective = out.report.objective;
    if (out.report.grid_min < 0.0)
      throw std::logic_error("certified vector still violates F >= 0 at t = " + std::to_string(out.report.grid_min_t));
    return out;
  }
  throw std::runtime_error("tail certification failed for n = " + std::to_string(problem.n) +
                           " even after raising t_max");
}

CertificationReport verify_feasible(std::span<const double> z, const BoundProblem& problem, double tolerance) {
  validate(problem);
  const ConstraintFunction f(problem);
  if (z.size() != f.vars())
    throw std::invalid_argument("verify_feasible: expected " + std::to_string(f.vars()) + " coordinates");
  double horizon = default_horizon(problem, f.kernel());
  const double needed = certified_horizon(f, z, horizon);
  if (std::isfinite(needed)) horizon = needed;
  return certify(f, z, problem, horizon, tolerance);
}

std::uint64_t chromatic_lower(double bound) {
  if (!(bound > 0.0) || !(bound < 1.0)) throw std::domain_error("chromatic_lower: bound must lie in (0, 1)");
  const double inv = 1.0 / bound;
  const double nearest = std::round(inv);
  if (std::abs(inv - nearest) <= 1e-12 * inv) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(inv));
}

}  // namespace udb
