#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "udb/lp.hpp"

using udb::LinearProgram;
using udb::LpStatus;

namespace {

// Minimum over all feasible vertices, enumerating every d-subset of constraints.
double vertex_enumeration(const std::vector<std::vector<double>>& rows, const std::vector<double>& b,
                          const std::vector<double>& c) {
  const int d = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  while (true) {
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd rhs(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) A(i, j) = rows[pick[i]][j];
      rhs(i) = b[pick[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() == d) {
      const Eigen::VectorXd z = lu.solve(rhs);
      bool ok = true;
      for (int r = 0; r < m && ok; ++r) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += rows[r][j] * z(j);
        ok = s >= b[r] - 1e-9;
      }
      if (ok) {
        double v = 0.0;
        for (int j = 0; j < d; ++j) v += c[j] * z(j);
        best = std::min(best, v);
      }
    }
    int k = d - 1;
    while (k >= 0 && pick[k] == m - d + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("single active constraint") {
  LinearProgram p({1.0});
  const double row[] = {1.0};
  p.add_constraint(row, 3.0);
  const auto s = udb::solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.z[0] == doctest::Approx(3.0));
  CHECK(s.objective_value == doctest::Approx(3.0));
}

TEST_CASE("simplex face") {
  LinearProgram p({1.0, 1.0});
  p.set_lower_bound(0, 0.0);
  p.set_lower_bound(1, 0.0);
  const double row[] = {1.0, 1.0};
  p.add_constraint(row, 1.0);
  const auto s = udb::solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == doctest::Approx(1.0));
  CHECK(s.max_violation <= 1e-9);
  CHECK(s.duality_gap <= 1e-9);
}

TEST_CASE("infeasible and unbounded programs") {
  {
    LinearProgram p({1.0});
    const double up[] = {1.0}, down[] = {-1.0};
    p.add_constraint(up, 2.0);
    p.add_constraint(down, -1.0);  // z <= 1
    CHECK(udb::solve(p).status == LpStatus::infeasible);
  }
  {
    LinearProgram p({1.0, -1.0});
    CHECK(udb::solve(p).status == LpStatus::unbounded);
  }
  {
    LinearProgram p({-1.0});
    const double row[] = {1.0};
    p.add_constraint(row, 0.0);
    CHECK(udb::solve(p).status == LpStatus::unbounded);
  }
  {
    LinearProgram p({0.0, 0.0});
    const auto s = udb::solve(p);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective_value == 0.0);
  }
}

TEST_CASE("dimension mismatch") {
  LinearProgram p({1.0, 2.0});
  const double row[] = {1.0};
  CHECK_THROWS_AS(p.add_constraint(row, 0.0), std::invalid_argument);
}

TEST_CASE("degenerate program with redundant constraints") {
  // Many constraints through the same optimal vertex (0, 0).
  LinearProgram p({1.0, 1.0});
  for (int k = 0; k <= 40; ++k) {
    const double a = k / 40.0;
    const double row[] = {a, 1.0 - a};
    p.add_constraint(row, 0.0);
  }
  const double x[] = {1.0, 0.0}, y[] = {0.0, 1.0};
  p.add_constraint(x, 0.0);
  p.add_constraint(y, 0.0);
  const auto s = udb::solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(std::abs(s.objective_value) < 1e-12);
}

TEST_CASE("random programs match vertex enumeration") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 4), counts(1, 46);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = dims(rng);
    const int m = counts(rng);
    std::vector<double> c(d), x0(d);
    for (auto& v : c) v = coef(rng);
    for (auto& v : x0) v = 3.0 * coef(rng);
    std::vector<std::vector<double>> rows;
    std::vector<double> b;
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(d);
      double s = 0.0;
      for (int j = 0; j < d; ++j) {
        row[j] = coef(rng);
        s += row[j] * x0[j];
      }
      rows.push_back(row);
      b.push_back(s - std::abs(coef(rng)));  // x0 stays feasible
    }
    for (int j = 0; j < d; ++j) {  // box -10 <= z_j <= 10 keeps it bounded
      std::vector<double> lo(d, 0.0), hi(d, 0.0);
      lo[j] = 1.0;
      hi[j] = -1.0;
      rows.push_back(lo);
      b.push_back(-10.0);
      rows.push_back(hi);
      b.push_back(-10.0);
    }
    LinearProgram p(c);
    for (std::size_t i = 0; i < rows.size(); ++i) p.add_constraint(rows[i], b[i]);
    const auto s = udb::solve(p);
    CAPTURE(trial);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.max_violation <= 1e-9);
    CHECK(std::abs(s.objective_value - vertex_enumeration(rows, b, c)) <= 1e-8);
    CHECK(s.duality_gap <= 1e-8);
  }
}
