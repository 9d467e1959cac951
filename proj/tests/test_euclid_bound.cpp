#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "udb/euclid_bound.hpp"
#include "udb/geometry.hpp"

using namespace udb;

namespace {

SubgraphConstraint constraint_for(const std::string& spec, double alpha) {
  const UnitDistanceGraph g = build_graph(parse_graph_spec(spec));
  return {g.radial_profile(), alpha / g.total_weight(), spec};
}

SubgraphConstraint sphere(double radius, double ratio) { return {{{radius, 1.0}}, ratio, "sphere"}; }

}  // namespace

TEST_CASE("theta_infinity from the kernel minimum") {
  // global minima of Omega_n from a 50-digit mpmath evaluation
  const std::pair<int, double> minima[] = {{2, -0.40275939570255297}, {3, -0.21723362821122166},
                                           {4, -0.13227948739610003}, {8, -0.029479764332190254},
                                           {24, -4.753530585904068e-4}, {64, -1.5100619865501445e-7}};
  for (auto [n, m] : minima) {
    CAPTURE(n);
    CHECK(std::abs(theta_infinity(n) - (-m / (1.0 - m))) < 1e-12 * (-m));
  }
  CHECK(std::abs(theta_infinity(2) - 0.287119371245) < 1e-12);
  CHECK_THROWS(theta_infinity(1));
}

TEST_CASE("program without subgraphs reproduces theta_infinity") {
  for (int n : {2, 3, 5, 8}) {
    CAPTURE(n);
    BoundProblem p;
    p.n = n;
    const CertifiedBound b = solve_theta_g(p);
    CHECK(b.report.feasible);
    CHECK(b.objective >= theta_infinity(n) - 1e-12);
    CHECK(b.objective <= theta_infinity(n) + 1e-7);
    REQUIRE(b.z.size() == 2);
    CHECK(std::abs(b.z[0] + b.z[1] - 1.0 - b.bump) < 1e-12);
  }
}

TEST_CASE("600-cell bound in dimension 4") {
  BoundProblem p;
  p.n = 4;
  p.constraints.push_back(constraint_for("600cell:dsq=3", 26));
  const CertifiedBound b = solve_theta_g(p);
  CHECK(b.report.feasible);
  CHECK(b.report.fine_min >= -1e-12);
  CHECK(b.objective <= 0.100062 + 1e-6);
  CHECK(b.objective >= b.sampled_objective);
  CHECK(b.objective < theta_infinity(4));
  CHECK(chromatic_lower(b.objective) == 10);

  // the printed vector passes the verifier on its own
  const std::vector<double> printed{0.0421343, 0.690511, 0.267355};
  const CertificationReport r = verify_feasible(printed, p);
  CHECK(r.feasible);
  CHECK(std::abs(r.objective - 0.100062) < 1e-6);
}

TEST_CASE("subgraph constraints only lower the bound") {
  BoundProblem base;
  base.n = 6;
  const double plain = solve_theta_g(base).objective;

  double previous = plain;
  for (double ratio : {0.5, 0.3, 0.2}) {
    BoundProblem p = base;
    p.constraints.push_back(sphere(0.6, ratio));
    const double v = solve_theta_g(p).objective;
    CHECK(v <= previous + 1e-9);
    previous = v;
  }

  BoundProblem a = base, b = base, both = base;
  a.constraints.push_back(sphere(0.6, 0.25));
  b.constraints.push_back(sphere(0.8, 0.3));
  both.constraints = {a.constraints[0], b.constraints[0]};
  const CertifiedBound sa = solve_theta_g(a), sb = solve_theta_g(b), sboth = solve_theta_g(both);
  CHECK(sboth.z.size() == 4);
  CHECK(sboth.report.feasible);
  CHECK(sboth.objective <= std::min(sa.objective, sb.objective) + 1e-9);
}

TEST_CASE("verifier rejects infeasible vectors") {
  BoundProblem p;
  p.n = 3;
  const double ti = theta_infinity(3);
  const std::vector<double> good{ti + 1e-6, 1.0 - ti};
  CHECK(verify_feasible(good, p).feasible);
  const std::vector<double> bad{0.5 * ti, 1.0 - ti};
  const CertificationReport r = verify_feasible(bad, p);
  CHECK_FALSE(r.feasible);
  CHECK(r.grid_min < 0.0);
  CHECK(std::abs(r.grid_min_t - 4.493409457909064) < 1e-4);
  CHECK_THROWS_AS(verify_feasible(std::vector<double>{1.0}, p), std::invalid_argument);
}

TEST_CASE("constraint validation") {
  BoundProblem p;
  p.n = 4;
  p.constraints.push_back(sphere(0.5, 1.5));
  CHECK_THROWS_AS(solve_theta_g(p), std::invalid_argument);
  p.constraints = {SubgraphConstraint{{}, 0.5, "empty"}};
  CHECK_THROWS_AS(solve_theta_g(p), std::invalid_argument);
  p.constraints = {sphere(0.5, 0.5)};
  p.n = 1;
  CHECK_THROWS(solve_theta_g(p));
}

TEST_CASE("chromatic lower bound") {
  CHECK(chromatic_lower(0.1) == 10);
  CHECK(chromatic_lower(0.1 * (1.0 + 1e-13)) == 10);
  CHECK(chromatic_lower(0.0999) == 11);
  CHECK(chromatic_lower(0.100062) == 10);
  CHECK(chromatic_lower(1.84366e-4) == 5424);
  CHECK(chromatic_lower(0.5) == 2);
  CHECK_THROWS(chromatic_lower(1.0));
  CHECK_THROWS(chromatic_lower(0.0));
}
