#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udb/asymptotics.hpp"

using namespace udb::asymptotics;

namespace {
const double kSqrt2OverE = std::sqrt(2.0 / std::numbers::e);

// Maximiser of u -> H2(u, (z - u)/2) by ternary search, independent of the closed form.
double argmax_h2(double z) {
  double lo = 1e-12, hi = z - 1e-12;
  for (int it = 0; it < 300; ++it) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    (entropy2(a, (z - a) / 2.0) < entropy2(b, (z - b) / 2.0) ? lo : hi) = (entropy2(a, (z - a) / 2.0) < entropy2(b, (z - b) / 2.0) ? a : b);
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("rate function identities") {
  CHECK(c_of(1.0) == 1.0);
  for (int k = 1; k <= 9; ++k) CHECK(c_of(k / 10.0) > k / 10.0);
  for (int k = 1; k < 100; ++k) {
    const double x = k / 100.0, h = 1e-6;
    const double fd = (c_of(std::min(1.0, x + h)) - c_of(x - h)) / (std::min(1.0, x + h) - (x - h));
    CHECK(std::abs(fd - c_prime(x)) < 1e-6);
    CHECK(c_prime(x) > 0.0);
  }
  const double s = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(c_of(0.5) - (1.0 + s) * std::exp(-s)) < 1e-15);
  CHECK_THROWS_AS(c_of(0.0), std::domain_error);
  CHECK_THROWS_AS(c_of(1.5), std::domain_error);
  CHECK_THROWS_AS(entropy(1.0), std::domain_error);
  CHECK_THROWS_AS(fw_rate(0.25), std::domain_error);
}

TEST_CASE("Frankl-Wilson rate and a0") {
  const double a = fw_optimal_a();
  CHECK(fw_rate(a) < 1.0 / 1.207);
  for (int k = -50; k <= 50; ++k)
    if (k != 0) CHECK(fw_rate(a + k * 1e-3) > fw_rate(a));
  CHECK(std::abs(fw_rate(1e-4) - 1.0) < 2e-3);

  const Bracket b = fw_a0();
  CHECK(b.hi - b.lo <= 1e-12);
  CHECK(fw_rate(b.lo) <= kSqrt2OverE);
  CHECK(fw_rate(b.hi) >= kSqrt2OverE);
  CHECK(b.lo >= 0.2268);
  CHECK(b.hi <= 0.2269);

  const FwExponentReport rep = fw_exponent_report();
  CHECK(rep.passes);
  CHECK(rep.f < 1.0 / 1.262);
  // sqrt(1 - 2 a0) with a0 = 0.226832665633
  CHECK(std::abs(rep.r - 0.7391446) < 1e-6);
  REQUIRE(rep.r_min_sequence.size() == 3);
  CHECK(std::abs(rep.r_min_sequence.back() - rep.r) < 1e-2);
  CHECK(std::abs(rep.r_min_sequence[2] - rep.r) < std::abs(rep.r_min_sequence[0] - rep.r));
}

TEST_CASE("Raigorodskii exponent at (0.22, 0.20)") {
  const RaigoReport rep = raigo_report(0.22, 0.20);
  CHECK(std::abs(rep.z - 0.41) < 1e-15);
  CHECK(std::abs(rep.y1 - argmax_h2(rep.z)) < 1e-7);
  CHECK(rep.b < kSqrt2OverE);
  CHECK(rep.f < 1.0 / 1.268);
  CHECK(std::abs(rep.r - std::sqrt(0.4196 / 0.82)) < 1e-15);

  const RaigoReport eq = raigo_report(0.2, 0.2);
  CHECK(std::abs(eq.r - std::sqrt(0.5)) < 1e-15);
  CHECK_THROWS_AS(raigo_report(0.1, 0.2), std::domain_error);
}

TEST_CASE("fixed point of phi") {
  const double r = 0.74;
  for (double extra : {0.01, 0.05}) {
    const FixedPoint fp = phi_fixed_point(r, std::sqrt(c_of(r)) + extra);
    CHECK(fp.limit < 1.0);
    CHECK(fp.residual < 1e-10);
    CHECK(fp.decreasing);
  }
  CHECK_THROWS_AS(phi_fixed_point(r, 0.5), std::domain_error);
}

TEST_CASE("lemma certifier") {
  const double r = 0.74, gamma = std::sqrt(c_of(r)) + 0.05;
  const double m = gamma * kSqrt2OverE + 0.05;

  const LemmaSweep sweep = lemma_sweep(r, gamma, m, 2, 200, 50);
  CHECK(sweep.n_star == 2);
  CHECK(sweep.run_length == 51);
  const LemmaSweep fine = lemma_sweep(r, gamma, m, 2, 200, 50, 0.025);
  CHECK(fine.n_star == sweep.n_star);
  CHECK(fine.run_length == sweep.run_length);
  for (const auto& c : sweep.certificates) CHECK(c.horizon > 0.0);

  // m below gamma sqrt(2/e): the gamma^n term wins once n is large.
  const double bad_m = gamma * kSqrt2OverE - 0.05;
  CHECK(lemma_certificate(10, r, gamma, bad_m).passes);
  const LemmaCertificate bad = lemma_certificate(300, r, gamma, bad_m);
  CHECK_FALSE(bad.passes);
  CHECK(bad.min_value < 0.0);
  CHECK(bad.min_t > 0.0);
  CHECK(bad.min_t <= bad.horizon);
}

TEST_CASE("limiting base") {
  const LimitBaseReport rep = limit_base_check();
  CHECK(rep.exceeds);
  CHECK(rep.increasing);
  CHECK(rep.f_half > 1.0 / 1.316);
}
