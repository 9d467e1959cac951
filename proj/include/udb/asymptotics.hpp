#pragma once

#include <cstddef>
#include <vector>

namespace udb::asymptotics {

/// c(r) = (1 + sqrt(1-r^2)) e^{-sqrt(1-r^2)}, 0 < r <= 1.
double c_of(double r);
/// c'(r) = r e^{-sqrt(1-r^2)}
double c_prime(double r);
/// f(r) = sqrt(2 c(r) / e), the exponential base of the bound at radius r.
double f_of(double r);

/// H(a) = -a ln a - (1-a) ln(1-a), 0 < a < 1.
double entropy(double a);
/// H2(u,v) = -u ln u - v ln v - (1-u-v) ln(1-u-v).
double entropy2(double u, double v);

/// b(a) = e^{-(H(2a) - H(a))}, 0 < a < 1/4.
double fw_rate(double a);
/// The minimiser (2 - sqrt 2)/4 of fw_rate.
double fw_optimal_a();
/// r(a) = sqrt(1 - 2a)
double fw_radius(double a);
/// sqrt((n - 2p + 1)(2p - 1) / (2 n p)), the smallest radius realised with p ~ a n.
double r_min(long long n, long long p);

struct Bracket {
  double lo = 0.0, hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

/// Root of fw_rate(a) = sqrt(2/e) on [(2-sqrt 2)/4, 1/4], bisected to `tol`.
Bracket fw_a0(double tol = 1e-12);

struct FwExponentReport {
  Bracket a0;
  double r = 0.0;       // r(a0)
  double f = 0.0;       // f(r(a0))
  double target = 0.0;  // 1/1.262
  bool passes = false;  // f < target
  double optimal_a = 0.0;
  double optimal_rate = 0.0;  // fw_rate at the minimiser
  std::vector<double> r_min_sequence;  // r_min(100k, round(a0 100k)) for k = 1, 10, 100
};
FwExponentReport fw_exponent_report();

struct RaigoReport {
  double x1 = 0.0, x2 = 0.0;
  double z = 0.0;   // (x1 + 3 x2)/2
  double y1 = 0.0;  // (-1 + sqrt(-3z^2 + 6z + 1))/3, maximiser of H2(u, (z-u)/2)
  double b = 0.0;   // e^{-(H2(x1,x2) - H2(y1, (z - y1)/2))}
  double r = 0.0;   // sqrt(((x1+x2) - (x1-x2)^2) / (x1 + 3 x2))
  double f = 0.0;   // f(r)
};
RaigoReport raigo_report(double x1, double x2);

struct FixedPoint {
  double limit = 0.0;
  std::size_t iterations = 0;
  bool decreasing = true;  // every step moved strictly downwards
  double residual = 0.0;   // |phi(l) - l|
};

/// phi(x) = (c(r x)/gamma^2 + x)/2 iterated from 1/gamma^2 until steps fall below 1e-12.
/// Requires gamma^2 > c(r) > r.
FixedPoint phi_fixed_point(double r, double gamma);

struct LemmaCertificate {
  int n = 0;
  bool passes = false;
  double min_value = 0.0;  // min over the grid of F(t) / m^n
  double min_t = 0.0;
  double horizon = 0.0;    // tail certified beyond this point
};

/// Checks m^n + Omega_n(t) + gamma^n Omega_n(r t) >= 0 on a grid of the given
/// spacing over [0, T] plus an envelope bound beyond T.
LemmaCertificate lemma_certificate(int n, double r, double gamma, double m, double spacing = 0.05);

struct LemmaSweep {
  int n_star = 0;                              // first n of a passing run, 0 if none
  int run_length = 0;                          // consecutive passes from n_star
  std::vector<LemmaCertificate> certificates;  // every n examined
};

/// Scans n = n_lo.. and returns the first n* with passes on [n*, n* + span].
LemmaSweep lemma_sweep(double r, double gamma, double m, int n_lo, int n_hi, int span, double spacing = 0.05);

struct LimitBaseReport {
  double f_half = 0.0;  // f(1/2)
  double target = 0.0;  // 1/1.316
  bool exceeds = false;
  bool increasing = false;  // on r = 0.50, 0.51, ..., 0.99
};
LimitBaseReport limit_base_check();

}  // namespace udb::asymptotics
