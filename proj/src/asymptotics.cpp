#include "udb/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udb/specialfn.hpp"

namespace udb::asymptotics {
namespace {

const double kSqrt2OverE = std::sqrt(2.0 / std::numbers::e);

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double c_of(double r) {
  require(r > 0.0 && r <= 1.0, "c(r) needs 0 < r <= 1");
  const double s = std::sqrt(1.0 - r * r);
  return (1.0 + s) * std::exp(-s);
}

double c_prime(double r) {
  require(r > 0.0 && r <= 1.0, "c'(r) needs 0 < r <= 1");
  return r * std::exp(-std::sqrt(1.0 - r * r));
}

double f_of(double r) { return std::sqrt(2.0 * c_of(r) / std::numbers::e); }

double entropy(double a) {
  require(a > 0.0 && a < 1.0, "H(a) needs 0 < a < 1");
  return -xlogx(a) - xlogx(1.0 - a);
}

double entropy2(double u, double v) {
  require(u > 0.0 && v > 0.0 && u + v < 1.0, "H2(u,v) needs u, v > 0 and u + v < 1");
  return -xlogx(u) - xlogx(v) - xlogx(1.0 - u - v);
}

double fw_rate(double a) {
  require(a > 0.0 && a < 0.25, "fw_rate needs 0 < a < 1/4");
  return std::exp(-(entropy(2.0 * a) - entropy(a)));
}

double fw_optimal_a() { return (2.0 - std::numbers::sqrt2) / 4.0; }

double fw_radius(double a) {
  require(a > 0.0 && a < 0.5, "r(a) needs 0 < a < 1/2");
  return std::sqrt(1.0 - 2.0 * a);
}

double r_min(long long n, long long p) {
  require(n > 0 && p > 0 && 2 * p <= n + 1, "r_min needs 0 < p <= (n+1)/2");
  const double nn = static_cast<double>(n), pp = static_cast<double>(p);
  return std::sqrt((nn - 2.0 * pp + 1.0) * (2.0 * pp - 1.0) / (2.0 * nn * pp));
}

Bracket fw_a0(double tol) {
  Bracket b{fw_optimal_a(), 0.25};
  auto g = [](double a) { return a >= 0.25 ? std::exp(-(std::log(2.0) - entropy(0.25))) - kSqrt2OverE
                                           : fw_rate(a) - kSqrt2OverE; };
  if (!(g(b.lo) < 0.0 && g(b.hi) > 0.0)) throw std::logic_error("fw_a0: no sign change on the bracket");
  while (b.hi - b.lo > tol) {
    const double mid = b.mid();
    (g(mid) < 0.0 ? b.lo : b.hi) = mid;
  }
  return b;
}

FwExponentReport fw_exponent_report() {
  FwExponentReport r;
  r.a0 = fw_a0();
  r.r = fw_radius(r.a0.mid());
  r.f = f_of(r.r);
  r.target = 1.0 / 1.262;
  r.passes = r.f < r.target;
  r.optimal_a = fw_optimal_a();
  r.optimal_rate = fw_rate(r.optimal_a);
  for (long long k : {1LL, 10LL, 100LL}) {
    const long long n = 100 * k;
    r.r_min_sequence.push_back(r_min(n, std::llround(r.a0.mid() * static_cast<double>(n))));
  }
  return r;
}

RaigoReport raigo_report(double x1, double x2) {
  require(x2 > 0.0 && x2 <= x1 && x1 + x2 < 1.0, "raigo_report needs 0 < x2 <= x1 and x1 + x2 < 1");
  RaigoReport out;
  out.x1 = x1;
  out.x2 = x2;
  out.z = (x1 + 3.0 * x2) / 2.0;
  const double disc = -3.0 * out.z * out.z + 6.0 * out.z + 1.0;
  require(disc > 0.0, "raigo_report needs -3z^2 + 6z + 1 > 0");
  out.y1 = (-1.0 + std::sqrt(disc)) / 3.0;
  out.b = std::exp(-(entropy2(x1, x2) - entropy2(out.y1, (out.z - out.y1) / 2.0)));
  const double num = (x1 + x2) - (x1 - x2) * (x1 - x2);
  require(num > 0.0, "raigo_report: radius undefined");
  out.r = std::sqrt(num / (x1 + 3.0 * x2));
  out.f = f_of(out.r);
  return out;
}

FixedPoint phi_fixed_point(double r, double gamma) {
  require(r > 0.0 && r < 1.0 && gamma > 0.0, "phi_fixed_point needs 0 < r < 1 and gamma > 0");
  const double g2 = gamma * gamma;
  require(g2 > c_of(r) && c_of(r) > r, "phi_fixed_point needs gamma^2 > c(r) > r");
  auto phi = [&](double x) { return (c_of(std::min(1.0, r * x)) / g2 + x) / 2.0; };
  FixedPoint out;
  double x = 1.0 / g2;
  for (out.iterations = 0; out.iterations < 100000; ++out.iterations) {
    const double next = phi(x);
    if (!(next < x)) out.decreasing = out.decreasing && next == x;
    const double step = std::abs(next - x);
    x = next;
    if (step < 1e-12) break;
  }
  out.limit = x;
  out.residual = std::abs(phi(x) - x);
  if (!(out.limit < 1.0)) throw std::logic_error("phi_fixed_point: limit is not below 1");
  return out;
}

LemmaCertificate lemma_certificate(int n, double r, double gamma, double m, double spacing) {
  require(n >= 2, "lemma_certificate needs n >= 2");
  require(r > 0.0 && r < 1.0 && gamma > 0.0 && m > 0.0, "lemma_certificate needs 0 < r < 1, gamma, m > 0");
  require(spacing > 0.0, "lemma_certificate needs a positive grid spacing");
  const OmegaKernel kernel(n, 30, default_series_cutoff(n));
  // Work with F(t) / m^n = 1 + Omega(t)/m^n + (gamma/m)^n Omega(r t).
  const double inv_mn = std::exp(-n * std::log(m));
  const double ratio_n = std::exp(n * (std::log(gamma) - std::log(m)));
  auto scaled = [&](double t) { return 1.0 + kernel(t) * inv_mn + ratio_n * kernel(r * t); };
  auto tail = [&](double T) { return kernel.tail_bound(T) * inv_mn + ratio_n * kernel.tail_bound(r * T); };

  LemmaCertificate out;
  out.n = n;
  // The tail bound decreases in T: double, then bisect down to the smallest certified horizon.
  double hi = std::max(2.0, 2.0 * kernel.minimum().t_min / r);
  while (tail(hi) > 1.0) {
    hi *= 2.0;
    if (hi > 1e7) return out;  // tail cannot be certified
  }
  double lo = hi / 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > 1.0 ? lo : hi) = mid;
  }
  out.horizon = hi;

  // Omega_n is positive below its first zero, which exceeds n/2 - 1, so both
  // kernel terms are nonnegative there and F > 0.
  const double start = std::max(0.0, n / 2.0 - 1.0);
  const auto steps = static_cast<std::size_t>(std::ceil((out.horizon - start) / spacing));
  out.min_value = std::numeric_limits<double>::infinity();
  double prev2 = std::numeric_limits<double>::infinity(), prev = prev2;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(out.horizon, start + spacing * static_cast<double>(k));
    const double v = scaled(t);
    if (k >= 2 && prev <= prev2 && prev <= v) {
      // refine the local minimum at the previous grid point by golden section
      double a = t - 2.0 * spacing, b = t;
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      for (int it = 0; it < 60; ++it) {
        const double c = b - g * (b - a), d = a + g * (b - a);
        (scaled(c) < scaled(d) ? b : a) = (scaled(c) < scaled(d) ? d : c);
      }
      const double tm = 0.5 * (a + b), vm = scaled(tm);
      if (vm < out.min_value) {
        out.min_value = vm;
        out.min_t = tm;
      }
    }
    if (v < out.min_value) {
      out.min_value = v;
      out.min_t = t;
    }
    prev2 = prev;
    prev = v;
  }
  out.passes = out.min_value >= 0.0;
  return out;
}

LemmaSweep lemma_sweep(double r, double gamma, double m, int n_lo, int n_hi, int span, double spacing) {
  LemmaSweep out;
  int run_start = 0, run = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    out.certificates.push_back(lemma_certificate(n, r, gamma, m, spacing));
    if (out.certificates.back().passes) {
      if (run == 0) run_start = n;
      ++run;
      if (run > span) {
        out.n_star = run_start;
        out.run_length = run;
        return out;
      }
    } else {
      run = 0;
    }
  }
  if (run > 0) {
    out.n_star = run_start;
    out.run_length = run;
  }
  return out;
}

LimitBaseReport limit_base_check() {
  LimitBaseReport out;
  out.f_half = f_of(0.5);
  out.target = 1.0 / 1.316;
  out.exceeds = out.f_half > out.target;
  out.increasing = true;
  double prev = f_of(0.5);
  for (int k = 51; k <= 99; ++k) {
    const double v = f_of(k / 100.0);
    out.increasing = out.increasing && v > prev;
    prev = v;
  }
  return out;
}

}  // namespace udb::asymptotics
