#include "udb/specialfn.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace udb {
namespace {

using quad = __float128;

constexpr double kAccuracy = 1e-13;

void check_dimension(int n) {
  if (n < 2) throw std::invalid_argument("Omega_n requires n >= 2, got " + std::to_string(n));
}

void check_argument(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::domain_error("Omega_n is evaluated at t >= 0 only, got " + std::to_string(t));
}

// 0F1(; n/2; -t^2/4), Kahan-compensated in quad precision.
double series_value(int n, double t, int work_digits) {
  const quad x = -static_cast<quad>(t) * static_cast<quad>(t) / 4;
  const quad a = static_cast<quad>(n) / 2;
  quad term = 1, sum = 1, carry = 0, magnitude = 1;
  int k = 1;
  for (; k < 100000; ++k) {
    term *= x / (static_cast<quad>(k) * (a + k - 1));
    const quad y = term - carry;
    const quad s = sum + y;
    carry = (s - sum) - y;
    sum = s;
    magnitude += fabsq(term);
    if (static_cast<quad>(k) > fabsq(x) && fabsq(term) < 1e-40Q * fmaxq(fabsq(sum), 1e-300Q)) break;
  }
  const double err = static_cast<double>(magnitude) * std::pow(10.0, -work_digits) * std::sqrt(k);
  if (err > kAccuracy) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "series for Omega_%d(%.6g) has error estimate %.3g", n, t, err);
    throw PrecisionLoss(msg);
  }
  return static_cast<double>(sum);
}

// J_nu(t) for nu = n/2 - 1 by Miller's backward recurrence.
quad bessel_j_miller(int n, quad t) {
  const quad big = 1e1000Q;
  const double order = n / 2.0 - 1.0;
  const double top = std::max(order, static_cast<double>(t));
  int start = static_cast<int>(std::ceil(top + 30.0 + 10.0 * std::sqrt(top)));
  start = std::max(start, 60);
  start += start % 2;

  if (n % 2 == 0) {
    // Integer order m; normalize with J_0 + 2 sum J_{2k} = 1.
    const int m = n / 2 - 1;
    quad upper = 0, current = 1e-60Q, answer = 0, norm = 0;
    for (int k = start; k >= 1; --k) {
      const quad lower = (2 * k / t) * current - upper;
      upper = current;
      current = lower;  // order k - 1
      if (k - 1 == m) answer = current;
      if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2 * current;
      if (fabsq(current) > big) {
        current /= big;
        upper /= big;
        norm /= big;
        answer /= big;
      }
    }
    norm += current;
    return answer / norm;
  }

  // Half-integer order m + 1/2; normalize against J_{1/2} or J_{-1/2}.
  const int m = (n - 3) / 2;
  quad upper = 0, current = 1e-60Q, answer = 0, half = 0;
  for (int k = start; k >= 0; --k) {
    // current holds J_{k+1/2}, upper holds J_{k+3/2}
    if (k == m) answer = current;
    if (k == 0) half = current;
    const quad lower = (2 * (k + 0.5Q) / t) * current - upper;
    upper = current;
    current = lower;  // order k - 1/2
    if (fabsq(current) > big) {
      current /= big;
      upper /= big;
      answer /= big;
      half /= big;
    }
  }
  const quad minus_half = current;
  const quad amplitude = sqrtq(2 / (M_PIq * t));
  const quad s = sinq(t), c = cosq(t);
  const quad scale = fabsq(s) >= fabsq(c) ? amplitude * s / half : amplitude * c / minus_half;
  return answer * scale;
}

double recurrence_value(int n, double t) {
  if (t == 0.0) return 1.0;
  const quad tq = t;
  const quad nu = static_cast<quad>(n) / 2 - 1;
  const quad prefactor = expq(lgammaq(static_cast<quad>(n) / 2) + nu * logq(2 / tq));
  return static_cast<double>(prefactor * bessel_j_miller(n, tq));
}

double omega_value(int n, double t, double cutoff, int work_digits) {
  return t <= cutoff ? series_value(n, t, work_digits) : recurrence_value(n, t);
}

KernelMinimum locate_minimum(int n) {
  // Omega_n' = -(t/n) Omega_{n+2}, so the minimum sits at the first zero of Omega_{n+2}.
  const int m = n + 2;
  const double cutoff_m = default_series_cutoff(m);
  auto derivative_sign = [&](double t) { return omega_value(m, t, cutoff_m, 30); };

  const double half = n / 2.0;
  const double limit = half + 20.0 * (1.0 + std::cbrt(half));
  double lo = half;
  double f_lo = derivative_sign(lo);
  if (!(f_lo > 0.0))
    throw std::runtime_error("first_bessel_zero: J_{n/2} not positive at n/2 for n = " +
                             std::to_string(n));
  double hi = lo;
  double f_hi = f_lo;
  while (f_hi > 0.0) {
    lo = hi;
    hi += 0.1;
    if (hi > limit)
      throw std::runtime_error("first_bessel_zero: no sign change in bracket for n = " +
                               std::to_string(n));
    f_hi = derivative_sign(hi);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (derivative_sign(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  KernelMinimum out;
  out.t_min = 0.5 * (lo + hi);
  out.value = omega_value(n, out.t_min, default_series_cutoff(n), 30);
  return out;
}

}  // namespace

double default_series_cutoff(int n) {
  // Past n = 64 the series magnitude near t ~ n/2 outgrows quad precision, while
  // the backward recurrence stays accurate at every t.
  return n <= 64 ? std::max(30.0, static_cast<double>(n)) : 30.0;
}

OmegaKernel::OmegaKernel(int n, int work_digits, std::optional<double> series_cutoff)
    : n_(n), work_digits_(work_digits), cutoff_(series_cutoff.value_or(default_series_cutoff(n))) {
  check_dimension(n);
  if (work_digits < 16 || work_digits > kMaxWorkDigits)
    throw std::invalid_argument("work precision must be within 16..33 digits");
  if (!(cutoff_ >= 0.0)) throw std::invalid_argument("series cutoff must be nonnegative");
  minimum_ = locate_minimum(n);
}

double OmegaKernel::evaluate(double t) const {
  check_argument(t);
  if (t == 0.0) return 1.0;
  return omega_value(n_, t, cutoff_, work_digits_);
}

double OmegaKernel::evaluate_series(double t) const {
  check_argument(t);
  return series_value(n_, t, work_digits_);
}

double OmegaKernel::evaluate_recurrence(double t) const {
  check_argument(t);
  return recurrence_value(n_, t);
}

double OmegaKernel::envelope(double t) const { return omega_envelope(n_, t); }

double OmegaKernel::tail_bound(double t) const {
  double bound = std::min(1.0, envelope(t));
  if (n_ <= 3) {
    const double nu = n_ / 2.0 - 1.0;
    const double sharp = std::exp(std::lgamma(n_ / 2.0) + nu * std::log(2.0 / t)) *
                         std::sqrt(2.0 / (std::numbers::pi * t));
    bound = std::min(bound, sharp);
  }
  return bound;
}

double omega(int n, double t) {
  check_dimension(n);
  check_argument(t);
  if (t == 0.0) return 1.0;
  return omega_value(n, t, default_series_cutoff(n), 30);
}

double omega_envelope(int n, double t) {
  check_dimension(n);
  if (!(t > 0.0)) throw std::domain_error("omega_envelope requires t > 0");
  const double nu = n / 2.0 - 1.0;
  if (nu == 0.0) return 1.0;
  return std::exp(std::lgamma(n / 2.0) + nu * std::log(2.0 / t));
}

KernelMinimum first_bessel_zero(int n) {
  check_dimension(n);
  return locate_minimum(n);
}

}  // namespace udb
