#pragma once

#include <optional>
#include <stdexcept>

namespace udb {

/// Raised when the internal rounding-error estimate of a kernel evaluation
/// exceeds the accuracy the kernel promises.
class PrecisionLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Location and value of the global minimum of Omega_n.
struct KernelMinimum {
  double t_min = 0.0;  // first positive zero of J_{n/2}
  double value = 0.0;  // Omega_n(t_min), negative
};

/**
 * Normalized radial Fourier transform of the unit sphere's surface measure,
 *
 *     Omega_n(t) = Gamma(n/2) (2/t)^(n/2-1) J_{n/2-1}(t),   Omega_n(0) = 1.
 *
 * Below the series cutoff the confluent hypergeometric series 0F1(; n/2; -t^2/4)
 * is summed in quad precision with compensated summation. Above it J_{n/2-1}
 * comes from Miller's backward recurrence, normalized by the Neumann sum
 * (even n) or by the closed forms of J_{1/2}, J_{-1/2} (odd n).
 *
 * Instances are immutable and may be shared between threads.
 */
class OmegaKernel {
 public:
  static constexpr int kMaxWorkDigits = 33;

  explicit OmegaKernel(int n, int work_digits = 30,
                       std::optional<double> series_cutoff = std::nullopt);

  int dimension() const { return n_; }
  int work_digits() const { return work_digits_; }
  double series_cutoff() const { return cutoff_; }

  double operator()(double t) const { return evaluate(t); }
  double evaluate(double t) const;

  // The two evaluation paths, exposed so they can be checked against each other.
  double evaluate_series(double t) const;
  double evaluate_recurrence(double t) const;

  /// Gamma(n/2) (2/t)^(n/2-1): bounds |Omega_n| on [t, inf) since |J_nu| <= 1.
  double envelope(double t) const;

  /// min(1, envelope(t)) sharpened with |J_nu(x)| <= sqrt(2/(pi x)) when nu <= 1/2.
  double tail_bound(double t) const;

  const KernelMinimum& minimum() const { return minimum_; }

 private:
  int n_;
  int work_digits_;
  double cutoff_;
  KernelMinimum minimum_;
};

double omega(int n, double t);
double omega_envelope(int n, double t);
KernelMinimum first_bessel_zero(int n);

/// Default series/recurrence switch point for dimension n.
double default_series_cutoff(int n);

}  // namespace udb
