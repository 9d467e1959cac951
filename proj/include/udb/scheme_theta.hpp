#pragma once

#include <vector>

#include "udb/quadext.hpp"

namespace udb {

/// P_k(j) = sum_h (-1)^h C(j,h) C(w-j,k-h) C(n-w-j,k-h), the eigenvalue of the
/// distance-k relation of the Johnson scheme J(n,w) on its j-th eigenspace.
/// w is replaced by min(w, n-w) first; k and j must then lie in 0..w.
BigInt eberlein(int n, int w, int k, int j);

/**
 * Eigenvalue data of the Johnson scheme on weight-w words of length n.
 * Relations are indexed by the distance d = w - |x & y|; complementing all words
 * maps J(n,w) onto J(n,n-w) preserving d, so w is stored as min(w, n-w).
 */
class JohnsonSpectrum {
 public:
  JohnsonSpectrum(int n, int w);

  int n() const { return n_; }
  int w() const { return w_; }
  const BigInt& vertices() const { return vertices_; }

  const BigInt& P(int k, int j) const { return p_[k * (w_ + 1) + j]; }
  const BigInt& valency(int k) const { return valency_[k]; }
  const BigInt& multiplicity(int j) const { return multiplicity_[j]; }
  /// Q_j(k) = m_j P_k(j) / v_k
  Rational Q(int j, int k) const;
  /// P_d(k) / v_d: eigenvalue of relation d on eigenspace k, normalised to 1 at k = 0.
  Rational normalized(int d, int k) const;

 private:
  int n_, w_;
  BigInt vertices_;
  std::vector<BigInt> p_, valency_, multiplicity_;
};

/// Lovasz theta of J(n,w,i) from its spectrum: |V| (-m)/(1-m) with m the least
/// normalised eigenvalue of the relation over the nontrivial eigenspaces.
double theta_johnson(int n, int w, int i);

struct DelsarteSolution {
  double value = 0.0;
  std::vector<double> distribution;  // x_d for d = 0..w, x_0 = 1
  std::vector<double> dual;          // one multiplier per eigenspace constraint k = 1..w
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double dual_residual = 0.0;
  double max_violation = 0.0;
};

/// max sum_d x_d over distance distributions with x_0 = 1, x_{w-i} = 0 and
/// sum_d x_d P_d(k)/v_d >= 0 for every eigenspace k >= 1. With `nonnegative`
/// the x_d are also kept >= 0 (theta prime, the Delsarte bound); without it the
/// optimum is theta.
DelsarteSolution delsarte_lp(int n, int w, int i, bool nonnegative = true);

double theta_prime_johnson(int n, int w, int i);

/// Whether the theta-optimal distance distribution is nonnegative, i.e. for some
/// minimising eigenspace k0 the relation w-i attains min_d P_d(k0)/v_d.
/// Necessary and sufficient for theta = theta prime.
bool theta_equality_condition(int n, int w, int i);

}  // namespace udb
