#include "udb/scheme_theta.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "udb/geometry.hpp"
#include "udb/lp.hpp"

namespace udb {
namespace {

// Canonical weight and relation index for J(n,w,i).
struct Canonical {
  int w;
  int d;
};

Canonical canonical(int n, int w, int i) {
  if (n < 2 || w <= 0 || w >= n || i < 0 || i >= w)
    throw std::invalid_argument("Johnson parameters need 0 < w < n and 0 <= i < w");
  const int d = w - i;
  const int cw = std::min(w, n - w);
  if (d > cw)
    throw std::invalid_argument("J(" + std::to_string(n) + "," + std::to_string(w) + "," +
                                std::to_string(i) + ") has no edges");
  return {cw, d};
}

// Least normalised eigenvalue of relation d over k = 1..w, with all minimisers.
std::pair<Rational, std::vector<int>> least_eigenvalue(const JohnsonSpectrum& s, int d) {
  Rational m = 2;
  std::vector<int> where;
  for (int k = 1; k <= s.w(); ++k) {
    const Rational z = s.normalized(d, k);
    if (z < m) {
      m = z;
      where.assign(1, k);
    } else if (z == m) {
      where.push_back(k);
    }
  }
  return {m, where};
}

}  // namespace

BigInt eberlein(int n, int w, int k, int j) {
  if (n < 1 || w < 0 || w > n) throw std::invalid_argument("eberlein: need 0 <= w <= n");
  w = std::min(w, n - w);
  if (k < 0 || j < 0 || k > w || j > w) throw std::invalid_argument("eberlein: k and j must lie in 0..min(w, n-w)");
  BigInt sum = 0;
  for (int h = 0; h <= std::min(j, k); ++h) {
    const BigInt term = binomial(j, h) * binomial(w - j, k - h) * binomial(n - w - j, k - h);
    sum += (h % 2 ? -term : term);
  }
  return sum;
}

JohnsonSpectrum::JohnsonSpectrum(int n, int w) : n_(n), w_(std::min(w, n - w)) {
  if (n < 1 || w < 0 || w > n) throw std::invalid_argument("JohnsonSpectrum: need 0 <= w <= n");
  vertices_ = binomial(n, w_);
  p_.resize(static_cast<std::size_t>((w_ + 1) * (w_ + 1)));
  for (int k = 0; k <= w_; ++k)
    for (int j = 0; j <= w_; ++j) p_[k * (w_ + 1) + j] = eberlein(n, w_, k, j);
  for (int k = 0; k <= w_; ++k) valency_.push_back(binomial(w_, k) * binomial(n - w_, k));
  for (int j = 0; j <= w_; ++j) multiplicity_.push_back(binomial(n, j) - binomial(n, j - 1));
}

Rational JohnsonSpectrum::Q(int j, int k) const {
  return Rational(multiplicity_[j] * P(k, j), valency_[k]);
}

Rational JohnsonSpectrum::normalized(int d, int k) const { return Rational(P(d, k), valency_[d]); }

double theta_johnson(int n, int w, int i) {
  const auto c = canonical(n, w, i);
  const JohnsonSpectrum s(n, c.w);
  const Rational m = least_eigenvalue(s, c.d).first;
  if (m >= 0) throw std::invalid_argument("relation has no negative eigenvalue");
  const Rational ratio = -m / (1 - m);
  return static_cast<double>(Rational(s.vertices()) * ratio);
}

DelsarteSolution delsarte_lp(int n, int w, int i, bool nonnegative) {
  const auto c = canonical(n, w, i);
  const JohnsonSpectrum s(n, c.w);
  const int vars = c.w;  // x_1..x_w; x_0 = 1 is folded into the bounds
  if (vars > 64) throw std::invalid_argument("delsarte_lp: weight too large");

  LinearProgram lp(std::vector<double>(static_cast<std::size_t>(vars), -1.0));
  for (int k = 1; k <= c.w; ++k) {
    std::vector<double> row(static_cast<std::size_t>(vars));
    for (int d = 1; d <= c.w; ++d) row[d - 1] = static_cast<double>(s.normalized(d, k));
    lp.add_constraint(row, -1.0);
  }
  for (int d = 1; d <= c.w; ++d)
    if (nonnegative) lp.set_lower_bound(d - 1, 0.0);
  lp.fix(c.d - 1, 0.0);

  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::logic_error("Delsarte LP for J(" + std::to_string(n) + "," + std::to_string(w) + "," +
                           std::to_string(i) + ") is " + to_string(sol.status));
  DelsarteSolution out;
  out.value = 1.0 - sol.objective_value;
  out.distribution.push_back(1.0);
  out.distribution.insert(out.distribution.end(), sol.z.begin(), sol.z.end());
  out.dual.assign(sol.dual.begin(), sol.dual.begin() + c.w);
  out.dual_objective = 1.0 - sol.dual_objective;
  out.duality_gap = sol.duality_gap;
  out.dual_residual = sol.dual_residual;
  out.max_violation = sol.max_violation;
  return out;
}

double theta_prime_johnson(int n, int w, int i) { return delsarte_lp(n, w, i, true).value; }

bool theta_equality_condition(int n, int w, int i) {
  const auto c = canonical(n, w, i);
  const JohnsonSpectrum s(n, c.w);
  const auto [m, minimisers] = least_eigenvalue(s, c.d);
  for (int k0 : minimisers) {
    bool attains = true;
    for (int d = 0; d <= c.w && attains; ++d) attains = s.normalized(d, k0) >= m;
    if (attains) return true;
  }
  return false;
}

}  // namespace udb
