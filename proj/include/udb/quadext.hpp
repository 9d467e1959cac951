#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace udb {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact element a + b*sqrt(5) of Q(sqrt 5).
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  QuadExt(long long a) : a_(a) {}

  static QuadExt sqrt5() { return {0, 1}; }
  static QuadExt phi() { return {Rational(1, 2), Rational(1, 2)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1, decided exactly.
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  QuadExt conjugate() const { return {a_, -b_}; }
  /// a^2 - 5 b^2, the field norm.
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
  QuadExt inverse() const;

  QuadExt operator-() const { return {-a_, -b_}; }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return !(y < x); }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Parses expressions such as "3", "(5+sqrt5)/2", "(3-sqrt(5))/2" or "1/2+1/2*sqrt5".
/// Accepts + - * / and parentheses over integers and sqrt5.
QuadExt parse_quadext(const std::string& text);

}  // namespace udb
