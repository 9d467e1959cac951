#include "udb/quadext.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace udb {
namespace {

int rational_sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  QuadExt parse() {
    QuadExt v = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  QuadExt expression() {
    QuadExt v = term();
    while (true) {
      skip();
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }

  QuadExt term() {
    QuadExt v = factor();
    while (true) {
      skip();
      if (accept('*')) {
        v *= factor();
      } else if (accept('/')) {
        const QuadExt d = factor();
        if (d.sign() == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  QuadExt factor() {
    skip();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      QuadExt v = expression();
      skip();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 5, "sqrt5") == 0) {
      pos_ += 5;
      return QuadExt::sqrt5();
    }
    if (s_.compare(pos_, 7, "sqrt(5)") == 0) {
      pos_ += 7;
      return QuadExt::sqrt5();
    }
    if (s_.compare(pos_, 4, "√5") == 0) {  // UTF-8 square root sign
      pos_ += 4;
      return QuadExt::sqrt5();
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number, sqrt5 or '('");
    return QuadExt(Rational(BigInt(s_.substr(start, pos_ - start))));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse '" + s_ + "': " + what);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

int QuadExt::sign() const {
  const int sa = rational_sign(a_), sb = rational_sign(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 5 b^2
  return rational_sign(a_ * a_ - 5 * b_ * b_) * sa;
}

double QuadExt::to_double() const {
  return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(5.0);
}

std::string QuadExt::to_string() const {
  if (b_ == 0) return a_.str();
  std::string out = a_ == 0 ? "" : a_.str();
  if (b_ > 0 && a_ != 0) out += "+";
  if (b_ == -1)
    out += "-";
  else if (b_ != 1)
    out += b_.str() + "*";
  return out + "sqrt5";
}

QuadExt QuadExt::inverse() const {
  const Rational n = norm();
  if (n == 0) throw std::domain_error("QuadExt: inverse of zero");
  return {a_ / n, -b_ / n};
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) { return *this *= o.inverse(); }

QuadExt parse_quadext(const std::string& text) { return Parser(text).parse(); }

}  // namespace udb
