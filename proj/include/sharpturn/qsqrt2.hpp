#pragma once

// The quadratic field Q(sqrt 2) and its integer ring Z[sqrt 2].
//
// Signs are decided exactly: for a + b*sqrt2 with a and b of opposite signs
// the answer is the sign of whichever of a^2 and 2b^2 dominates (they are
// never equal unless both vanish, sqrt 2 being irrational).

#include "sharpturn/rational.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace sharpturn {

namespace detail {

template <class T>
int sqrt2_sign(const T& a, const T& b) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  T lhs = a * a;
  T rhs = 2 * b * b;
  return lhs > rhs ? sa : sb;
}

}  // namespace detail

class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational r) : rat_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational r, Rational s) : rat_(std::move(r)), sqrt2_(std::move(s)) {}

  static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }
  /// sqrt(2)/2
  static QSqrt2 half_sqrt2() { return {Rational(0), make_rational(1, 2)}; }

  const Rational& rat_part() const { return rat_; }
  const Rational& sqrt2_part() const { return sqrt2_; }
  bool is_rational() const { return sqrt2_ == 0; }

  int sign() const { return detail::sqrt2_sign(rat_, sqrt2_); }

  QSqrt2 conjugate() const { return {rat_, -sqrt2_}; }
  /// a^2 - 2b^2, the field norm.
  Rational norm() const { return rat_ * rat_ - 2 * sqrt2_ * sqrt2_; }

  QSqrt2 inverse() const {
    Rational nrm = norm();
    if (nrm == 0) throw std::domain_error("inverse of zero in Q(sqrt2)");
    return {rat_ / nrm, -sqrt2_ / nrm};
  }

  QSqrt2& operator+=(const QSqrt2& o) {
    rat_ += o.rat_;
    sqrt2_ += o.sqrt2_;
    return *this;
  }
  QSqrt2& operator-=(const QSqrt2& o) {
    rat_ -= o.rat_;
    sqrt2_ -= o.sqrt2_;
    return *this;
  }
  QSqrt2& operator*=(const QSqrt2& o) {
    if (o.sqrt2_ == 0) {
      rat_ *= o.rat_;
      sqrt2_ *= o.rat_;
      return *this;
    }
    Rational r = rat_ * o.rat_ + 2 * sqrt2_ * o.sqrt2_;
    Rational s = rat_ * o.sqrt2_ + sqrt2_ * o.rat_;
    rat_ = std::move(r);
    sqrt2_ = std::move(s);
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o) {
    if (o.sqrt2_ == 0) {
      if (o.rat_ == 0) throw std::domain_error("division by zero in Q(sqrt2)");
      rat_ /= o.rat_;
      sqrt2_ /= o.rat_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.rat_, -a.sqrt2_}; }

  friend bool operator==(const QSqrt2& a, const QSqrt2& b) {
    return a.rat_ == b.rat_ && a.sqrt2_ == b.sqrt2_;
  }
  friend bool operator!=(const QSqrt2& a, const QSqrt2& b) { return !(a == b); }
  friend bool operator<(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QSqrt2& a, const QSqrt2& b) { return b < a; }
  friend bool operator<=(const QSqrt2& a, const QSqrt2& b) { return !(b < a); }
  friend bool operator>=(const QSqrt2& a, const QSqrt2& b) { return !(a < b); }

  double to_double() const {
    return sharpturn::to_double(rat_) + 1.4142135623730951 * sharpturn::to_double(sqrt2_);
  }

  /// "num/den + num/den*sqrt2"
  std::string str() const { return to_string(rat_) + " + " + to_string(sqrt2_) + "*sqrt2"; }

  static QSqrt2 parse(std::string_view text) {
    std::string s(text);
    auto star = s.find("*sqrt2");
    if (star == std::string::npos) return QSqrt2(parse_rational(s));
    auto plus = s.rfind(" + ", star);
    if (plus == std::string::npos) {
      auto lead = s.find_first_not_of(" \t");
      return {Rational(0), parse_rational(s.substr(lead, star - lead))};
    }
    if (s.find_first_not_of(" \t\r", star + 6) != std::string::npos)
      throw ParseError("trailing text after sqrt2 term in '" + s + "'");
    return {parse_rational(s.substr(0, plus)), parse_rational(s.substr(plus + 3, star - plus - 3))};
  }

  friend std::ostream& operator<<(std::ostream& os, const QSqrt2& q) { return os << q.str(); }

 private:
  Rational rat_{0};
  Rational sqrt2_{0};
};

inline int sign(const QSqrt2& q) { return q.sign(); }
inline double to_double(const QSqrt2& q) { return q.to_double(); }
inline std::string to_string(const QSqrt2& q) { return q.str(); }

/// Integer pairs a + b*sqrt2, the carrier of scaled Bernstein coefficients
/// for polynomials over Q(sqrt2).
struct ZSqrt2 {
  Integer a{0};
  Integer b{0};

  ZSqrt2() = default;
  ZSqrt2(Integer x, Integer y) : a(std::move(x)), b(std::move(y)) {}

  ZSqrt2& operator+=(const ZSqrt2& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend ZSqrt2 operator+(ZSqrt2 x, const ZSqrt2& y) { return x += y; }
  friend ZSqrt2 operator-(ZSqrt2 x, const ZSqrt2& y) {
    x.a -= y.a;
    x.b -= y.b;
    return x;
  }
  friend bool operator==(const ZSqrt2& x, const ZSqrt2& y) { return x.a == y.a && x.b == y.b; }
};

inline int sign(const ZSqrt2& z) { return detail::sqrt2_sign(z.a, z.b); }

}  // namespace sharpturn
