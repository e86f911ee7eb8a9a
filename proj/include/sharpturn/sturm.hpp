#pragma once

// Sturm sequences for rational polynomials, built as a primitive
// pseudo-remainder sequence over the integers (each member is a positive
// multiple of the corresponding classical Sturm polynomial, so sign
// variation counts are unchanged).  Signs at rational and Q(sqrt2) points
// come from an outward-rounded enclosure when it excludes zero, and from
// exact homogeneous evaluation otherwise.

#include "sharpturn/bigfloat.hpp"
#include "sharpturn/poly.hpp"

#include <stdexcept>
#include <vector>

namespace sharpturn {

using IntPoly = std::vector<Integer>;  // low to high, trimmed

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline void make_primitive(IntPoly& p) {
  Integer g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

/// lc(b)^(deg a - deg b + 1) * a mod b, exact over Z.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Integer& lb = b.back();
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    const Integer lead = a[k];
    for (auto& c : a) c *= lb;
    if (lead != 0)
      for (int i = 0; i <= db; ++i) a[k - db + i] -= lead * b[i];
    a.pop_back();
  }
  trim(a);
  return a;
}

inline ZSqrt2 mul(const ZSqrt2& x, const ZSqrt2& y) {
  return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}

constexpr mpfr_prec_t kSignPrecision = 192;

inline Interval enclose(const Rational& x) { return Interval(x, kSignPrecision); }
inline Interval enclose(const QSqrt2& x) {
  return Interval(x.rat_part(), kSignPrecision) +
         Interval(x.sqrt2_part(), kSignPrecision) * Interval::sqrt2(kSignPrecision);
}

/// Sign of p(x) when the Horner enclosure excludes zero, else 0.
template <class E>
int enclosure_sign(const IntPoly& p, const E& x) {
  const Interval xi = enclose(x);
  Interval acc(Rational(p.back()), kSignPrecision);
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k)
    acc = acc * xi + Interval(Rational(p[k]), kSignPrecision);
  if (acc.certainly_positive()) return 1;
  if (acc.certainly_negative()) return -1;
  return 0;
}

}  // namespace detail

/// Positive integer multiple of p with coprime coefficients.
inline IntPoly primitive_part(const UniPoly<Rational>& p) {
  Integer l(1);
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(Integer(l / c.get_den()) * c.get_num());
  detail::make_primitive(out);
  return out;
}

/// Exact sign of an integer polynomial at x.
inline int sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  if (const int s = detail::enclosure_sign(p, x)) return s;
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc = p.back(), bp = b;
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k) {
    acc *= a;
    acc += p[k] * bp;
    bp *= b;
  }
  return sgn(acc);
}

inline int sign_at(const IntPoly& p, const QSqrt2& x) {
  if (p.empty()) return 0;
  if (const int s = detail::enclosure_sign(p, x)) return s;
  Integer d(1);
  mpz_lcm(d.get_mpz_t(), x.rat_part().get_den_mpz_t(), x.sqrt2_part().get_den_mpz_t());
  const ZSqrt2 num(Integer(d / x.rat_part().get_den()) * x.rat_part().get_num(),
                   Integer(d / x.sqrt2_part().get_den()) * x.sqrt2_part().get_num());
  ZSqrt2 acc(p.back(), Integer(0));
  Integer dp = d;
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k) {
    acc = detail::mul(acc, num);
    acc.a += p[k] * dp;
    dp *= d;
  }
  return sign(acc);
}

template <class E>
int sign_at(const UniPoly<Rational>& p, const E& x) {
  return sign_at(primitive_part(p), x);
}

class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly<Rational>& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    seq_.push_back(primitive_part(p));
    if (p.degree() == 0) return;
    seq_.push_back(primitive_part(p.derivative()));
    while (seq_.back().size() > 1) {
      const IntPoly& a = seq_[seq_.size() - 2];
      const IntPoly& b = seq_.back();
      IntPoly r = detail::pseudo_remainder(a, b);
      if (r.empty()) break;
      const int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
      const bool flip = sgn(b.back()) < 0 && (delta + 1) % 2 == 1;
      // next = -(a mod b) up to a positive factor
      if (!flip)
        for (auto& c : r) c = -c;
      detail::make_primitive(r);
      seq_.push_back(std::move(r));
    }
  }

  const std::vector<IntPoly>& polys() const { return seq_; }
  std::size_t size() const { return seq_.size(); }

  template <class E>
  int variations(const E& x) const {
    int v = 0, last = 0;
    for (const auto& q : seq_) {
      const int s = sign_at(q, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }

  /// Number of distinct real roots in (lo, hi); p(lo), p(hi) must be nonzero.
  template <class E>
  int count(const E& lo, const E& hi) const {
    if (hi < lo) throw std::invalid_argument("sturm_count: lo > hi");
    if (sign_at(seq_.front(), lo) == 0 || sign_at(seq_.front(), hi) == 0)
      throw std::invalid_argument("sturm_count: polynomial vanishes at an interval endpoint");
    return variations(lo) - variations(hi);
  }

 private:
  std::vector<IntPoly> seq_;
};

template <class E>
int sturm_count(const UniPoly<Rational>& p, const E& lo, const E& hi) {
  return SturmSequence(p).count(lo, hi);
}

}  // namespace sharpturn
