#pragma once

// MPFR-backed floating point.  BigFloat is used for diagnostics and reports;
// Interval carries certified enclosures (directed rounding on both ends) for
// the simplex geometry, where square roots of exact rationals are needed.

#include "sharpturn/qsqrt2.hpp"
#include "sharpturn/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sharpturn {

constexpr mpfr_prec_t kDefaultPrecision = 256;

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double d, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  BigFloat(const QSqrt2& q, mpfr_prec_t prec) : BigFloat(prec) {
    BigFloat s(prec);
    mpfr_sqrt_ui(s.v_, 2, MPFR_RNDN);
    BigFloat b(q.sqrt2_part(), prec);
    mpfr_mul(s.v_, s.v_, b.v_, MPFR_RNDN);
    mpfr_set_q(v_, q.rat_part().get_mpq_t(), MPFR_RNDN);
    mpfr_add(v_, v_, s.v_, MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }

  BigFloat abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    BigFloat r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat log() const {
    BigFloat r(precision());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat exp() const {
    BigFloat r(precision());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat pow(const BigFloat& e) const {
    BigFloat r(precision());
    mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
    return r;
  }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Exact dyadic value of this float.
  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  /// Scientific notation with `digits` significant digits.
  std::string str(int digits = 30) const {
    if (mpfr_zero_p(v_)) return "0";
    if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static BigFloat sqrt2(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_sqrt_ui(r.v_, 2, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

/// Closed enclosure [lo, hi] maintained with outward rounding.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}
  Interval(const Rational& q, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval sqrt_of(const Rational& q, mpfr_prec_t prec) {
    if (q < 0) throw std::domain_error("sqrt of negative rational");
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_sqrt(r.lo_.get(), r.lo_.get(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(r.hi_.get(), r.hi_.get(), MPFR_RNDU);
    return r;
  }
  static Interval sqrt2(mpfr_prec_t prec) { return sqrt_of(Rational(2), prec); }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  BigFloat mid() const {
    BigFloat m(precision() + 2);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }
  /// Upper bound on hi - mid and mid - lo.
  BigFloat radius() const {
    BigFloat m = mid();
    BigFloat a(precision()), b(precision());
    mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
    mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
    return a < b ? b : a;
  }
  BigFloat width() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  bool contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
  }
  bool overlaps(const Interval& o) const {
    return !(mpfr_less_p(hi_.get(), o.lo_.get()) || mpfr_less_p(o.hi_.get(), lo_.get()));
  }
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  /// hi <= q
  bool certainly_le(const Rational& q) const { return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) <= 0; }
  bool certainly_lt(const Rational& q) const { return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    BigFloat t(p);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_})
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0)
      throw std::domain_error("interval division by an interval containing zero");
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    BigFloat t(p);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_})
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  Interval abs() const {
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) {
      Interval r(precision());
      mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
      mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
      return r;
    }
    Interval r(precision());
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_greater_p(hi_.get(), r.hi_.get())) mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  std::string str(int digits = 30) const { return mid().str(digits) + " +- " + radius().str(6); }

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace sharpturn
