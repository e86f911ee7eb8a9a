#pragma once

// Exact rational arithmetic on top of GMP.  Every value is kept in lowest
// terms with a positive denominator; gmpxx canonicalizes the results of all
// arithmetic operators, and the helpers below canonicalize on construction.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpturn {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// 2^e for any integer exponent.
inline Rational pow2(long e) {
  Rational r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();  // sign normalisation only; powers of coprime ints stay coprime
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

/// Text form "num/den", denominator omitted when 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t\r");
  if (first == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(first, last - first + 1);
  auto slash = s.find('/');
  Integer num, den(1);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string ns = s.substr(0, slash);
  if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
  if (!valid_int(ns)) throw ParseError("malformed rational literal '" + s + "'");
  num.set_str(ns, 10);
  if (slash != std::string::npos) {
    std::string ds = s.substr(slash + 1);
    if (!valid_int(ds) || ds[0] == '-' || ds[0] == '+')
      throw ParseError("malformed rational literal '" + s + "'");
    den.set_str(ds, 10);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  }
  return make_rational(num, den);
}

/// Double approximation that survives huge numerators/denominators.
inline double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

/// log2|r| approximately; -inf for zero.
inline double approx_log2_abs(const Integer& z) {
  if (z == 0) return -INFINITY;
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

inline double approx_log2_abs(const Rational& r) {
  if (r == 0) return -INFINITY;
  return approx_log2_abs(r.get_num()) - approx_log2_abs(r.get_den());
}

/// Exact square root when r is the square of a rational.
inline bool exact_sqrt(const Rational& r, Rational& out) {
  if (r < 0) return false;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(r.get_den_mpz_t()) == 0)
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  out = make_rational(n, d);
  return true;
}

/// floor(sqrt(r) * 2^bits) / 2^bits, an under-approximation of sqrt(r)
/// with absolute error below 2^-bits.
inline Rational sqrt_floor_dyadic(const Rational& r, unsigned bits) {
  if (r < 0) throw std::domain_error("sqrt of negative rational");
  Integer scaled = r.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return make_rational(root, Integer(1)) * pow2(-static_cast<long>(bits));
}

/// Smallest multiple of 2^-bits that is >= r.
inline Rational ceil_dyadic(const Rational& r, unsigned bits) {
  Integer scaled = r.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  mpz_cdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  return make_rational(scaled, Integer(1)) * pow2(-static_cast<long>(bits));
}

/// Largest multiple of 2^-bits that is <= r.
inline Rational floor_dyadic(const Rational& r, unsigned bits) {
  Integer scaled = r.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  return make_rational(scaled, Integer(1)) * pow2(-static_cast<long>(bits));
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace sharpturn
