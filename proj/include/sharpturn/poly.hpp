#pragma once

// Exact univariate and sparse bivariate polynomials over Q or Q(sqrt2).

#include "sharpturn/field.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sharpturn {

enum class Parity { Zero, Even, Odd, Mixed };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::Zero: return "zero";
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

template <ExactField F>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(F v) { return UniPoly(std::vector<F>{std::move(v)}); }
  static UniPoly monomial(F coeff, int power) {
    std::vector<F> c(static_cast<std::size_t>(power) + 1, F(0));
    c.back() = std::move(coeff);
    return UniPoly(std::move(c));
  }
  /// The identity polynomial x.
  static UniPoly x() { return monomial(F(1), 1); }

  /// Degree, with -1 standing in for the zero polynomial's -infinity.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coefficients() const { return c_; }
  F coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : F(0); }
  const F& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  template <class P>
  P operator()(const P& x) const {
    P acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += embed<P>(*it);
    }
    return acc;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const F& s) {
    if (FieldTraits<F>::sign(s) == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend UniPoly operator*(UniPoly a, const F& s) { return a *= s; }
  friend UniPoly operator*(const F& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (FieldTraits<F>::sign(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly pow(unsigned e) const {
    UniPoly r = constant(F(1)), base = *this;
    while (e) {
      if (e & 1U) r *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * F(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  /// p(offset + scale * t) as a polynomial in t.
  UniPoly compose_affine(const F& offset, const F& scale) const {
    UniPoly lin({offset, scale});
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * lin;
      acc += constant(*it);
    }
    return acc;
  }

  /// p(-x)
  UniPoly reflect() const {
    UniPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  Parity parity() const {
    bool has_even = false, has_odd = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (FieldTraits<F>::sign(c_[i]) == 0) continue;
      (i % 2 == 0 ? has_even : has_odd) = true;
    }
    if (!has_even && !has_odd) return Parity::Zero;
    if (has_even && has_odd) return Parity::Mixed;
    return has_even ? Parity::Even : Parity::Odd;
  }

  /// Euclidean division over the field: *this = q * d + r with deg r < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {UniPoly{}, *this};
    std::vector<F> rem = c_;
    std::vector<F> quo(c_.size() - d.c_.size() + 1, F(0));
    const F inv_lead = F(1) / d.leading();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t k = quo.size(); k-- > 0;) {
      F q = rem[k + dd] * inv_lead;
      if (FieldTraits<F>::sign(q) == 0) continue;
      for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= q * d.c_[i];
      quo[k] = std::move(q);
    }
    rem.resize(dd);
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }

  template <ExactField G, class Fn>
  UniPoly<G> map(Fn&& fn) const {
    std::vector<G> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(fn(v));
    return UniPoly<G>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && FieldTraits<F>::sign(c_.back()) == 0) c_.pop_back();
  }
  std::vector<F> c_;
};

inline UniPoly<QSqrt2> to_qsqrt2(const UniPoly<Rational>& p) {
  return p.map<QSqrt2>([](const Rational& v) { return QSqrt2(v); });
}
inline const UniPoly<QSqrt2>& to_qsqrt2(const UniPoly<QSqrt2>& p) { return p; }

/// Exponent pair (power of x, power of y).
using Exponent = std::pair<int, int>;

template <ExactField F>
class BiPoly {
 public:
  using TermMap = std::map<Exponent, F>;

  BiPoly() = default;

  static BiPoly constant(const F& v) { return monomial(v, 0, 0); }
  static BiPoly monomial(const F& v, int a, int b) {
    BiPoly p;
    p.add_term(a, b, v);
    return p;
  }
  static BiPoly x() { return monomial(F(1), 1, 0); }
  static BiPoly y() { return monomial(F(1), 0, 1); }
  static BiPoly in_x(const UniPoly<F>& u) {
    BiPoly p;
    for (int k = 0; k <= u.degree(); ++k) p.add_term(k, 0, u.coeff(k));
    return p;
  }
  static BiPoly in_y(const UniPoly<F>& u) {
    BiPoly p;
    for (int k = 0; k <= u.degree(); ++k) p.add_term(0, k, u.coeff(k));
    return p;
  }

  void add_term(int a, int b, const F& v) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative exponent");
    if (FieldTraits<F>::sign(v) == 0) return;
    auto [it, inserted] = terms_.try_emplace(Exponent{a, b}, v);
    if (!inserted) {
      it->second += v;
      if (FieldTraits<F>::sign(it->second) == 0) terms_.erase(it);
    }
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  F coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? F(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, v] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }
  int degree_x() const {
    int d = -1;
    for (const auto& [e, v] : terms_) d = std::max(d, e.first);
    return d;
  }
  int degree_y() const {
    int d = -1;
    for (const auto& [e, v] : terms_) d = std::max(d, e.second);
    return d;
  }

  template <class P>
  P operator()(const P& x, const P& y) const {
    if (terms_.empty()) return P(0);
    // Horner in y over x-coefficient polynomials.
    const int dy = degree_y();
    std::vector<std::vector<const F*>> rows(static_cast<std::size_t>(dy) + 1);
    std::vector<int> dx(static_cast<std::size_t>(dy) + 1, -1);
    for (const auto& [e, v] : terms_) dx[e.second] = std::max(dx[e.second], e.first);
    for (int b = 0; b <= dy; ++b) rows[b].assign(static_cast<std::size_t>(dx[b] + 1), nullptr);
    for (const auto& [e, v] : terms_) rows[e.second][e.first] = &v;
    P acc(0);
    for (int b = dy; b >= 0; --b) {
      P row(0);
      for (int a = dx[b]; a >= 0; --a) {
        row *= x;
        if (rows[b][a]) row += embed<P>(*rows[b][a]);
      }
      acc *= y;
      acc += row;
    }
    return acc;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, v] : o.terms_) add_term(e.first, e.second, v);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, v] : o.terms_) add_term(e.first, e.second, -v);
    return *this;
  }
  BiPoly& operator*=(const F& s) {
    if (FieldTraits<F>::sign(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= s;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) {
    for (auto& [e, v] : a.terms_) v = -v;
    return a;
  }
  friend BiPoly operator*(BiPoly a, const F& s) { return a *= s; }
  friend BiPoly operator*(const F& s, BiPoly a) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ea, va] : a.terms_)
      for (const auto& [eb, vb] : b.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, va * vb);
    return r;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly pow(unsigned e) const {
    BiPoly r = constant(F(1)), base = *this;
    while (e) {
      if (e & 1U) r *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return r;
  }

  /// f(-x, y)
  BiPoly reflect_x() const {
    BiPoly r = *this;
    for (auto& [e, v] : r.terms_)
      if (e.first % 2) v = -v;
    return r;
  }
  /// f(x, -y)
  BiPoly reflect_y() const {
    BiPoly r = *this;
    for (auto& [e, v] : r.terms_)
      if (e.second % 2) v = -v;
    return r;
  }
  /// f(x, y) + f(x, -y)
  BiPoly symmetrize_even_y() const { return *this + reflect_y(); }
  bool is_even_in_y() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.second % 2 == 0; });
  }

  /// Dense coefficient table indexed [power of x][power of y].
  std::vector<std::vector<F>> dense() const {
    const int dx = std::max(degree_x(), 0), dy = std::max(degree_y(), 0);
    std::vector<std::vector<F>> m(static_cast<std::size_t>(dx) + 1,
                                  std::vector<F>(static_cast<std::size_t>(dy) + 1, F(0)));
    for (const auto& [e, v] : terms_) m[e.first][e.second] = v;
    return m;
  }

  template <ExactField G, class Fn>
  BiPoly<G> map(Fn&& fn) const {
    BiPoly<G> r;
    for (const auto& [e, v] : terms_) r.add_term(e.first, e.second, fn(v));
    return r;
  }

 private:
  TermMap terms_;
};

inline BiPoly<QSqrt2> to_qsqrt2(const BiPoly<Rational>& p) {
  return p.map<QSqrt2>([](const Rational& v) { return QSqrt2(v); });
}
inline const BiPoly<QSqrt2>& to_qsqrt2(const BiPoly<QSqrt2>& p) { return p; }

/// f(X(x, y), Y(x, y)) for polynomial substitutions X, Y over G ⊇ F.
template <ExactField G, ExactField F>
BiPoly<G> substitute(const BiPoly<F>& f, const BiPoly<G>& X, const BiPoly<G>& Y) {
  std::vector<BiPoly<G>> xp{BiPoly<G>::constant(G(1))}, yp{BiPoly<G>::constant(G(1))};
  for (int k = 1; k <= f.degree_x(); ++k) xp.push_back(xp.back() * X);
  for (int k = 1; k <= f.degree_y(); ++k) yp.push_back(yp.back() * Y);
  BiPoly<G> out;
  for (const auto& [e, v] : f.terms()) {
    BiPoly<G> t = xp[e.first] * yp[e.second];
    t *= embed<G>(v);
    out += t;
  }
  return out;
}

/// f(x + dx, y + dy)
template <ExactField F>
BiPoly<F> shift(const BiPoly<F>& f, const F& dx, const F& dy) {
  return substitute(f, BiPoly<F>::x() + BiPoly<F>::constant(dx), BiPoly<F>::y() + BiPoly<F>::constant(dy));
}

}  // namespace sharpturn
