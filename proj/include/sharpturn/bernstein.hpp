#pragma once

// Tensor Bernstein coefficients of a bivariate polynomial on a box, stored
// as an integer grid with an implicit positive scale factor.  Rational
// polynomials use Integer cells and Q(sqrt2) polynomials use Z[sqrt2] cells;
// in both cases every cell has the sign of the true coefficient.

#include "sharpturn/poly.hpp"

#include <climits>
#include <type_traits>
#include <utility>
#include <vector>

namespace sharpturn {

/// Axis-parallel box with endpoints in E.  A zero-width side encodes a
/// lower-dimensional domain (an interval when y_lo == y_hi).
template <class E = Rational>
struct BoxT {
  E x_lo, x_hi, y_lo, y_hi;

  BoxT() = default;
  BoxT(E xl, E xh, E yl, E yh)
      : x_lo(std::move(xl)), x_hi(std::move(xh)), y_lo(std::move(yl)), y_hi(std::move(yh)) {
    if (x_hi < x_lo || y_hi < y_lo) throw std::invalid_argument("box with lo > hi");
  }
  static BoxT interval(E lo, E hi) { return BoxT(std::move(lo), std::move(hi), E(0), E(0)); }
};
using Box = BoxT<Rational>;

template <class A, class B>
using common_field_t =
    std::conditional_t<std::is_same_v<A, Rational> && std::is_same_v<B, Rational>, Rational, QSqrt2>;

namespace bern {

template <ExactField F>
using Cell = std::conditional_t<std::is_same_v<F, Rational>, Integer, ZSqrt2>;

inline int cell_sign(const Integer& z) { return sgn(z); }
inline int cell_sign(const ZSqrt2& z) { return sign(z); }

inline void shl(Integer& z, unsigned long k) {
  if (k) mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
}
inline void shl(ZSqrt2& z, unsigned long k) {
  shl(z.a, k);
  shl(z.b, k);
}
inline void shr_exact(Integer& z, unsigned long k) {
  if (k) mpz_tdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
}
inline void shr_exact(ZSqrt2& z, unsigned long k) {
  shr_exact(z.a, k);
  shr_exact(z.b, k);
}
inline unsigned long two_valuation(const Integer& z) {
  return z == 0 ? ULONG_MAX : mpz_scan1(z.get_mpz_t(), 0);
}
inline unsigned long two_valuation(const ZSqrt2& z) {
  return std::min(two_valuation(z.a), two_valuation(z.b));
}

/// Cells indexed [i * (dy + 1) + j], i the x-index and j the y-index.
template <class T>
struct Grid {
  int dx = 0, dy = 0;
  std::vector<T> c;

  T& at(int i, int j) { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }
  const T& at(int i, int j) const { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }
  int degree(int axis) const { return axis == 0 ? dx : dy; }

  /// Divides out the largest common power of two.
  void normalize() {
    unsigned long v = ULONG_MAX;
    for (const auto& x : c) {
      v = std::min(v, two_valuation(x));
      if (v == 0) return;
    }
    if (v == ULONG_MAX) return;
    for (auto& x : c) shr_exact(x, v);
  }
};

/// Power basis on [0,1] to the degree-d Bernstein basis.
template <ExactField G>
std::vector<G> power_to_bernstein(const std::vector<G>& a, int d) {
  std::vector<G> b(static_cast<std::size_t>(d) + 1, G(0));
  for (int i = 0; i <= d; ++i) {
    G acc(0);
    for (int k = 0; k <= i && k < static_cast<int>(a.size()); ++k) {
      if (FieldTraits<G>::sign(a[k]) == 0) continue;
      Rational w(binomial(i, k), binomial(d, k));
      w.canonicalize();
      acc += a[k] * G(w);
    }
    b[i] = std::move(acc);
  }
  return b;
}

inline Integer lcm_denominators(const std::vector<Rational>& v) {
  Integer l(1);
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}
inline Integer lcm_denominators(const std::vector<QSqrt2>& v) {
  Integer l(1);
  for (const auto& x : v) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rat_part().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.sqrt2_part().get_den_mpz_t());
  }
  return l;
}

inline Integer scaled_numerator(const Rational& q, const Integer& l) {
  Integer r = l / q.get_den();
  return r * q.get_num();
}
inline Integer cell_from(const Rational& q, const Integer& l) { return scaled_numerator(q, l); }
inline ZSqrt2 cell_from(const QSqrt2& q, const Integer& l) {
  return {scaled_numerator(q.rat_part(), l), scaled_numerator(q.sqrt2_part(), l)};
}

inline void gcd_accumulate(Integer& g, const Integer& z) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t()); }
inline void gcd_accumulate(Integer& g, const ZSqrt2& z) {
  gcd_accumulate(g, z.a);
  gcd_accumulate(g, z.b);
}
inline void divexact(Integer& z, const Integer& g) { mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t()); }
inline void divexact(ZSqrt2& z, const Integer& g) {
  divexact(z.a, g);
  divexact(z.b, g);
}

/// Bernstein grid of f on the box, scaled to integers and made primitive.
template <ExactField G>
Grid<Cell<G>> integer_grid(const std::vector<std::vector<G>>& table) {
  Grid<Cell<G>> g;
  g.dx = static_cast<int>(table.size()) - 1;
  g.dy = static_cast<int>(table[0].size()) - 1;
  std::vector<G> flat;
  flat.reserve(table.size() * table[0].size());
  for (const auto& row : table)
    for (const auto& v : row) flat.push_back(v);
  const Integer l = lcm_denominators(flat);
  g.c.reserve(flat.size());
  Integer content(0);
  for (const auto& v : flat) {
    g.c.push_back(cell_from(v, l));
    gcd_accumulate(content, g.c.back());
  }
  if (content > 1)
    for (auto& v : g.c) divexact(v, content);
  return g;
}

/// Integer route for rational f on a rational box: with x = (A + B u) / D,
/// D^dx f is an integer polynomial in u (similarly in y), and multiplying the
/// power coefficients by lcm_i C(d, i) / C(d, i) makes the Bernstein
/// transform integral.  Avoids rational canonicalization entirely.
namespace idetail {

struct Affine {
  Integer A, B, D;  // x = (A + B u) / D
};

inline Affine affine(const Rational& lo, const Rational& hi) {
  const Rational w = hi - lo;
  Affine t;
  mpz_lcm(t.D.get_mpz_t(), lo.get_den_mpz_t(), w.get_den_mpz_t());
  t.A = Integer(t.D / lo.get_den()) * lo.get_num();
  t.B = Integer(t.D / w.get_den()) * w.get_num();
  return t;
}

/// Coefficients in u of sum_i c_i (A + B u)^i D^(d - i), length d + 1.
inline std::vector<Integer> substitute(const std::vector<Integer>& c, int d, const Affine& t) {
  std::vector<Integer> acc(static_cast<std::size_t>(d) + 1, Integer(0));
  Integer dp(1);
  int top = static_cast<int>(c.size()) - 1;
  // Horner from the top with homogenizing powers of D.
  for (int i = d; i >= 0; --i) {
    // acc <- acc * (A + B u)
    for (int k = d; k >= 0; --k) {
      acc[k] *= t.A;
      if (k > 0) acc[k] += t.B * acc[k - 1];
    }
    if (i <= top && c[i] != 0) acc[0] += c[i] * dp;
    if (i > 0) dp *= t.D;
  }
  return acc;
}

inline std::vector<Integer> to_bernstein(const std::vector<Integer>& a, int d) {
  std::vector<std::vector<Integer>> C(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    C[k].resize(static_cast<std::size_t>(k) + 1);
    C[k][0] = C[k][k] = 1;
    for (int i = 1; i < k; ++i) C[k][i] = C[k - 1][i - 1] + C[k - 1][i];
  }
  Integer L(1);
  for (int i = 0; i <= d; ++i) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), C[d][i].get_mpz_t());
  std::vector<Integer> alpha(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) alpha[i] = a[i] * Integer(L / C[d][i]);
  std::vector<Integer> b(static_cast<std::size_t>(d) + 1, Integer(0));
  for (int k = 0; k <= d; ++k)
    for (int i = 0; i <= k; ++i)
      if (alpha[i] != 0) b[k] += C[k][i] * alpha[i];
  return b;
}

}  // namespace idetail

inline Grid<Integer> integer_root_grid(const BiPoly<Rational>& f, const BoxT<Rational>& box) {
  const int fx = std::max(f.degree_x(), 0), fy = std::max(f.degree_y(), 0);
  const int dx = box.x_hi == box.x_lo ? 0 : fx;
  const int dy = box.y_hi == box.y_lo ? 0 : fy;
  Integer l(1);
  for (const auto& [e, v] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<std::vector<Integer>> cols(static_cast<std::size_t>(fy) + 1, std::vector<Integer>(fx + 1, Integer(0)));
  for (const auto& [e, v] : f.terms()) cols[e.second][e.first] = Integer(l / v.get_den()) * v.get_num();

  const auto tx = idetail::affine(box.x_lo, box.x_hi), ty = idetail::affine(box.y_lo, box.y_hi);
  // uv[i][j]: coefficient of u^i y^j
  std::vector<std::vector<Integer>> uv(static_cast<std::size_t>(dx) + 1, std::vector<Integer>(fy + 1, Integer(0)));
  for (int j = 0; j <= fy; ++j) {
    auto sub = idetail::substitute(cols[j], fx, tx);
    if (dx == 0) {
      uv[0][j] = std::move(sub[0]);
      continue;
    }
    auto bj = idetail::to_bernstein(sub, dx);
    for (int i = 0; i <= dx; ++i) uv[i][j] = std::move(bj[i]);
  }
  Grid<Integer> g;
  g.dx = dx;
  g.dy = dy;
  g.c.resize(static_cast<std::size_t>(dx + 1) * (dy + 1));
  for (int i = 0; i <= dx; ++i) {
    auto sub = idetail::substitute(uv[i], fy, ty);
    if (dy == 0) {
      g.at(i, 0) = std::move(sub[0]);
      continue;
    }
    auto bi = idetail::to_bernstein(sub, dy);
    for (int j = 0; j <= dy; ++j) g.at(i, j) = std::move(bi[j]);
  }
  Integer content(0);
  for (const auto& v : g.c) gcd_accumulate(content, v);
  if (content > 1)
    for (auto& v : g.c) divexact(v, content);
  g.normalize();
  return g;
}

/// De Casteljau subdivision at the midpoint of one axis.  Both halves are
/// scaled by 2^d (d the degree along the axis), then normalized.
template <class T>
std::pair<Grid<T>, Grid<T>> split(const Grid<T>& g, int axis) {
  const int d = g.degree(axis);
  const int lines = (axis == 0 ? g.dy : g.dx) + 1;
  Grid<T> L, R;
  L.dx = R.dx = g.dx;
  L.dy = R.dy = g.dy;
  L.c.resize(g.c.size());
  R.c.resize(g.c.size());
  auto idx = [&](int line, int k) -> std::size_t {
    return axis == 0 ? static_cast<std::size_t>(k) * (g.dy + 1) + line
                     : static_cast<std::size_t>(line) * (g.dy + 1) + k;
  };
  std::vector<T> tmp(static_cast<std::size_t>(d) + 1);
  for (int line = 0; line < lines; ++line) {
    for (int k = 0; k <= d; ++k) tmp[k] = g.c[idx(line, k)];
    L.c[idx(line, 0)] = tmp[0];
    shl(L.c[idx(line, 0)], d);
    R.c[idx(line, d)] = tmp[d];
    shl(R.c[idx(line, d)], d);
    for (int r = 1; r <= d; ++r) {
      for (int k = 0; k <= d - r; ++k) tmp[k] += tmp[k + 1];
      L.c[idx(line, r)] = tmp[0];
      shl(L.c[idx(line, r)], d - r);
      R.c[idx(line, d - r)] = tmp[d - r];
      shl(R.c[idx(line, d - r)], d - r);
    }
  }
  L.normalize();
  R.normalize();
  return {std::move(L), std::move(R)};
}

}  // namespace bern

/// Exact Bernstein coefficients of f on the box (no integer scaling),
/// indexed [i][j] with i the x-index.
template <ExactField F, class E = Rational>
std::vector<std::vector<common_field_t<F, E>>> bernstein_coefficients(const BiPoly<F>& f, const BoxT<E>& box) {
  using G = common_field_t<F, E>;
  const G xl = embed<G>(box.x_lo), wx = embed<G>(box.x_hi) - embed<G>(box.x_lo);
  const G yl = embed<G>(box.y_lo), wy = embed<G>(box.y_hi) - embed<G>(box.y_lo);
  const int dx = FieldTraits<G>::sign(wx) == 0 ? 0 : std::max(f.degree_x(), 0);
  const int dy = FieldTraits<G>::sign(wy) == 0 ? 0 : std::max(f.degree_y(), 0);
  const int fx = std::max(f.degree_x(), 0), fy = std::max(f.degree_y(), 0);
  std::vector<std::vector<G>> cols(static_cast<std::size_t>(fy) + 1, std::vector<G>(fx + 1, G(0)));
  for (const auto& [e, v] : f.terms()) cols[e.second][e.first] = embed<G>(v);
  std::vector<std::vector<G>> out(static_cast<std::size_t>(dx) + 1, std::vector<G>(dy + 1, G(0)));
  std::vector<std::vector<G>> uv(static_cast<std::size_t>(dx) + 1, std::vector<G>(fy + 1, G(0)));
  for (int j = 0; j <= fy; ++j) {
    const UniPoly<G> sub = UniPoly<G>(cols[j]).compose_affine(xl, wx);
    for (int i = 0; i <= dx; ++i) uv[i][j] = sub.coeff(i);
  }
  for (int i = 0; i <= dx; ++i) {
    const UniPoly<G> sub = UniPoly<G>(uv[i]).compose_affine(yl, wy);
    std::vector<G> pc(static_cast<std::size_t>(dy) + 1);
    for (int j = 0; j <= dy; ++j) pc[j] = sub.coeff(j);
    out[i] = bern::power_to_bernstein(pc, dy);
  }
  for (int j = 0; j <= dy; ++j) {
    std::vector<G> pc(static_cast<std::size_t>(dx) + 1);
    for (int i = 0; i <= dx; ++i) pc[i] = out[i][j];
    const auto bi = bern::power_to_bernstein(pc, dx);
    for (int i = 0; i <= dx; ++i) out[i][j] = bi[i];
  }
  return out;
}

/// Univariate Bernstein coefficients of p on [lo, hi].
template <ExactField F, class E = Rational>
std::vector<common_field_t<F, E>> bernstein_coefficients(const UniPoly<F>& p, const E& lo, const E& hi) {
  auto grid = bernstein_coefficients(BiPoly<F>::in_x(p), BoxT<E>::interval(lo, hi));
  std::vector<common_field_t<F, E>> out;
  for (auto& row : grid) out.push_back(std::move(row[0]));
  return out;
}

}  // namespace sharpturn
