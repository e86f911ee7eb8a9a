#pragma once

// The simplex with vertices O and P_k = (1, t_k, ..., t_k^n), t_k = (n + k) / (2n),
// 0 <= k <= n: exact volume, facet measures, incenter and inradius.
//
// Facet l (0 <= l <= n) is the one opposite P_l and contains O; facet n + 1 is
// P_0 ... P_n, which lies in the hyperplane x_0 = 1.

#include "sharpturn/bigfloat.hpp"
#include "sharpturn/errors.hpp"
#include "sharpturn/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sharpturn {

using RMatrix = std::vector<std::vector<Rational>>;

/// Exact determinant by Gaussian elimination over Q.
inline Rational determinant(RMatrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

struct SimplexSpec {
  int n = 0;
  std::vector<Rational> nodes;           // t_k
  std::vector<std::vector<Rational>> P;  // P_k; the origin is implicit
};

inline SimplexSpec simplex_spec(int n) {
  if (n < 1) throw std::invalid_argument("simplex needs n >= 1");
  SimplexSpec s;
  s.n = n;
  for (int k = 0; k <= n; ++k) {
    const Rational t = make_rational(n + k, 2 * n);
    s.nodes.push_back(t);
    std::vector<Rational> v{Rational(1)};
    for (int j = 1; j <= n; ++j) v.push_back(v.back() * t);
    s.P.push_back(std::move(v));
  }
  return s;
}

/// prod_{j<k} (t_k - t_j)
inline Rational vandermonde(const std::vector<Rational>& t) {
  Rational v(1);
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t j = 0; j < k; ++j) v *= t[k] - t[j];
  return v;
}

/// e_0, ..., e_m of t_1, ..., t_m.
inline std::vector<Rational> elementary_symmetric(const std::vector<Rational>& t) {
  std::vector<Rational> e{Rational(1)};
  for (const auto& x : t) {
    e.push_back(Rational(0));
    for (std::size_t h = e.size() - 1; h > 0; --h) e[h] += e[h - 1] * x;
  }
  return e;
}

inline std::vector<Rational> nodes_without(const std::vector<Rational>& t, std::size_t l) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (k != l) out.push_back(t[k]);
  return out;
}

inline Rational simplex_volume_det(int n) {
  const auto s = simplex_spec(n);
  return abs(determinant(s.P)) / factorial(n + 1);
}

/// (1/(n+1)!) prod_{n<=j<k<=2n} (k - j)/(2n)
inline Rational simplex_volume_product(int n) {
  if (n < 1) throw std::invalid_argument("simplex needs n >= 1");
  Rational v(1);
  for (int k = n; k <= 2 * n; ++k)
    for (int j = n; j < k; ++j) v *= make_rational(k - j, 2 * n);
  return v / factorial(n + 1);
}

/// Volume by both routes, which must agree exactly; 1 <= n <= 14.
inline Rational simplex_volume(int n) {
  if (n < 1 || n > 14) throw std::invalid_argument("simplex_volume: n must lie in [1, 14]");
  const Rational a = simplex_volume_det(n), b = simplex_volume_product(n);
  if (a != b) throw std::logic_error("simplex volume mismatch at n = " + std::to_string(n));
  return a;
}

/// Squared facet measures from Gram determinants of edge vectors.
inline std::vector<Rational> facet_area_squares_gram(int n) {
  const auto s = simplex_spec(n);
  const Rational nf2 = Rational(factorial(n)) * Rational(factorial(n));
  auto gram = [](const std::vector<std::vector<Rational>>& edges) {
    RMatrix g(edges.size(), std::vector<Rational>(edges.size()));
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        Rational d(0);
        for (std::size_t h = 0; h < edges[i].size(); ++h) d += edges[i][h] * edges[j][h];
        g[i][j] = g[j][i] = d;
      }
    return determinant(std::move(g));
  };
  std::vector<Rational> out;
  for (int l = 0; l <= n; ++l) {
    std::vector<std::vector<Rational>> edges;
    for (int k = 0; k <= n; ++k)
      if (k != l) edges.push_back(s.P[k]);
    out.push_back(gram(edges) / nf2);
  }
  std::vector<std::vector<Rational>> edges;
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> e(n + 1);
    for (int h = 0; h <= n; ++h) e[h] = s.P[k][h] - s.P[0][h];
    edges.push_back(std::move(e));
  }
  out.push_back(gram(edges) / nf2);
  return out;
}

namespace detail {

/// Coefficients (low to high) of prod_k (w - u_k) over integer nodes u_k = n + k, k != skip.
inline std::vector<Integer> node_polynomial(int n, int skip) {
  std::vector<Integer> c{Integer(1)};
  for (int k = 0; k <= n; ++k) {
    if (k == skip) continue;
    c.insert(c.begin(), Integer(0));
    for (std::size_t h = 0; h + 1 < c.size(); ++h) c[h] -= c[h + 1] * (n + k);
  }
  return c;
}

}  // namespace detail

/// Squared facet measures via Cauchy-Binet: facet l has squared measure
/// V(t without t_l)^2 sum_h e_h(t without t_l)^2 / n!^2.  With u = 2n t the
/// node differences are integers, V(u without u_l) = sf(n) / (l! (n-l)!)
/// where sf(n) = prod_{m<=n} m!, and e_h(t) = e_h(u) / (2n)^h.
inline std::vector<Rational> facet_area_squares_closed(int n) {
  if (n < 1) throw std::invalid_argument("simplex needs n >= 1");
  Integer sf(1);
  for (int m = 1; m <= n; ++m) sf *= factorial(m);
  const Integer two_n(2 * n);
  Integer scale_v;  // (2n)^(n(n-1)/2)
  mpz_pow_ui(scale_v.get_mpz_t(), two_n.get_mpz_t(), static_cast<unsigned long>(n) * (n - 1) / 2);
  Integer scale_e;  // (2n)^(2n)
  mpz_pow_ui(scale_e.get_mpz_t(), two_n.get_mpz_t(), 2ul * n);
  const Integer two_n_sq = two_n * two_n;
  const Rational nf2 = Rational(factorial(n)) * Rational(factorial(n));
  std::vector<Rational> out;
  for (int l = 0; l <= n; ++l) {
    const auto c = detail::node_polynomial(n, l);  // c[n - h] = (-1)^h e_h(u)
    Integer se(0), w(1);  // sum_h e_h(u)^2 (2n)^(2(n-h)), built from h = n down
    for (int h = n; h >= 0; --h) {
      se += c[n - h] * c[n - h] * w;
      w *= two_n_sq;
    }
    const Rational v = make_rational(Integer(sf / (factorial(l) * factorial(n - l))), scale_v);
    out.push_back(v * v * make_rational(se, scale_e) / nf2);
  }
  Integer scale_p;  // (2n)^(n(n+1)/2)
  mpz_pow_ui(scale_p.get_mpz_t(), two_n.get_mpz_t(), static_cast<unsigned long>(n) * (n + 1) / 2);
  const Rational v = make_rational(sf, scale_p);
  out.push_back(v * v / nf2);
  return out;
}

/// (1/n!) prod_{0<=j<k<=n} (k - j)/(2n), the measure of facet n + 1.
inline Rational parallel_facet_area(int n) {
  Rational v(1);
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j < k; ++j) v *= make_rational(k - j, 2 * n);
  return v / factorial(n);
}

/// (2^n/n!) prod_{0<=j<k<=n, j,k != l} (k - j)/(2n), an upper bound for facet l.
inline Rational origin_facet_bound(int n, int l) {
  Rational v = pow2(n) / factorial(n);
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j < k; ++j)
      if (j != l && k != l) v *= make_rational(k - j, 2 * n);
  return v;
}

struct FacetAreas {
  int n = 0;
  mpfr_prec_t precision = 0;
  std::vector<Rational> squares;
  std::vector<Interval> areas;
  Interval parallel_closed_form;
  BigFloat parallel_rel_diff;  // upper bound on |gram - closed| / closed
  std::vector<Rational> bounds;  // one per origin facet
  std::vector<bool> within_bound;

  bool all_within_bound() const {
    for (bool b : within_bound)
      if (!b) return false;
    return true;
  }
};

/// Upper bound on |a - b| / |b| for enclosures a, b with b bounded away from zero.
inline BigFloat relative_difference(const Interval& a, const Interval& b) {
  const Interval d = (a - b).abs() / b.abs();
  return d.hi();
}

inline FacetAreas facet_areas(int n, mpfr_prec_t prec) {
  if (n < 1 || n > 10) throw std::invalid_argument("facet_areas: n must lie in [1, 10]");
  FacetAreas fa;
  fa.n = n;
  fa.precision = prec;
  fa.squares = facet_area_squares_gram(n);
  for (const auto& sq : fa.squares) fa.areas.push_back(Interval::sqrt_of(sq, prec));
  fa.parallel_closed_form = Interval(parallel_facet_area(n), prec);
  fa.parallel_rel_diff = relative_difference(fa.areas.back(), fa.parallel_closed_form);
  const BigFloat tol(pow2(-(static_cast<long>(prec) - 16)), prec);
  if (tol < fa.parallel_rel_diff)
    throw PrecisionError("facet_areas: " + std::to_string(prec) + " bits cannot confirm the parallel facet");
  for (int l = 0; l <= n; ++l) {
    fa.bounds.push_back(origin_facet_bound(n, l));
    fa.within_bound.push_back(fa.squares[l] <= fa.bounds.back() * fa.bounds.back());
  }
  return fa;
}

struct IncenterResult {
  int n = 0;
  mpfr_prec_t precision = 0;
  std::string area_route;  // "gram" or "closed-form"
  std::vector<Interval> b;
  Interval R;
  Rational volume;
  std::vector<Interval> facet_areas;
  Interval total_area;
  std::vector<Interval> distances;  // center to each facet hyperplane
  bool distances_agree = false;
  bool b_bounded = false;  // |b_j| <= 1 + 2^-64
  bool volume_identity = false;  // R * total_area encloses (n + 1) * volume
};

/// Area-weighted vertex average.  Gram areas up to n = 10 (cross-checked
/// against the closed form), closed form beyond.
inline IncenterResult incenter(int n, mpfr_prec_t prec) {
  if (n < 1) throw std::invalid_argument("incenter needs n >= 1");
  const auto s = simplex_spec(n);
  IncenterResult res;
  res.n = n;
  res.precision = prec;
  std::vector<Rational> squares = facet_area_squares_closed(n);
  if (n <= 10) {
    if (facet_area_squares_gram(n) != squares) throw std::logic_error("facet area routes disagree");
    res.area_route = "gram";
  } else {
    res.area_route = "closed-form";
  }
  res.volume = n <= 14 ? simplex_volume(n) : simplex_volume_product(n);

  for (const auto& sq : squares) res.facet_areas.push_back(Interval::sqrt_of(sq, prec));
  res.total_area = Interval(Rational(0), prec);
  for (const auto& a : res.facet_areas) res.total_area = res.total_area + a;
  res.R = Interval(res.volume * (n + 1), prec) / res.total_area;
  res.volume_identity = (res.R * res.total_area).contains(res.volume * (n + 1));

  for (int j = 0; j <= n; ++j) {
    Interval acc(Rational(0), prec);
    for (int k = 0; k <= n; ++k) acc = acc + res.facet_areas[k] * Interval(s.P[k][j], prec);
    res.b.push_back(acc / res.total_area);
  }
  const Rational cap = 1 + pow2(-64);
  res.b_bounded = true;
  for (const auto& bj : res.b)
    if (!bj.abs().certainly_le(cap)) res.b_bounded = false;

  res.distances_agree = true;
  // Facet l has normal (2n)^h [w^h] prod_{k != l} (w - u_k), up to scale.
  for (int l = 0; l <= n; ++l) {
    const auto c = detail::node_polynomial(n, l);
    Interval dot(Rational(0), prec);
    Integer norm2(0), w(1);
    for (int h = 0; h <= n; ++h) {
      const Integer coeff = c[h] * w;
      dot = dot + Interval(Rational(coeff), prec) * res.b[h];
      norm2 += coeff * coeff;
      w *= 2 * n;
    }
    res.distances.push_back(dot.abs() / Interval::sqrt_of(Rational(norm2), prec));
  }
  res.distances.push_back((Interval(Rational(1), prec) - res.b[0]).abs());
  for (const auto& d : res.distances)
    if (!d.overlaps(res.R)) res.distances_agree = false;
  return res;
}

}  // namespace sharpturn
