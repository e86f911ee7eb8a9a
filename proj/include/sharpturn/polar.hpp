#pragma once

// Rotation of the plane by 3pi/4 and the polar form phi(r, s), s = cos(theta).

#include "sharpturn/poly.hpp"

#include <stdexcept>
#include <vector>

namespace sharpturn {

/// f composed with the rotation by -3pi/4, i.e. the polynomial whose zero
/// set is the zero set of f turned counterclockwise by 3pi/4:
///   result(x, y) = f(-(x - y)/sqrt2, -(x + y)/sqrt2).
template <ExactField F>
BiPoly<QSqrt2> rotate_3pi4(const BiPoly<F>& f) {
  const QSqrt2 h = QSqrt2::half_sqrt2();
  const auto X = BiPoly<QSqrt2>::monomial(-h, 1, 0) + BiPoly<QSqrt2>::monomial(h, 0, 1);
  const auto Y = BiPoly<QSqrt2>::monomial(-h, 1, 0) + BiPoly<QSqrt2>::monomial(-h, 0, 1);
  return substitute(f, X, Y);
}

/// phi(r, s) = sum_j r^j phi_j(s).  Slice j has the parity of j.
template <ExactField F>
class PolarPoly {
 public:
  PolarPoly() = default;
  explicit PolarPoly(std::vector<UniPoly<F>> slices) : slices_(std::move(slices)) {
    parity_.reserve(slices_.size());
    for (std::size_t j = 0; j < slices_.size(); ++j) {
      const Parity p = slices_[j].parity();
      const Parity want = j % 2 ? Parity::Odd : Parity::Even;
      if (p != Parity::Zero && p != want)
        throw std::logic_error("polar slice " + std::to_string(j) + " has parity " + to_string(p));
      parity_.push_back(p);
    }
  }

  /// Number of slices, n + 1.
  std::size_t size() const { return slices_.size(); }
  const UniPoly<F>& slice(std::size_t j) const { return slices_.at(j); }
  const std::vector<UniPoly<F>>& slices() const { return slices_; }
  Parity parity(std::size_t j) const { return parity_.at(j); }
  bool is_zero() const {
    for (const auto& s : slices_)
      if (!s.is_zero()) return false;
    return true;
  }

  template <class P>
  P operator()(const P& r, const P& s) const {
    P acc(0);
    for (auto it = slices_.rbegin(); it != slices_.rend(); ++it) {
      acc *= r;
      acc += (*it)(s);
    }
    return acc;
  }

 private:
  std::vector<UniPoly<F>> slices_;
  std::vector<Parity> parity_;
};

/// Polar form of a y-even polynomial of total degree at most n via
/// x^a y^(2b) -> r^(a+2b) s^a (1 - s^2)^b.
template <ExactField F>
PolarPoly<F> polar_decompose(const BiPoly<F>& f, int n) {
  if (!f.is_even_in_y()) throw std::invalid_argument("polar_decompose: polynomial is not even in y");
  if (f.total_degree() > n)
    throw std::invalid_argument("polar_decompose: total degree " + std::to_string(f.total_degree()) +
                                " exceeds n = " + std::to_string(n));
  if (n < 0) n = 0;
  const UniPoly<F> one_minus_s2({F(1), F(0), F(-1)});
  std::vector<UniPoly<F>> sin2_pow{UniPoly<F>::constant(F(1))};
  std::vector<UniPoly<F>> slices(static_cast<std::size_t>(n) + 1);
  for (const auto& [e, v] : f.terms()) {
    const int a = e.first, b = e.second / 2;
    while (static_cast<int>(sin2_pow.size()) <= b) sin2_pow.push_back(sin2_pow.back() * one_minus_s2);
    slices[a + 2 * b] += UniPoly<F>::monomial(v, a) * sin2_pow[b];
  }
  return PolarPoly<F>(std::move(slices));
}

}  // namespace sharpturn
