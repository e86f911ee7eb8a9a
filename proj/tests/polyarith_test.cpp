#include "sharpturn/polar.hpp"
#include "sharpturn/poly.hpp"
#include "sharpturn/poly_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sharpturn;

namespace {

using RP = BiPoly<Rational>;
using RU = UniPoly<Rational>;

Rational r(long a, long b = 1) { return make_rational(a, b); }
RP X() { return RP::x(); }
RP Y() { return RP::y(); }
RP C(long a, long b = 1) { return RP::constant(r(a, b)); }

RP random_poly(std::mt19937_64& rng, int max_deg, bool even_y) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-9, 9), den(1, 5);
  RP f;
  const int terms = 1 + deg(rng);
  for (int k = 0; k < terms; ++k) {
    int a = deg(rng), b = deg(rng);
    if (even_y) b -= b % 2;
    if (a + b > max_deg) continue;
    f.add_term(a, b, r(coef(rng), den(rng)));
  }
  return f;
}

}  // namespace

TEST(RingOps, UniExamples) {
  const RU p({r(1), r(1)}), m({r(-1), r(1)});
  EXPECT_EQ(p * m, RU({r(-1), r(0), r(1)}));
  EXPECT_EQ(RU() + p, p);
  EXPECT_EQ((p * m).degree(), 2);
  EXPECT_EQ(RU().degree(), -1);
  const RU a({r(1), r(0), r(4)});
  EXPECT_EQ(a * r(4), RU({r(4), r(0), r(16)}));
}

TEST(RingOps, BiExamples) {
  EXPECT_EQ((X() + C(1)) * (X() - C(1)), X() * X() - C(1));
  const RP f = X() * Y() + C(3, 2);
  EXPECT_EQ(RP() + f, f);
  const RP p1 = C(1) + C(4) * Y() * Y();
  EXPECT_EQ(p1 * r(4), C(4) + C(16) * Y() * Y());
  EXPECT_EQ(shift(X() * X(), r(1), r(0)), X() * X() + C(2) * X() + C(1));
}

TEST(RingOps, DegreeOfProduct) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const RP a = random_poly(rng, 5, false), b = random_poly(rng, 5, false);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).total_degree(), a.total_degree() + b.total_degree());
  }
}

TEST(RingOps, DivMod) {
  const RU a({r(-1), r(0), r(0), r(1)}), d({r(-1), r(1)});
  auto [q, rem] = a.divmod(d);
  EXPECT_EQ(q, RU({r(1), r(1), r(1)}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_THROW(a.divmod(RU()), std::domain_error);
}

TEST(ReflectX, Examples) {
  EXPECT_EQ(X().reflect_x(), -X());
  EXPECT_EQ((X() * X() + Y() * Y()).reflect_x(), X() * X() + Y() * Y());
  const RP h = X() + C(1, 2), k = X() - C(1, 2);
  EXPECT_EQ((h * h).reflect_x(), k * k);
}

TEST(SymmetrizeEvenY, Examples) {
  EXPECT_TRUE(Y().symmetrize_even_y().is_zero());
  EXPECT_EQ((X() * X()).symmetrize_even_y(), C(2) * X() * X());
  EXPECT_EQ((X() + Y() + Y() * Y()).symmetrize_even_y(), C(2) * X() + C(2) * Y() * Y());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const RP f = random_poly(rng, 6, false);
    EXPECT_TRUE(f.symmetrize_even_y().is_even_in_y());
    const RP e = random_poly(rng, 6, true);
    EXPECT_EQ(e.symmetrize_even_y(), e * r(2));
  }
}

TEST(Rotate, Examples) {
  EXPECT_EQ(rotate_3pi4(C(1)), BiPoly<QSqrt2>::constant(QSqrt2(1)));
  EXPECT_EQ(rotate_3pi4(X() * X() + Y() * Y()), to_qsqrt2(X() * X() + Y() * Y()));
  const QSqrt2 h = QSqrt2::half_sqrt2();
  const auto rx = rotate_3pi4(X());
  EXPECT_EQ(rx, BiPoly<QSqrt2>::monomial(-h, 1, 0) + BiPoly<QSqrt2>::monomial(h, 0, 1));
  // The point (1, 0) turned by 3pi/4 is (-sqrt2/2, sqrt2/2); x evaluated there is 1.
  EXPECT_EQ(rx(-h, h), QSqrt2(1));
}

TEST(Rotate, EightTurnsIsIdentityAndDegreePreserved) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const RP f = random_poly(rng, 5, false);
    BiPoly<QSqrt2> g = to_qsqrt2(f);
    const auto once = rotate_3pi4(f);
    EXPECT_EQ(once.total_degree(), f.total_degree());
    for (int k = 0; k < 8; ++k) g = rotate_3pi4(g);
    EXPECT_EQ(g, to_qsqrt2(f));
  }
}

TEST(PolarDecompose, Examples) {
  const auto p1 = polar_decompose(X() * X() + Y() * Y(), 2);
  EXPECT_EQ(p1.slice(2), RU({r(1)}));
  EXPECT_TRUE(p1.slice(0).is_zero() && p1.slice(1).is_zero());
  const auto p2 = polar_decompose(X() * X() - Y() * Y(), 2);
  EXPECT_EQ(p2.slice(2), RU({r(-1), r(0), r(2)}));
  const auto p3 = polar_decompose(X() * Y() * Y(), 3);
  EXPECT_EQ(p3.slice(3), RU({r(0), r(1), r(0), r(-1)}));
  EXPECT_EQ(p3.parity(3), Parity::Odd);
  EXPECT_EQ(p2(r(1), r(1)), r(1));
  EXPECT_THROW(polar_decompose(Y(), 1), std::invalid_argument);
  EXPECT_THROW(polar_decompose(X() * X(), 1), std::invalid_argument);
}

TEST(PolarDecompose, ParityMatchesSliceIndex) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const RP f = random_poly(rng, 8, true);
    const auto phi = polar_decompose(f, 8);
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const Parity p = phi.parity(j);
      if (p == Parity::Zero) continue;
      EXPECT_EQ(p, j % 2 ? Parity::Odd : Parity::Even);
    }
  }
}

TEST(PolarDecompose, ReexpansionMatchesPolynomial) {
  // Substituting s -> x/r and using r^2 = x^2 + y^2 must reproduce f; with
  // r = 1 and a rational point on the unit circle both sides are exact.
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> t(-50, 50), rr(1, 9);
  for (int i = 0; i < 200; ++i) {
    const RP f = random_poly(rng, 7, true);
    const auto phi = polar_decompose(f, 7);
    // (cos, sin) = ((1 - m^2)/(1 + m^2), 2m/(1 + m^2)), radius rad
    const Rational m = make_rational(t(rng), 7), rad = make_rational(rr(rng), 4);
    const Rational c = (1 - m * m) / (1 + m * m), s = 2 * m / (1 + m * m);
    EXPECT_EQ(phi(rad, c), f(Rational(rad * c), Rational(rad * s)));
  }
}

TEST(Eval, Examples) {
  EXPECT_EQ(RU({r(-1), r(0), r(1)})(r(1)), r(0));
  const RU a({r(1, 2), r(1)}), b({r(1, 4), r(1)});
  const RU g = a * a * b * b;
  EXPECT_EQ(g(r(1)), r(225, 64));
  EXPECT_EQ(g(r(-1)), r(9, 64));
}

TEST(PolyText, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const RP f = random_poly(rng, 6, false);
    EXPECT_EQ(parse_poly<Rational>(poly_to_string(f)), f);
  }
  const auto g = rotate_3pi4(X() * X() * Y() + C(1, 3));
  EXPECT_EQ(parse_poly<QSqrt2>(poly_to_string(g)), g);
  EXPECT_EQ(parse_poly<Rational>("# comment\n\n1/2 x^1 y^0\n-3 x^0 y^2\n"), X() * r(1, 2) - C(3) * Y() * Y());
  EXPECT_THROW(parse_poly<Rational>("1/2 x^1\n"), ParseError);
  EXPECT_THROW(parse_poly<Rational>("abc x^1 y^2\n"), ParseError);
  EXPECT_THROW(parse_poly<Rational>("1 x^a y^2\n"), ParseError);
}
