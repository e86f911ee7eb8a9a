#include "sharpturn/bernstein.hpp"
#include "sharpturn/certify.hpp"
#include "sharpturn/epsilon.hpp"
#include "sharpturn/sturm.hpp"

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

RP baseline(int n) {
  return (X() + C(1)).pow(2 * n) + (Y() + C(1)).pow(2 * n) - C(1);
}

double baseline_threshold(int n) { return 1.0 - std::pow(2.0, -1.0 / (2.0 * n)); }

}  // namespace

TEST(BernsteinCoefficients, Examples) {
  const RU x({r(0), r(1)});
  EXPECT_EQ(bernstein_coefficients(x, r(0), r(1)), (std::vector<Rational>{r(0), r(1)}));
  EXPECT_EQ(bernstein_coefficients(x, r(1, 4), r(1)), (std::vector<Rational>{r(1, 4), r(1)}));
  const RU q({r(-1, 2), r(0), r(1)});
  EXPECT_EQ(bernstein_coefficients(q, r(0), r(1)), (std::vector<Rational>{r(-1, 2), r(-1, 2), r(1, 2)}));
}

TEST(BernsteinCoefficients, IntegerGridKeepsSigns) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> c(-20, 20);
  for (int i = 0; i < 20; ++i) {
    RP f;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) f.add_term(a, b, r(c(rng), 7));
    const Box box(r(-1, 3), r(1, 2), r(-2), r(1, 5));
    const auto exact = bernstein_coefficients(f, box);
    const auto grid = bern::integer_grid(exact);
    for (int a = 0; a <= grid.dx; ++a)
      for (int b = 0; b <= grid.dy; ++b) EXPECT_EQ(sgn(grid.at(a, b)), sgn(exact[a][b]));
    // A split grid equals the grid computed directly on the half box, up to scale.
    auto [lo, hi] = bern::split(grid, 0);
    const auto direct = bern::integer_grid(bernstein_coefficients(f, Box(r(-1, 3), r(1, 12), r(-2), r(1, 5))));
    for (std::size_t k = 0; k < lo.c.size(); ++k) EXPECT_EQ(sgn(lo.c[k]), sgn(direct.c[k]));
    const Rational scale = Rational(lo.c[0]) / Rational(direct.c[0]);
    if (direct.c[0] != 0) {
      for (std::size_t k = 0; k < lo.c.size(); ++k) EXPECT_EQ(Rational(lo.c[k]), scale * direct.c[k]);
    }
  }
}

TEST(SignOnBox, Examples) {
  const Box sq(r(-1), r(1), r(-1), r(1));
  const auto c1 = sign_on_box(X() * X() + Y() * Y() + C(1), sq, Target::Positive);
  EXPECT_EQ(c1.verdict, Verdict::Positive);
  const auto c2 = sign_on_box(X(), Box(r(-1), r(1), r(0), r(1)), Target::Positive);
  ASSERT_EQ(c2.verdict, Verdict::MixedWitness);
  EXPECT_LE(c2.witness->x.sign(), 0);
  EXPECT_EQ(c2.witness->value, c2.witness->x);
  const auto c3 = sign_on_box(X() * X() + Y() * Y() - C(1, 4), sq, Target::Negative);
  EXPECT_EQ(c3.verdict, Verdict::MixedWitness);
}

TEST(SignOnBox, UnknownWhenDepthExhausted) {
  // (x - y)^2 + 2^-6 is positive but needs subdivision along the diagonal.
  const RP f = (X() - Y()) * (X() - Y()) + RP::constant(pow2(-6));
  CertifyOptions opt;
  opt.max_depth = 2;
  const auto c = sign_on_box(f, Box(r(-1), r(1), r(-1), r(1)), Target::Positive, opt);
  EXPECT_EQ(c.verdict, Verdict::Unknown);
  EXPECT_EQ(sign_on_box(f, Box(r(-1), r(1), r(-1), r(1)), Target::Positive).verdict, Verdict::Positive);
}

TEST(SignOnBox, QSqrt2Coefficients) {
  const QSqrt2 h = QSqrt2::half_sqrt2();
  // s - sqrt2/2 is negative on [0, 7/10] and positive on [71/100, 1].
  const UniPoly<QSqrt2> p({-h, QSqrt2(1)});
  EXPECT_EQ(sign_on_interval(p, r(0), r(7, 10), Target::Negative).verdict, Verdict::Negative);
  EXPECT_EQ(sign_on_interval(p, r(71, 100), r(1), Target::Positive).verdict, Verdict::Positive);
  EXPECT_EQ(sign_on_interval(p, r(7, 10), r(71, 100), Target::Positive).verdict, Verdict::MixedWitness);
  // Q(sqrt2) endpoints: rational p = 2s^2 - 1 on [sqrt2/2 + 1/100, 1].
  const RU q({r(-1), r(0), r(2)});
  EXPECT_EQ(sign_on_interval(q, h + QSqrt2(r(1, 100)), QSqrt2(1), Target::Positive).verdict, Verdict::Positive);
  EXPECT_EQ(sign_on_interval(q, h, QSqrt2(1), Target::Positive).verdict, Verdict::MixedWitness);
  EXPECT_EQ(sign_on_interval(q, h, QSqrt2(1), Target::NonNegative).verdict, Verdict::NonNegative);
}

TEST(Sturm, Examples) {
  EXPECT_EQ(sturm_count(RU({r(0), r(1)}), r(-1), r(1)), 1);
  EXPECT_EQ(sturm_count(RU({r(-2), r(0), r(1)}), r(1), r(2)), 1);
  const RU a({r(-2), r(0), r(1)}), b({r(-3), r(0), r(1)});
  EXPECT_EQ(sturm_count(a * b, r(1), r(2)), 2);
  EXPECT_THROW(sturm_count(RU({r(-1), r(1)}), r(1), r(2)), std::invalid_argument);
}

TEST(Sturm, MultipleRootsAndQSqrt2Endpoints) {
  const RU a({r(-2), r(0), r(1)});
  EXPECT_EQ(sturm_count(a * a * RU({r(1), r(1)}), r(-3), r(3)), 3);
  const QSqrt2 h = QSqrt2::half_sqrt2();
  const RU c({r(70, 99), r(-1)});  // root 70/99 just below sqrt2/2
  EXPECT_EQ(sturm_count(c, h - QSqrt2(r(1, 1000)), h + QSqrt2(r(1, 1000))), 1);
  EXPECT_EQ(sturm_count(c, h - QSqrt2(r(1, 100000)), h + QSqrt2(r(1, 100000))), 0);
}

TEST(MeasureEpsilon, BaselineTen) {
  EpsilonOptions opt;
  opt.steps = 24;
  const auto res = measure_epsilon(baseline(10), r(1, 16), opt);
  const double t = baseline_threshold(10);
  EXPECT_LT(to_double(res.eps_fail), t);
  EXPECT_GT(to_double(res.eps_ok), t);
  EXPECT_LE(res.eps_ok - res.eps_fail, res.eps_ok * pow2(-24));
  EXPECT_EQ(res.fail_kind, "witness");
  EXPECT_TRUE(res.all_certified());
}

TEST(MeasureEpsilon, SignInverted) {
  EXPECT_THROW(measure_epsilon(-(X() + Y()), r(1, 8)), NoPassingEpsilon);
}

TEST(MeasureEpsilon, LinearFailsStrip) {
  // x + y is negative at (eps, -1) for every eps < 1.
  EXPECT_THROW(measure_epsilon(X() + Y(), r(1, 8)), NoPassingEpsilon);
}
