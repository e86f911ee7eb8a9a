#include "sharpturn/bigfloat.hpp"
#include "sharpturn/qsqrt2.hpp"
#include "sharpturn/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sharpturn;

namespace {

QSqrt2 q(long a, long ad, long b, long bd) { return {make_rational(a, ad), make_rational(b, bd)}; }

}  // namespace

TEST(QSqrt2Arith, Sqrt2Squared) {
  const QSqrt2 r = QSqrt2::sqrt2() * QSqrt2::sqrt2();
  EXPECT_EQ(r, QSqrt2(2));
  EXPECT_TRUE(r.is_rational());
}

TEST(QSqrt2Arith, AdditiveIdentity) { EXPECT_EQ(QSqrt2(1) + QSqrt2(0), QSqrt2(1)); }

TEST(QSqrt2Arith, ConjugateProduct) {
  EXPECT_EQ(q(1, 2, 1, 2) * q(-1, 2, 1, 2), QSqrt2(make_rational(1, 4)));
}

TEST(QSqrt2Arith, NegationAndInverse) {
  const QSqrt2 a = q(3, 7, -5, 11);
  EXPECT_EQ(-(-a), a);
  EXPECT_EQ(a * a.inverse(), QSqrt2(1));
  EXPECT_THROW(QSqrt2(0).inverse(), std::domain_error);
}

TEST(QSqrt2Sign, Examples) {
  EXPECT_EQ(QSqrt2(0).sign(), 0);
  EXPECT_EQ(q(-1, 1, 1, 1).sign(), 1);
  EXPECT_EQ(q(3, 1, -2, 1).sign(), 1);
  EXPECT_EQ(q(-3, 1, 2, 1).sign(), -1);
  EXPECT_EQ(q(1, 1, -1, 1).sign(), -1);
}

TEST(QSqrt2Sign, AgreesWithHighPrecisionOnRandomElements) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000);
  for (int i = 0; i < 10000; ++i) {
    const QSqrt2 a(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
    const BigFloat v(a, 256);
    EXPECT_EQ(a.sign(), v.sign()) << a;
  }
}

TEST(QSqrt2Sign, NearCancellation) {
  // 99/70 - sqrt2 > 0 and 140/99 - sqrt2 < 0 are classical convergents.
  EXPECT_EQ(q(99, 70, -1, 1).sign(), 1);
  EXPECT_EQ(q(140, 99, -1, 1).sign(), -1);
  // Pell solution 665857^2 - 2*470832^2 = 1.
  EXPECT_EQ(q(665857, 1, -470832, 1).sign(), 1);
  EXPECT_EQ(q(-665857, 1, 470832, 1).sign(), -1);
}

TEST(QSqrt2Text, RoundTrip) {
  const QSqrt2 a = q(-3, 4, 5, 6);
  EXPECT_EQ(a.str(), "-3/4 + 5/6*sqrt2");
  EXPECT_EQ(QSqrt2::parse(a.str()), a);
  EXPECT_EQ(QSqrt2::parse("7/2"), QSqrt2(make_rational(7, 2)));
  EXPECT_EQ(QSqrt2::parse("1/2*sqrt2"), QSqrt2::half_sqrt2());
}

TEST(RationalArith, RoundTripsExactly) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000000, 1000000000), den(1, 1000000000);
  for (int i = 0; i < 2000; ++i) {
    const Rational a = make_rational(num(rng), den(rng));
    Rational b = make_rational(num(rng), den(rng));
    EXPECT_EQ(Rational((a + b) - b), a);
    if (b != 0) EXPECT_EQ(Rational((a * b) / b), a);
  }
}

TEST(RationalArith, AlwaysReduced) {
  const Rational r = make_rational(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  const Rational s = Rational(make_rational(1, 6) + make_rational(1, 3));
  EXPECT_EQ(to_string(s), "1/2");
}

TEST(RationalText, Parse) {
  EXPECT_EQ(parse_rational(" -12/8 "), make_rational(-3, 2));
  EXPECT_EQ(parse_rational("+4"), Rational(4));
  for (const char* bad : {"", "1/", "/2", "1/0", "1/-2", "a", "1.5", "1/2/3"})
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(RationalHelpers, DyadicRounding) {
  const Rational two(2);
  const Rational lo = sqrt_floor_dyadic(two, 40);
  EXPECT_LT(lo * lo, two);
  const Rational step = pow2(-40);
  EXPECT_GT(Rational((lo + step) * (lo + step)), two);
  Rational r;
  EXPECT_TRUE(exact_sqrt(make_rational(9, 16), r));
  EXPECT_EQ(r, make_rational(3, 4));
  EXPECT_FALSE(exact_sqrt(two, r));
  EXPECT_EQ(ceil_dyadic(make_rational(1, 3), 2), make_rational(1, 2));
  EXPECT_EQ(floor_dyadic(make_rational(1, 3), 2), make_rational(1, 4));
}

TEST(BigFloatTest, PrecisionAndIntervals) {
  const Interval s = Interval::sqrt2(256);
  EXPECT_TRUE(s.contains(make_rational(99, 70)) == false);
  EXPECT_TRUE((s * s).contains(Rational(2)));
  EXPECT_LT(s.width().to_double(), 1e-70);
  const BigFloat x(make_rational(1, 3), 256);
  EXPECT_NEAR((x * BigFloat(3.0, 256)).to_double(), 1.0, 1e-300);
}
