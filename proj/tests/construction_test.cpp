#include "sharpturn/construction.hpp"
#include "sharpturn/report.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sharpturn;

namespace {

using RU = UniPoly<Rational>;
using RP = BiPoly<Rational>;

Rational r(long a, long b = 1) { return make_rational(a, b); }

const SharpTurnExample& example101() {
  static const SharpTurnExample ex = construct_example(101);
  return ex;
}

}  // namespace

TEST(PQStep, ExactSquareRootStep) {
  const PQIterate s0 = pq_initial(r(1, 4));
  EXPECT_EQ(s0.K, r(4));
  const PQIterate s1 = pq_step(s0, r(2));
  EXPECT_EQ(s1.p, RU({r(1), r(0), r(4)}));
  EXPECT_EQ(s1.q, RU::constant(r(4)));
  EXPECT_EQ(s1.K, r(5, 4));
  EXPECT_EQ(s1.m, 1);
  // lower end of the range is attained at y = 1/2
  EXPECT_EQ(s1.p(r(1, 2)) / (r(1, 2) * s1.q(r(1, 2))), r(1));
}

TEST(PQStep, DegenerateSurrogate) {
  const PQIterate s1 = pq_step(pq_initial(r(1, 4)), r(1));
  EXPECT_EQ(s1.p, RU({r(1), r(0), r(1)}));
  EXPECT_EQ(s1.q, RU::constant(r(2)));
  EXPECT_EQ(s1.K, r(17, 8));  // max(1, (4 + 1/4) / 2)
}

TEST(PQStep, RejectsNonPositiveSurrogate) {
  EXPECT_THROW(pq_step(pq_initial(r(1, 4)), r(0)), PreconditionError);
  EXPECT_THROW(pq_initial(r(1)), PreconditionError);
}

TEST(PQStep, InvariantsHoldForAnySurrogate) {
  // p' - y q' = (p - c y q)^2 for every c > 0, so cond4 survives a rough c.
  for (const Rational& c : {r(1, 3), r(7, 5), r(3)}) {
    PQIterate s0 = pq_initial(r(1, 4));
    s0.c = c;
    const PQIterate s1 = pq_step(s0, c);
    for (const auto& chk : check_iterate(s1, &s0, r(1, 4))) EXPECT_TRUE(chk.pass) << chk.name;
  }
}

TEST(PQBuild, IterationCountAndA) {
  EXPECT_EQ(degree_budget(101), 50);
  EXPECT_EQ(choose_m0(101), 4);
  EXPECT_EQ(choose_m0(151), 5);
  EXPECT_EQ(degree_budget(201), 100);
  EXPECT_EQ(choose_m0(201), 5);
  const PQBuild b = pq_build(101);
  EXPECT_EQ(b.params.m0, 4);
  EXPECT_EQ(b.params.a, pow(r(10, 11), 16));
  EXPECT_LE(std::max(b.params.deg_p, b.params.deg_q), 50);
  EXPECT_LE(b.iterates.back().K, r(11, 10));
  for (const auto& c : b.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(PQBuild, SurrogateAccuracy) {
  const PQBuild b = pq_build(101);
  for (std::size_t k = 0; k + 1 < b.iterates.size(); ++k) {
    const Rational& c = b.iterates[k].c;
    const Rational& K = b.iterates[k].K;
    // c <= sqrt(K) and sqrt(K) - c <= 2^-32 c
    EXPECT_LE(c * c, K);
    const Rational up = c * (1 + pow2(-32));
    EXPECT_GT(up * up, K);
  }
}

TEST(PQBuild, KContraction) {
  const PQBuild b = pq_build(201);
  for (std::size_t k = 1; k < b.iterates.size(); ++k) {
    const Rational s = b.iterates[k].K - pow2(-20);
    EXPECT_TRUE(s <= 0 || s * s < b.iterates[k - 1].K) << "step " << k;
  }
}

TEST(PQBuild, RequiresLargeDegree) {
  EXPECT_THROW(pq_build(100), PreconditionError);
  EXPECT_THROW(construct_example(100), PreconditionError);
  try {
    construct_example(100);
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("n > 100"), std::string::npos);
  }
}

TEST(BuildG, Examples) {
  const RU g = build_g(20);
  const RU a({r(1, 2), r(1)}), b({r(1, 4), r(1)});
  EXPECT_EQ(g, a * a * b * b);
  EXPECT_EQ(g(r(1)), r(225, 64));
  EXPECT_EQ(Rational(2 * g(r(-1))), r(18, 64));
  EXPECT_EQ(g(r(-1, 2)), r(0));
  EXPECT_EQ(g(r(1, 2)), r(9, 16));
  EXPECT_TRUE(check_g_nonnegative(g).pass);
  EXPECT_TRUE(check_g_dominance(g, r(1, 4)).pass);
  EXPECT_THROW(build_g(9), PreconditionError);
}

TEST(BuildG, DegreeWithinBudget) {
  for (int n : {101, 151, 201, 333}) EXPECT_LE(build_g(n).degree(), (n - 1) / 2) << n;
}

TEST(BuildG, DominanceFailsBelowTheFloor) {
  // g(0) - 2 g(0) < 0
  const RU g = build_g(20);
  EXPECT_FALSE(check_g_dominance(g, r(0)).pass);
}

TEST(Assemble, Examples) {
  const RU one = RU::constant(r(1));
  EXPECT_EQ(assemble(one, one, one), RP::constant(r(1)) + RP::y());
  const RU p({r(1), r(0), r(4)}), q = RU::constant(r(4));
  const RU g({r(1, 4), r(1), r(1)});  // (x + 1/2)^2
  const RP X = RP::x(), Y = RP::y(), half = RP::constant(r(1, 2));
  const RP expect = (RP::constant(r(1)) + RP::constant(r(4)) * Y * Y) * (X + half) * (X + half) +
                    RP::constant(r(4)) * Y * (X - half) * (X - half);
  EXPECT_EQ(assemble(p, q, g), expect);
  EXPECT_THROW(assemble(p, q, g, 3), PreconditionError);
}

TEST(ConstructExample, N101) {
  const SharpTurnExample& ex = example101();
  EXPECT_LE(ex.f.total_degree(), 101);
  EXPECT_EQ(ex.params.deg_f, ex.f.total_degree());
  EXPECT_EQ(ex.params.g_factor_count, 10);
  EXPECT_TRUE(ex.all_conditions_pass());
  EXPECT_TRUE(ex.eps.all_certified());
  EXPECT_GT(ex.eps.eps_ok, pow2(-10));
  EXPECT_LT(to_double(ex.eps.eps_ok), baseline_threshold(101));
  EXPECT_NEAR(ex.params.C0_effective, -std::log(to_double(ex.eps.eps_ok)) / 101, 1e-12);
}

TEST(ConstructExample, BeatsBaselineThreshold) {
  // The baseline only passes above its threshold, so beating the threshold
  // also beats the baseline's certified eps_ok.
  const SharpTurnExample& ex = example101();
  EXPECT_LT(to_double(ex.eps.eps_ok), 1.0 - std::exp2(-1.0 / 202));
  EXPECT_LT(to_double(ex.eps.eps_ok), 0.00343);
}

TEST(ConstructExample, JsonFields) {
  const Json j = to_json(example101(), "sharp_turn_n101.poly");
  for (const char* k : {"n", "m0", "a", "deg_f", "eps_ok", "eps_fail", "C0_effective", "poly_file"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["n"], 101);
  EXPECT_EQ(j["m0"], 4);
}

TEST(ConstructExample, Deterministic) {
  const SharpTurnExample again = construct_example(101);
  EXPECT_EQ(again.f, example101().f);
  EXPECT_EQ(again.eps.eps_ok, example101().eps.eps_ok);
  EXPECT_EQ(again.eps.eps_fail, example101().eps.eps_fail);
}

TEST(Baseline, Examples) {
  EXPECT_NEAR(baseline_threshold(1), 0.29289, 1e-5);
  EXPECT_NEAR(baseline_threshold(10), 0.03406, 1e-5);
  for (int n : {1, 3, 7}) EXPECT_GT(baseline_poly(n)(r(1, 2), r(1, 2)), 0);
  EXPECT_THROW(baseline_poly(0), PreconditionError);
}

TEST(Baseline, BracketsThreshold) {
  for (int n : {1, 2, 5}) {
    const SharpTurnExample ex = baseline_simple(n);
    EXPECT_LT(to_double(ex.eps.eps_fail), baseline_threshold(n)) << n;
    EXPECT_GT(to_double(ex.eps.eps_ok), baseline_threshold(n)) << n;
  }
}
