#pragma once

// The exponentially sharp example f = p(y) g(x) + y q(y) g(-x) and the
// (x+1)^(2n) + (y+1)^(2n) - 1 baseline.
//
// p, q come from the iteration p' = p^2 + c^2 y^2 q^2, q' = 2c p q started
// at p = q = 1, where c is a rational stand-in for sqrt(K) and K bounds the
// ratio p / (y q) on [a, 1].  g = prod_{m=1..N} (x + 2^-m)^2, N = n / 10.

#include "sharpturn/epsilon.hpp"
#include "sharpturn/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpturn {

class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bits kept when a square root has to be approximated.
constexpr unsigned kSqrtBits = 40;
/// K' is rounded up to this dyadic grid.
constexpr unsigned kRangeBits = 64;

struct PQIterate {
  int m = 0;
  UniPoly<Rational> p, q;
  Rational K;  // p / (y q) maps [a, 1] into [1, K]
  Rational c;  // surrogate for sqrt(K) used to form step m + 1; 0 until chosen
};

/// One named condition with its supporting certificates.
struct ConditionCheck {
  std::string name;
  bool pass = false;
  std::string method;
  std::vector<SignCertificate> certificates;
};

struct ConstructionParams {
  int n = 0;
  int m0 = 0;
  int degree_budget = 0;
  Rational a;
  int g_factor_count = 0;
  int deg_p = 0, deg_q = 0, deg_g = 0, deg_f = 0;
  double C0_effective = 0;
};

struct SharpTurnExample {
  BiPoly<Rational> f;
  ConstructionParams params;
  CertifiedEpsilon eps;
  std::vector<PQIterate> iterates;
  std::vector<ConditionCheck> conditions;

  bool all_conditions_pass() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
};

inline UniPoly<Rational> y_poly() { return UniPoly<Rational>::x(); }

/// Rational c with c = sqrt(K) when K is a square, else the 2^-40 floor of sqrt(K).
inline Rational sqrt_surrogate(const Rational& K) {
  Rational r;
  if (exact_sqrt(K, r)) return r;
  return sqrt_floor_dyadic(K, kSqrtBits);
}

/// Image bound of t -> (t/c + c/t)/2 on [1, K], rounded up to the dyadic grid.
inline Rational next_range_bound(const Rational& K, const Rational& c) {
  const Rational at1 = (1 / c + c) / 2;
  const Rational atK = (K / c + c / K) / 2;
  return ceil_dyadic(at1 > atK ? at1 : atK, kRangeBits);
}

inline PQIterate pq_initial(const Rational& a) {
  if (a <= 0 || a >= 1) throw PreconditionError("pq iteration needs 0 < a < 1");
  PQIterate s;
  s.p = s.q = UniPoly<Rational>::constant(Rational(1));
  s.K = 1 / a;
  return s;
}

/// p' = p^2 + c^2 y^2 q^2, q' = 2 c p q, K' from next_range_bound.
inline PQIterate pq_step(const PQIterate& s, const Rational& c) {
  if (c <= 0) throw PreconditionError("pq_step needs c > 0");
  const auto y = y_poly();
  PQIterate t;
  t.m = s.m + 1;
  t.p = s.p * s.p + (y * y * s.q * s.q) * Rational(c * c);
  t.q = (s.p * s.q) * Rational(2 * c);
  t.K = next_range_bound(s.K, c);
  return t;
}

/// Certifies the range and sign invariants of an iterate on [a, 1] and [0, 1].
/// `prev` supplies the square identity p - y q = (p_prev - c y q_prev)^2.
inline std::vector<ConditionCheck> check_iterate(const PQIterate& s, const PQIterate* prev, const Rational& a,
                                                 const CertifyOptions& opt = {}) {
  const auto y = y_poly();
  std::vector<ConditionCheck> out;
  const std::string tag = "m=" + std::to_string(s.m) + ": ";

  ConditionCheck c1{tag + "p, q even", false, "coefficient parity", {}};
  auto even = [](const UniPoly<Rational>& u) { return u.parity() == Parity::Even || u.parity() == Parity::Zero; };
  c1.pass = even(s.p) && even(s.q);
  out.push_back(c1);

  ConditionCheck c2{tag + "p > 0 and q > 0 on [0,1]", false, "Bernstein", {}};
  c2.certificates.push_back(sign_on_interval(s.p, Rational(0), Rational(1), Target::Positive, opt));
  c2.certificates.push_back(sign_on_interval(s.q, Rational(0), Rational(1), Target::Positive, opt));
  c2.pass = c2.certificates[0].certified() && c2.certificates[1].certified();
  out.push_back(c2);

  ConditionCheck c4{tag + "p - y q >= 0 on [0,1]", false, "", {}};
  const auto gap = s.p - y * s.q;
  if (prev == nullptr) {
    c4.method = "Bernstein";
    c4.certificates.push_back(sign_on_interval(gap, Rational(0), Rational(1), Target::NonNegative, opt));
    c4.pass = c4.certificates[0].certified();
  } else {
    c4.method = "exact square identity";
    const auto root = prev->p - (y * prev->q) * prev->c;
    c4.pass = gap == root * root;
  }
  out.push_back(c4);

  ConditionCheck cr{tag + "K y q - p >= 0 on [a,1]", false, "Bernstein", {}};
  cr.certificates.push_back(sign_on_interval(y * s.q * s.K - s.p, a, Rational(1), Target::NonNegative, opt));
  cr.pass = cr.certificates[0].certified();
  out.push_back(cr);
  return out;
}

inline int degree_budget(int n) { return (n - 1) / 2; }

/// Largest m whose pessimistic degree bound d_m (d_0 = 0, d_{m+1} = 2 d_m + 2) fits the budget.
inline int choose_m0(int n) {
  const int budget = degree_budget(n);
  int m = 0;
  long d = 0;
  while (2 * d + 2 <= budget) {
    d = 2 * d + 2;
    ++m;
  }
  return m;
}

struct PQBuild {
  std::vector<PQIterate> iterates;
  ConstructionParams params;
  std::vector<ConditionCheck> checks;
};

inline PQBuild pq_build(int n, const CertifyOptions& opt = {}) {
  if (n <= 100) throw PreconditionError("construction requires n > 100 (got n = " + std::to_string(n) + ")");
  PQBuild b;
  b.params.n = n;
  b.params.degree_budget = degree_budget(n);
  b.params.m0 = choose_m0(n);
  b.params.a = pow(make_rational(10, 11), 1UL << b.params.m0);
  b.params.g_factor_count = n / 10;

  b.iterates.push_back(pq_initial(b.params.a));
  for (int m = 0; m < b.params.m0; ++m) {
    PQIterate& cur = b.iterates.back();
    cur.c = sqrt_surrogate(cur.K);
    PQIterate next = pq_step(cur, cur.c);
    b.iterates.push_back(std::move(next));
  }
  for (std::size_t k = 0; k < b.iterates.size(); ++k) {
    auto checks = check_iterate(b.iterates[k], k ? &b.iterates[k - 1] : nullptr, b.params.a, opt);
    for (auto& c : checks) b.checks.push_back(std::move(c));
    if (k) {
      // K_{m+1} < sqrt(K_m) + 2^-20
      const Rational shifted = b.iterates[k].K - pow2(-20);
      ConditionCheck kc{"m=" + std::to_string(k) + ": K contraction", false, "exact comparison", {}};
      kc.pass = shifted <= 0 || shifted * shifted < b.iterates[k - 1].K;
      b.checks.push_back(kc);
    }
  }
  const PQIterate& last = b.iterates.back();
  const auto y = y_poly();
  // Lower half: the square identity of the last iterate (it touches zero
  // inside [a, 1], where subdivision cannot conclude).
  bool lower = false;
  for (const auto& c : b.checks)
    if (c.name == "m=" + std::to_string(last.m) + ": p - y q >= 0 on [0,1]") lower = c.pass;
  ConditionCheck c3{"cond3: p - y q >= 0 and 1.1 y q - p >= 0 on [a,1]", false, "square identity + Bernstein", {}};
  c3.certificates.push_back(
      sign_on_interval(y * last.q * make_rational(11, 10) - last.p, b.params.a, Rational(1), Target::NonNegative, opt));
  c3.pass = lower && c3.certificates[0].certified() && last.K <= make_rational(11, 10);
  b.checks.push_back(c3);
  if (last.K > make_rational(11, 10))
    throw CertificationFailure("final range bound K = " + to_string(last.K) + " exceeds 1.1");
  b.params.deg_p = last.p.degree();
  b.params.deg_q = last.q.degree();
  return b;
}

/// g(x) = prod_{m=1..n/10} (x + 2^-m)^2
inline UniPoly<Rational> build_g(int n) {
  if (n < 10) throw PreconditionError("build_g requires n >= 10");
  UniPoly<Rational> g = UniPoly<Rational>::constant(Rational(1));
  for (int m = 1; m <= n / 10; ++m) {
    const UniPoly<Rational> lin({pow2(-m), Rational(1)});
    g *= lin * lin;
  }
  return g;
}

/// g >= 0 on [-2, 2].
inline ConditionCheck check_g_nonnegative(const UniPoly<Rational>& g, const CertifyOptions& opt = {}) {
  ConditionCheck c{"cond5: g >= 0 on [-2,2]", false, "Bernstein", {}};
  c.certificates.push_back(sign_on_interval(g, Rational(-2), Rational(2), Target::NonNegative, opt));
  c.pass = c.certificates[0].certified();
  return c;
}

/// g(x) - 2 g(-x) > 0 on [lo, 1].
inline ConditionCheck check_g_dominance(const UniPoly<Rational>& g, const Rational& lo, const CertifyOptions& opt = {}) {
  ConditionCheck c{"cond6: g(x) - 2 g(-x) > 0 on [" + to_string(lo) + ",1]", false, "Bernstein", {}};
  c.certificates.push_back(sign_on_interval(g - g.reflect() * Rational(2), lo, Rational(1), Target::Positive, opt));
  c.pass = c.certificates[0].certified();
  return c;
}

/// f(x, y) = p(y) g(x) + y q(y) g(-x)
inline BiPoly<Rational> assemble(const UniPoly<Rational>& p, const UniPoly<Rational>& q, const UniPoly<Rational>& g,
                                 int max_degree = -1) {
  const auto G = BiPoly<Rational>::in_x(g);
  BiPoly<Rational> f = BiPoly<Rational>::in_y(p) * G + BiPoly<Rational>::y() * BiPoly<Rational>::in_y(q) * G.reflect_x();
  if (max_degree >= 0 && f.total_degree() > max_degree)
    throw PreconditionError("assembled degree " + std::to_string(f.total_degree()) + " exceeds " +
                            std::to_string(max_degree));
  return f;
}

struct ConstructOptions {
  EpsilonOptions eps;
  Rational eps_hint = make_rational(1, 64);
};

inline SharpTurnExample construct_example(int n, const ConstructOptions& opt = {}) {
  PQBuild b = pq_build(n, opt.eps.cert);
  SharpTurnExample ex;
  ex.params = b.params;
  const UniPoly<Rational> g = build_g(n);
  ex.params.deg_g = g.degree();
  const PQIterate& last = b.iterates.back();
  ex.f = assemble(last.p, last.q, g, n);
  ex.params.deg_f = ex.f.total_degree();

  ex.conditions = std::move(b.checks);
  ex.conditions.push_back(check_g_nonnegative(g, opt.eps.cert));

  EpsilonOptions eo = opt.eps;
  eo.floor = pow2(-ex.params.g_factor_count);
  ex.eps = measure_epsilon(ex.f, opt.eps_hint, eo);
  ex.params.C0_effective = -std::log(to_double(ex.eps.eps_ok)) / n;
  ex.conditions.push_back(check_g_dominance(g, ex.eps.eps_ok, opt.eps.cert));
  ex.iterates = std::move(b.iterates);
  return ex;
}

inline BiPoly<Rational> baseline_poly(int n) {
  if (n < 1) throw PreconditionError("baseline requires n >= 1");
  const auto X = BiPoly<Rational>::x(), Y = BiPoly<Rational>::y();
  const auto one = BiPoly<Rational>::constant(Rational(1));
  return (X + one).pow(2 * n) + (Y + one).pow(2 * n) - one;
}

/// 1 - 2^(-1/(2n)), the exact corner threshold of the baseline.
inline double baseline_threshold(int n) { return 1.0 - std::exp2(-1.0 / (2.0 * n)); }

inline SharpTurnExample baseline_simple(int n, const EpsilonOptions& opt = {}, const Rational& eps_hint = make_rational(1, 8)) {
  SharpTurnExample ex;
  ex.f = baseline_poly(n);
  ex.params.n = n;
  ex.params.deg_f = ex.f.total_degree();
  ex.eps = measure_epsilon(ex.f, eps_hint, opt);
  ex.params.C0_effective = -std::log(to_double(ex.eps.eps_ok)) / n;
  return ex;
}

}  // namespace sharpturn
