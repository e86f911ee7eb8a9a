#pragma once

// Executable form of the lower-bound argument: the incenter combination
// Phi = sum_j b_j phi_j, the sharp change at sqrt2/2, robustness under
// perturbation by R/2 along each slice, annulus shells and root parities.

#include "sharpturn/certify.hpp"
#include "sharpturn/epsilon.hpp"
#include "sharpturn/errors.hpp"
#include "sharpturn/polar.hpp"
#include "sharpturn/simplex.hpp"
#include "sharpturn/sturm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpturn {

// ---------------------------------------------------------------------------
// Helpers on Q(sqrt2)-coefficient polynomials.

/// True when every coefficient is a rational multiple of sqrt2 and u is nonzero.
inline bool is_sqrt2_multiple(const UniPoly<QSqrt2>& u) {
  if (u.is_zero()) return false;
  for (const auto& c : u.coefficients())
    if (c.rat_part() != 0) return false;
  return true;
}
inline bool is_sqrt2_multiple(const UniPoly<Rational>&) { return false; }

inline std::optional<UniPoly<Rational>> rational_form(const UniPoly<QSqrt2>& u) {
  std::vector<Rational> c;
  for (const auto& v : u.coefficients()) {
    if (!v.is_rational()) return std::nullopt;
    c.push_back(v.rat_part());
  }
  return UniPoly<Rational>(std::move(c));
}

template <ExactField F>
BigFloat eval_bigfloat(const UniPoly<F>& u, const BigFloat& x) {
  const mpfr_prec_t prec = x.precision();
  BigFloat acc(0.0, prec);
  const auto& c = u.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigFloat(*it, prec);
  return acc;
}

// ---------------------------------------------------------------------------
// Incenter combination.

struct Combination {
  UniPoly<QSqrt2> Phi;
  std::vector<QSqrt2> coeffs;  // rounded b_j
  std::vector<bool> sqrt2_scaled;
  unsigned bits = 0;           // coefficients lie on the 2^-bits grid (times sqrt2 where scaled)
  BigFloat rounding_radius;    // upper bound on max_j |coeffs_j - b_j|

  std::optional<UniPoly<Rational>> rational() const { return rational_form(Phi); }
};

/// Phi = sum_j b~_j phi_j with b~_j on a 2^-bits grid.  When phi_j is a
/// sqrt2 multiple, b~_j = sqrt2 * (dyadic) so that b~_j phi_j stays rational.
template <ExactField F>
Combination incenter_combination(const PolarPoly<F>& phi, const std::vector<Interval>& b, unsigned bits) {
  if (phi.size() != b.size())
    throw std::invalid_argument("incenter_combination: " + std::to_string(phi.size()) + " slices but " +
                                std::to_string(b.size()) + " coordinates");
  if (b.empty()) throw std::invalid_argument("incenter_combination: no coordinates");
  const mpfr_prec_t prec = b.front().precision();
  const Interval s2 = Interval::sqrt2(prec);
  Combination c;
  c.bits = bits;
  c.rounding_radius = BigFloat(0.0, prec);
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const UniPoly<QSqrt2> slice = phi.slice(j).template map<QSqrt2>([](const F& v) { return embed<QSqrt2>(v); });
    const bool scaled = is_sqrt2_multiple(slice);
    QSqrt2 bj;
    Interval err(prec);
    if (scaled) {
      const Rational q = floor_dyadic((b[j] / s2).mid().to_rational(), bits);
      bj = QSqrt2(Rational(0), q);
      err = (s2 * Interval(q, prec) - b[j]).abs();
    } else {
      const Rational q = floor_dyadic(b[j].mid().to_rational(), bits);
      bj = QSqrt2(q);
      err = (Interval(q, prec) - b[j]).abs();
    }
    if (c.rounding_radius < err.hi()) c.rounding_radius = err.hi();
    c.Phi += slice * bj;
    c.coeffs.push_back(bj);
    c.sqrt2_scaled.push_back(scaled);
  }
  if (c.Phi.is_zero()) throw std::domain_error("incenter combination vanishes identically");
  return c;
}

// ---------------------------------------------------------------------------
// Sharp change at sqrt2/2.

struct SharpChange {
  bool pass = false;
  Rational eps;
  std::optional<SignCertificate> negative_side;  // on [sqrt2/2 + eps, 1]; empty when the interval is
  std::optional<SignCertificate> positive_side;  // on [-1, sqrt2/2 - eps]
};

/// psi < 0 on [sqrt2/2 + eps, 1] and psi > 0 on [-1, sqrt2/2 - eps].
template <ExactField F>
SharpChange sharp_change_check(const UniPoly<F>& psi, const Rational& eps, const CertifyOptions& opt = {}) {
  if (eps <= 0) throw std::invalid_argument("sharp_change_check needs eps > 0");
  SharpChange r;
  r.eps = eps;
  const QSqrt2 h = QSqrt2::half_sqrt2();
  const QSqrt2 a = h + QSqrt2(eps), b = h - QSqrt2(eps);
  bool neg = true, pos = true;
  if (a <= QSqrt2(1)) {
    r.negative_side = sign_on_interval(psi, a, QSqrt2(1), Target::Negative, opt);
    neg = r.negative_side->certified();
  }
  if (b >= QSqrt2(-1)) {
    r.positive_side = sign_on_interval(psi, QSqrt2(-1), b, Target::Positive, opt);
    pos = r.positive_side->certified();
  }
  r.pass = neg && pos;
  return r;
}

/// Runs the check on the rational form when there is one.
inline SharpChange sharp_change_any(const UniPoly<QSqrt2>& psi, const Rational& eps, const CertifyOptions& opt = {}) {
  if (auto q = rational_form(psi)) return sharp_change_check(*q, eps, opt);
  return sharp_change_check(psi, eps, opt);
}

// ---------------------------------------------------------------------------
// Perturbation along each slice.

struct PerturbationRow {
  int j = 0;
  bool zero_slice = false;
  QSqrt2 lambda;  // |lambda| <= R/2; the row tests +lambda and -lambda
  bool plus_pass = false;
  bool minus_pass = false;
};

struct PerturbationReport {
  std::vector<PerturbationRow> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.plus_pass || !r.minus_pass) return false;
    return true;
  }
};

/// For each j, certifies Phi +- lambda_j phi_j with |lambda_j| <= R/2 (lambda_j a
/// sqrt2 multiple when phi_j is).  Zero slices reuse the verdict for Phi itself.
template <ExactField F>
PerturbationReport perturbation_check(const UniPoly<QSqrt2>& Phi, const PolarPoly<F>& phi, const Interval& R,
                                      const Rational& eps, const CertifyOptions& opt = {}) {
  PerturbationReport rep;
  const mpfr_prec_t prec = R.precision();
  const Rational half_r_lo = R.lo().to_rational() / 2;
  if (half_r_lo <= 0) throw std::invalid_argument("perturbation_check needs R > 0");
  const unsigned bits = static_cast<unsigned>(std::max(0.0, -approx_log2_abs(half_r_lo))) + 32;
  const Rational plain = floor_dyadic(half_r_lo, bits);
  // sqrt2 * q <= R/2 with q = floor((R/2) / sqrt2_hi)
  const Rational s2_hi = Interval::sqrt2(prec).hi().to_rational();
  const Rational scaled = floor_dyadic(half_r_lo / s2_hi, bits);
  std::optional<bool> base;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    PerturbationRow row;
    row.j = static_cast<int>(j);
    const UniPoly<QSqrt2> slice = phi.slice(j).template map<QSqrt2>([](const F& v) { return embed<QSqrt2>(v); });
    row.zero_slice = slice.is_zero();
    row.lambda = is_sqrt2_multiple(slice) ? QSqrt2(Rational(0), scaled) : QSqrt2(plain);
    if (row.zero_slice) {
      if (!base) base = sharp_change_any(Phi, eps, opt).pass;
      row.plus_pass = row.minus_pass = *base;
    } else {
      row.plus_pass = sharp_change_any(Phi + slice * row.lambda, eps, opt).pass;
      row.minus_pass = sharp_change_any(Phi - slice * row.lambda, eps, opt).pass;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Annulus shells and root parities.

enum class KMode { Strict, Relaxed };

inline std::string to_string(KMode m) { return m == KMode::Strict ? "strict" : "relaxed"; }

/// max(101, (1/100 / eps)^(1/(n+1)) rounded up).
inline Rational strict_default_K(const Rational& eps, int n) {
  const double k = std::exp((std::log(0.01) - std::log(to_double(eps))) / (n + 1));
  const Rational up = ceil_dyadic(Rational(std::isfinite(k) ? k : 0.0), 20);
  return up > 101 ? up : Rational(101);
}

/// Largest 2^-12 grid value K with K^(n+1) eps <= 29/100, i.e. every shell
/// stays inside [-1, sqrt2/2 - eps] and [sqrt2/2 + eps, 1].
inline Rational relaxed_K(const Rational& eps, int n) {
  const Rational cap = make_rational(29, 100);
  const double k = std::exp((std::log(0.29) - std::log(to_double(eps))) / (n + 1));
  Rational K = floor_dyadic(Rational(k), 12);
  const Rational step = pow2(-12);
  while (K > 1 && pow(K, n + 1) * eps > cap) K -= step;
  if (K <= 1) throw PreconditionError("no shell ratio K > 1 keeps the shells inside the sign intervals");
  return K;
}

struct ShellScan {
  int h = 0;
  /// Real roots in the closed intervals, in the order
  /// [c+ + r_h, c+ + r_{h+1}], [c+ - r_{h+1}, c+ - r_h], [c- + r_h, c- + r_{h+1}], [c- - r_{h+1}, c- - r_h]
  /// with c+- = +-sqrt2/2 and r_h = K^h eps.  Distinct roots; endpoint roots included.
  std::array<int, 4> counts{};
  bool root_free = false;
};

struct AnnuliAnalysis {
  Rational K;
  Rational eps;
  int n = 0;
  KMode mode = KMode::Strict;
  std::vector<ShellScan> shells;
  bool found = false;
  int t = -1;
  int gamma_plus_real = 0;   // distinct real roots in [sqrt2/2 - K^t eps, sqrt2/2 + K^t eps]
  int gamma_minus_real = 0;  // same around -sqrt2/2
  std::string gamma_plus_parity, gamma_minus_parity;  // with multiplicity, from endpoint signs
  bool sharp_change = false;
  bool assertion_applies = false;  // sharp change holds and a shell was found
  bool assertion_ok = true;        // plus odd and minus even whenever it applies
};

struct ParityOptions {
  KMode mode = KMode::Strict;
  int n = -1;  // shell count minus one; defaults to deg Phi
  bool scan_all = true;
  std::optional<bool> sharp_change;  // computed with `cert` when absent
  CertifyOptions cert;
};

inline AnnuliAnalysis parity_analysis(const UniPoly<Rational>& Phi, const Rational& eps, const Rational& K,
                                      const ParityOptions& opt = {}) {
  if (Phi.is_zero()) throw std::invalid_argument("parity_analysis: Phi is zero");
  if (eps <= 0) throw std::invalid_argument("parity_analysis needs eps > 0");
  AnnuliAnalysis a;
  a.K = K;
  a.eps = eps;
  a.mode = opt.mode;
  a.n = opt.n >= 0 ? opt.n : std::max(Phi.degree(), 1);
  const Rational outer = pow(K, a.n + 1) * eps;
  if (opt.mode == KMode::Strict) {
    if (!(K > 100) || !(outer < make_rational(1, 10)))
      throw PreconditionError("parity_analysis needs K > 100 and K^(n+1) eps < 1/10 (K = " + to_string(K) +
                              ", n = " + std::to_string(a.n) + ")");
  } else if (!(K > 1) || outer > make_rational(29, 100)) {
    throw PreconditionError("relaxed parity_analysis needs K > 1 and K^(n+1) eps <= 29/100");
  }

  const SturmSequence sturm(Phi);
  const auto prim = primitive_part(Phi);
  const QSqrt2 h = QSqrt2::half_sqrt2();
  // radii r_0 .. r_{n+1}; points c + sigma r_k for c in {h, -h}, sigma in {+1, -1}
  std::vector<Rational> radius{eps};
  for (int k = 1; k <= a.n + 1; ++k) radius.push_back(radius.back() * K);
  struct PointInfo {
    int sign = 0;
    int variations = 0;
  };
  auto probe = [&](const QSqrt2& x) { return PointInfo{sign_at(prim, x), sturm.variations(x)}; };
  // info[c][sigma][k]
  std::vector<std::optional<PointInfo>> cache(4 * radius.size());
  auto info = [&](int c, int sigma, int k) -> const PointInfo& {
    auto& slot = cache[(c * 2 + sigma) * radius.size() + k];
    if (!slot) {
      const QSqrt2 centre = c == 0 ? h : -h;
      const QSqrt2 off(sigma == 0 ? radius[k] : Rational(-radius[k]));
      slot = probe(centre + off);
    }
    return *slot;
  };
  // closed-interval count between the points at radii k and k+1 on one side
  auto closed_count = [&](int c, int sigma, int k) {
    const PointInfo& in = info(c, sigma, k);
    const PointInfo& out = info(c, sigma, k + 1);
    // sigma = 0: interval [c + r_k, c + r_{k+1}], variations decrease left to right
    const int open = sigma == 0 ? in.variations - out.variations : out.variations - in.variations;
    return open + (in.sign == 0) + (out.sign == 0);
  };

  for (int k = 0; k <= a.n; ++k) {
    ShellScan s;
    s.h = k;
    int idx = 0;
    for (int c = 0; c < 2; ++c)
      for (int sigma = 0; sigma < 2; ++sigma) s.counts[idx++] = closed_count(c, sigma, k);
    s.root_free = s.counts[0] == 0 && s.counts[1] == 0 && s.counts[2] == 0 && s.counts[3] == 0;
    a.shells.push_back(s);
    if (s.root_free && !a.found) {
      a.found = true;
      a.t = k;
      if (!opt.scan_all) break;
    }
  }

  if (a.found) {
    auto parity_at = [&](int c) {
      const PointInfo& right = info(c, 0, a.t);
      const PointInfo& left = info(c, 1, a.t);
      return std::pair<int, std::string>{left.variations - right.variations,
                                         left.sign * right.sign < 0 ? "odd" : "even"};
    };
    std::tie(a.gamma_plus_real, a.gamma_plus_parity) = parity_at(0);
    std::tie(a.gamma_minus_real, a.gamma_minus_parity) = parity_at(1);
  }
  a.sharp_change = opt.sharp_change ? *opt.sharp_change : sharp_change_check(Phi, eps, opt.cert).pass;
  a.assertion_applies = a.sharp_change && a.found;
  a.assertion_ok = !a.assertion_applies || (a.gamma_plus_parity == "odd" && a.gamma_minus_parity == "even");
  return a;
}

// ---------------------------------------------------------------------------
// Ratio diagnostics and numeric roots.

struct ComplexBig {
  BigFloat re, im;
};

inline ComplexBig cadd(const ComplexBig& a, const ComplexBig& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexBig csub(const ComplexBig& a, const ComplexBig& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexBig cmul(const ComplexBig& a, const ComplexBig& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexBig cdiv(const ComplexBig& a, const ComplexBig& b) {
  const BigFloat d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline BigFloat cabs(const ComplexBig& a) { return (a.re * a.re + a.im * a.im).sqrt(); }

struct NumericRoots {
  std::vector<std::complex<double>> roots;
  bool converged = false;
  int iterations = 0;
  double max_relative_residual = 0;  // |p(z)| / sum |c_i| |z|^i
};

/// Aberth-Ehrlich iteration at `prec` bits.  Uncertified.
template <ExactField F>
NumericRoots numeric_roots(const UniPoly<F>& p, mpfr_prec_t prec, int max_iter = 2000) {
  NumericRoots out;
  const int d = p.degree();
  if (d < 1) {
    out.converged = true;
    return out;
  }
  std::vector<BigFloat> c;
  for (const auto& v : p.coefficients()) c.emplace_back(v, prec);
  std::vector<BigFloat> dc;
  for (int i = 1; i <= d; ++i) dc.push_back(c[i] * BigFloat(static_cast<double>(i), prec));
  auto horner = [&](const std::vector<BigFloat>& cc, const ComplexBig& z) {
    ComplexBig acc{BigFloat(0.0, prec), BigFloat(0.0, prec)};
    for (auto it = cc.rbegin(); it != cc.rend(); ++it) {
      acc = cmul(acc, z);
      acc.re = acc.re + *it;
    }
    return acc;
  };
  double radius = 0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::fabs((c[i] / c[d]).to_double()));
  radius = std::isfinite(radius) ? std::min(1 + radius, 1e6) : 1.0;
  radius = std::max(radius, 0.5);
  std::vector<ComplexBig> z;
  for (int k = 0; k < d; ++k) {
    const double ang = 2 * M_PI * k / d + 0.4;
    z.push_back({BigFloat(radius * std::cos(ang), prec), BigFloat(radius * std::sin(ang), prec)});
  }
  const BigFloat tol(std::ldexp(1.0, -static_cast<int>(prec / 2 > 1000 ? 1000 : prec / 2)), prec);
  const BigFloat one(1.0, prec);
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    BigFloat worst(0.0, prec);
    for (int k = 0; k < d; ++k) {
      const ComplexBig pv = horner(c, z[k]);
      if (pv.re.is_zero() && pv.im.is_zero()) continue;
      const ComplexBig w = cdiv(pv, horner(dc, z[k]));
      ComplexBig s{BigFloat(0.0, prec), BigFloat(0.0, prec)};
      for (int j = 0; j < d; ++j)
        if (j != k) s = cadd(s, cdiv({one, BigFloat(0.0, prec)}, csub(z[k], z[j])));
      const ComplexBig corr = cdiv(w, csub({one, BigFloat(0.0, prec)}, cmul(w, s)));
      z[k] = csub(z[k], corr);
      const BigFloat zk = cabs(z[k]);
      const BigFloat scale = zk < one ? one : zk;
      const BigFloat rel = cabs(corr) / scale;
      if (worst < rel) worst = rel;
    }
    if (worst < tol) {
      out.converged = true;
      break;
    }
  }
  for (const auto& r : z) {
    const ComplexBig pv = horner(c, r);
    BigFloat mag(0.0, prec), zr = cabs(r), pw(1.0, prec);
    for (int i = 0; i <= d; ++i) {
      mag = mag + c[i].abs() * pw;
      pw = pw * zr;
    }
    out.max_relative_residual = std::max(out.max_relative_residual, (cabs(pv) / mag).to_double());
    out.roots.emplace_back(r.re.to_double(), r.im.to_double());
  }
  return out;
}

struct RatioReport {
  /// Phi at sqrt2/2 + K^(t+1) eps / 2, sqrt2/2 + 2 K^t eps and at their negatives.
  std::array<BigFloat, 4> values;
  std::array<std::string, 4> labels{"+sqrt2/2 + K^(t+1) eps/2", "+sqrt2/2 + 2 K^t eps", "-sqrt2/2 - K^(t+1) eps/2",
                                    "-sqrt2/2 - 2 K^t eps"};
  BigFloat ratio_plus, ratio_minus, cross_ratio;
  double log_K_ratio_plus = 0, log_K_ratio_minus = 0, log_K_cross = 0;
  int gamma_plus_real = 0, gamma_minus_real = 0;
  // numeric (uncertified) root counts: inner disk and shell t around each centre
  int numeric_inner_plus = 0, numeric_inner_minus = 0;
  int numeric_shell_plus = 0, numeric_shell_minus = 0;
  NumericRoots roots;
};

template <ExactField F>
RatioReport ratio_diagnostics(const UniPoly<F>& Phi, const AnnuliAnalysis& a, mpfr_prec_t prec = 256) {
  if (!a.found) throw std::invalid_argument("ratio_diagnostics needs a selected shell");
  RatioReport r;
  const QSqrt2 h = QSqrt2::half_sqrt2();
  const Rational rt = pow(a.K, a.t) * a.eps;
  const QSqrt2 s1 = h + QSqrt2(Rational(rt * a.K / 2)), s2 = h + QSqrt2(Rational(2 * rt));
  const std::array<QSqrt2, 4> pts{s1, s2, -s1, -s2};
  for (int i = 0; i < 4; ++i) r.values[i] = eval_bigfloat(Phi, BigFloat(pts[i], prec));
  r.ratio_plus = (r.values[0] / r.values[1]).abs();
  r.ratio_minus = (r.values[2] / r.values[3]).abs();
  r.cross_ratio = r.ratio_plus / r.ratio_minus;
  const double lk = std::log(to_double(a.K));
  r.log_K_ratio_plus = r.ratio_plus.log().to_double() / lk;
  r.log_K_ratio_minus = r.ratio_minus.log().to_double() / lk;
  r.log_K_cross = r.cross_ratio.log().to_double() / lk;
  r.gamma_plus_real = a.gamma_plus_real;
  r.gamma_minus_real = a.gamma_minus_real;

  r.roots = numeric_roots(Phi, prec);
  const double inner = to_double(rt), shell = to_double(Rational(rt * a.K)), hd = std::sqrt(0.5);
  for (const auto& z : r.roots.roots) {
    const double dp = std::abs(z - std::complex<double>(hd, 0)), dm = std::abs(z + std::complex<double>(hd, 0));
    r.numeric_inner_plus += dp <= inner;
    r.numeric_inner_minus += dm <= inner;
    r.numeric_shell_plus += dp > inner && dp < shell;
    r.numeric_shell_minus += dm > inner && dm < shell;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rotated corner regions inside the annulus sectors.

struct SectorMargin {
  Rational eps;         // corner margin of the sign regions
  Rational eps_sector;  // (99/70)(eps + 2 eps^2)
  bool positive_side = false;
  bool negative_side = false;
  bool certified() const { return positive_side && negative_side; }
};

/// With sin(beta) = 2 eps, the rotated strips cover every point with
/// 1/2 <= r <= 1 and s <= cos(pi/4 + beta), and the rotated corner covers
/// s >= cos(pi/4 - beta).  Both comparisons with sqrt2/2 -+ eps3 are decided
/// exactly after squaring.
inline SectorMargin sector_margin(const Rational& eps) {
  if (eps <= 0 || eps > make_rational(1, 2)) throw std::invalid_argument("sector_margin needs 0 < eps <= 1/2");
  SectorMargin r;
  r.eps = eps;
  r.eps_sector = make_rational(99, 70) * (eps + 2 * eps * eps);
  const QSqrt2 e3s2 = QSqrt2(Rational(0), r.eps_sector);  // sqrt2 * eps3
  const QSqrt2 root_sq(1 - 4 * eps * eps);               // (sqrt(1 - 4 eps^2))^2
  // cos(pi/4 + beta) >= sqrt2/2 - eps3  <=>  sqrt(1 - 4eps^2) >= 1 + 2eps - sqrt2 eps3
  const QSqrt2 u = QSqrt2(1 + 2 * eps) - e3s2;
  r.positive_side = u.sign() <= 0 || root_sq >= u * u;
  // cos(pi/4 - beta) <= sqrt2/2 + eps3  <=>  sqrt(1 - 4eps^2) <= 1 - 2eps + sqrt2 eps3
  const QSqrt2 v = QSqrt2(1 - 2 * eps) + e3s2;
  r.negative_side = v.sign() >= 0 && root_sq <= v * v;
  return r;
}

// ---------------------------------------------------------------------------
// Full trace.

class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct StageRecord {
  std::string stage;
  bool pass = false;
  std::string detail;
};

struct PipelineOptions {
  mpfr_prec_t precision = 256;
  bool certify_hypotheses = true;  // when false, stage failures are recorded instead of thrown
  CertifyOptions cert;
  int threads = 1;
};

struct PipelineTrace {
  int n = 0;
  mpfr_prec_t precision = 0;
  Rational eps_hint;
  SectorMargin sector;
  std::vector<RegionCertificate> hypotheses;
  BiPoly<QSqrt2> rotated, symmetrized;
  PolarPoly<QSqrt2> phi;
  IncenterResult simplex;
  Combination combination;
  std::optional<UniPoly<Rational>> Phi;
  SharpChange sharp;
  PerturbationReport perturbation;
  std::optional<AnnuliAnalysis> annuli;
  std::optional<RatioReport> ratios;
  std::vector<StageRecord> stages;

  bool ok() const {
    for (const auto& s : stages)
      if (!s.pass) return false;
    return true;
  }
};

inline PipelineTrace pipeline(const BiPoly<Rational>& f, int n, const Rational& eps_hint,
                              const PipelineOptions& opt = {}) {
  PipelineTrace tr;
  tr.n = n;
  tr.eps_hint = eps_hint;
  tr.precision = std::max<mpfr_prec_t>(opt.precision, 128 + 5 * static_cast<mpfr_prec_t>(n));
  const bool strict = opt.certify_hypotheses;
  auto stage = [&](const std::string& name, bool pass, const std::string& detail) {
    tr.stages.push_back({name, pass, detail});
    if (!pass && strict) throw PipelineError(name, detail);
  };
  if (n < 1) throw PipelineError("input", "n must be positive");
  if (f.total_degree() > n)
    throw PipelineError("input", "degree " + std::to_string(f.total_degree()) + " exceeds n = " + std::to_string(n));
  if (eps_hint <= 0 || eps_hint > make_rational(1, 2)) throw PipelineError("input", "eps_hint must lie in (0, 1/2]");

  if (opt.certify_hypotheses) {
    tr.hypotheses = certify_regions(f, eps_hint, opt.cert, opt.threads);
    std::string bad;
    for (const auto& r : tr.hypotheses)
      if (!r.cert.certified()) bad += (bad.empty() ? "" : ", ") + r.region.name + " " + to_string(r.cert.verdict);
    stage("hypotheses", bad.empty(), bad.empty() ? "all three regions certified" : "not certified: " + bad);
  }

  tr.rotated = rotate_3pi4(f);
  stage("rotate", tr.rotated.total_degree() == f.total_degree(), "degree " + std::to_string(tr.rotated.total_degree()));
  tr.symmetrized = tr.rotated.symmetrize_even_y();
  stage("symmetrize", tr.symmetrized.is_even_in_y(), std::to_string(tr.symmetrized.term_count()) + " terms");
  tr.phi = polar_decompose(tr.symmetrized, n);
  stage("polar", true, std::to_string(tr.phi.size()) + " slices");

  tr.sector = sector_margin(eps_hint);
  stage("sector-margin", tr.sector.certified(), "eps_sector = " + to_string(tr.sector.eps_sector));

  tr.simplex = incenter(n, tr.precision);
  stage("incenter", tr.simplex.distances_agree && tr.simplex.b_bounded && tr.simplex.volume_identity,
        "R = " + tr.simplex.R.mid().str(12));

  const unsigned bits = static_cast<unsigned>(-approx_log2_abs(tr.simplex.R.lo().to_rational())) + 64;
  tr.combination = incenter_combination(tr.phi, tr.simplex.b, bits);
  tr.Phi = tr.combination.rational();
  const bool radius_ok = BigFloat(tr.combination.rounding_radius) < tr.simplex.R.lo() * BigFloat(0.5, tr.precision);
  stage("combination", tr.Phi.has_value() && radius_ok,
        std::string(tr.Phi ? "rational Phi" : "Phi has irrational coefficients") + ", degree " +
            std::to_string(tr.combination.Phi.degree()));
  if (!tr.Phi) throw PipelineError("combination", "Phi must be rational for the Sturm stages");

  const Rational& e3 = tr.sector.eps_sector;
  tr.sharp = sharp_change_check(*tr.Phi, e3, opt.cert);
  stage("sharp-change", tr.sharp.pass, tr.sharp.pass ? "certified" : "not certified");

  tr.perturbation = perturbation_check(tr.combination.Phi, tr.phi, tr.simplex.R, e3, opt.cert);
  stage("perturbation", tr.perturbation.all_pass() || !tr.sharp.pass,
        tr.perturbation.all_pass() ? "all rows pass" : "some rows fail");

  ParityOptions po;
  po.n = n;
  po.sharp_change = tr.sharp.pass;
  po.cert = opt.cert;
  Rational K = strict_default_K(e3, n);
  po.mode = KMode::Strict;
  if (!(pow(K, n + 1) * e3 < make_rational(1, 10))) {
    po.mode = KMode::Relaxed;
    K = relaxed_K(e3, n);
  }
  tr.annuli = parity_analysis(*tr.Phi, e3, K, po);
  stage("parity", tr.annuli->assertion_ok,
        tr.annuli->found ? "t = " + std::to_string(tr.annuli->t) + ", gamma+ " + tr.annuli->gamma_plus_parity +
                               ", gamma- " + tr.annuli->gamma_minus_parity
                         : "no real-root-free shell");
  if (tr.annuli->found) {
    tr.ratios = ratio_diagnostics(*tr.Phi, *tr.annuli, opt.precision);
    tr.stages.push_back({"ratios", true, "cross ratio " + tr.ratios->cross_ratio.str(8)});
  }
  return tr;
}

}  // namespace sharpturn
