#pragma once

// Certified measurement of the corner sharpness eps achieved by f:
//   f > 0 on [eps,1]x[-1,1],  f > 0 on [-1,1]x[eps,1],  f < 0 on [-1,-eps]^2.
// Each condition only gets easier as eps grows (the regions shrink), so
// per-region pass/fail results are cached as monotone thresholds.

#include "sharpturn/certify.hpp"

#include <array>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpturn {

class NoPassingEpsilon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Region {
  std::string name;
  Box box;
  Target target;
};

/// The three sign regions at corner margin eps, strips first.
inline std::array<Region, 3> corner_regions(const Rational& eps) {
  const Rational one(1), mone(-1);
  return {Region{"strip_x", Box(eps, one, mone, one), Target::Positive},
          Region{"strip_y", Box(mone, one, eps, one), Target::Positive},
          Region{"corner", Box(mone, Rational(-eps), mone, Rational(-eps)), Target::Negative}};
}

struct RegionCertificate {
  Region region;
  SignCertificate cert;
};

struct EpsilonOptions {
  int steps = 30;
  /// Exclusive lower bound on eps_ok; zero disables it.
  Rational floor{0};
  int max_halvings = 64;
  int threads = 1;
  CertifyOptions cert;
};

struct CertifiedEpsilon {
  int n = 0;
  Rational eps_ok;
  Rational eps_fail;
  int steps = 0;
  int bisection_steps = 0;
  /// Why eps_fail is a lower bracket: "witness", "unknown", "floor" or "none".
  std::string fail_kind;
  long probes = 0;
  long unknown_probes = 0;
  std::vector<RegionCertificate> regions;  // certificates at eps_ok

  bool all_certified() const {
    for (const auto& r : regions)
      if (!r.cert.certified()) return false;
    return !regions.empty();
  }
};

template <ExactField F>
std::vector<RegionCertificate> certify_regions(const BiPoly<F>& f, const Rational& eps, const CertifyOptions& opt,
                                               int threads = 1) {
  const auto regs = corner_regions(eps);
  std::vector<RegionCertificate> out(regs.size());
  if (threads > 1) {
    std::vector<std::future<SignCertificate>> fs;
    for (const auto& r : regs)
      fs.push_back(std::async(std::launch::async, [&f, &opt, r] { return sign_on_box(f, r.box, r.target, opt); }));
    for (std::size_t i = 0; i < regs.size(); ++i) out[i] = {regs[i], fs[i].get()};
  } else {
    for (std::size_t i = 0; i < regs.size(); ++i) out[i] = {regs[i], sign_on_box(f, regs[i].box, regs[i].target, opt)};
  }
  return out;
}

namespace detail {

template <ExactField F>
class EpsilonProbe {
 public:
  EpsilonProbe(const BiPoly<F>& f, const EpsilonOptions& opt) : f_(f), opt_(opt) {}

  struct Outcome {
    bool pass = false;
    bool witness = false;
  };

  /// Conjunction of the three regions, binding corner first.
  Outcome operator()(const Rational& eps) {
    ++probes;
    Outcome o{true, false};
    static constexpr std::array<int, 3> order{2, 0, 1};
    const auto regs = corner_regions(eps);
    for (int k : order) {
      auto& c = cache_[k];
      if (c.pass_min && eps >= *c.pass_min) continue;
      if (c.fail_max && eps <= *c.fail_max) {
        o.pass = false;
        o.witness = o.witness || c.fail_witness;
        return o;
      }
      const SignCertificate sc = sign_on_box(f_, regs[k].box, regs[k].target, opt_.cert);
      if (sc.certified()) {
        c.pass_min = eps;
        continue;
      }
      if (!c.fail_max || eps > *c.fail_max) {
        c.fail_max = eps;
        c.fail_witness = sc.has_witness();
      }
      if (!sc.has_witness()) ++unknown_probes;
      return {false, sc.has_witness()};
    }
    return o;
  }

  long probes = 0;
  long unknown_probes = 0;

 private:
  struct Cache {
    std::optional<Rational> pass_min, fail_max;
    bool fail_witness = false;
  };
  const BiPoly<F>& f_;
  const EpsilonOptions& opt_;
  std::array<Cache, 3> cache_;
};

}  // namespace detail

/// Brackets the smallest eps at which all three regions certify:
/// eps_fail < eps_ok, eps_ok certified, eps_ok - eps_fail <= eps_ok * 2^-steps
/// unless the search bottoms out (fail_kind "none").
template <ExactField F>
CertifiedEpsilon measure_epsilon(const BiPoly<F>& f, const Rational& eps_hint, const EpsilonOptions& opt = {}) {
  if (f.is_zero()) throw std::invalid_argument("measure_epsilon: zero polynomial");
  if (eps_hint <= 0) throw std::invalid_argument("measure_epsilon: eps_hint must be positive");
  if (opt.steps < 1) throw std::invalid_argument("measure_epsilon: steps must be >= 1");
  detail::EpsilonProbe<F> probe(f, opt);
  const Rational half = make_rational(1, 2);
  const Rational tol = pow2(-opt.steps);

  CertifiedEpsilon res;
  res.n = f.total_degree();
  res.steps = opt.steps;

  Rational hi = eps_hint > half ? half : eps_hint;
  if (opt.floor > 0 && hi <= opt.floor) hi = opt.floor * (1 + tol);
  Rational lo(0);
  bool lo_witness = false;
  std::string kind;

  auto r = probe(hi);
  if (!r.pass) {
    lo = hi;
    lo_witness = r.witness;
    for (;;) {
      if (hi >= half) throw NoPassingEpsilon("no passing eps up to 1/2: not a sharp-turn polynomial");
      hi = hi * 2 > half ? half : hi * 2;
      r = probe(hi);
      if (r.pass) break;
      lo = hi;
      lo_witness = r.witness;
    }
    kind = lo_witness ? "witness" : "unknown";
  } else {
    bool found = false;
    for (int k = 0; k < opt.max_halvings; ++k) {
      Rational cand = hi / 2;
      if (opt.floor > 0 && cand <= opt.floor) break;
      r = probe(cand);
      if (!r.pass) {
        lo = cand;
        kind = r.witness ? "witness" : "unknown";
        found = true;
        break;
      }
      hi = cand;
    }
    if (!found) {
      if (opt.floor > 0) {
        const Rational cand = opt.floor * (1 + tol);
        lo = opt.floor;
        kind = "floor";
        if (cand < hi) {
          r = probe(cand);
          if (r.pass) {
            hi = cand;
          } else {
            lo = cand;
            kind = r.witness ? "witness" : "unknown";
          }
        }
      } else {
        lo = 0;
        kind = "none";
      }
    }
  }

  while (kind != "none" && hi - lo > hi * tol) {
    Rational mid = (lo + hi) / 2;
    r = probe(mid);
    ++res.bisection_steps;
    if (r.pass) {
      hi = mid;
    } else {
      lo = mid;
      kind = r.witness ? "witness" : "unknown";
    }
  }

  res.eps_ok = hi;
  res.eps_fail = lo;
  res.fail_kind = kind;
  res.probes = probe.probes;
  res.unknown_probes = probe.unknown_probes;
  CertifyOptions final_opt = opt.cert;
  final_opt.record_leaves = true;
  res.regions = certify_regions(f, hi, final_opt, opt.threads);
  if (!res.all_certified()) throw std::logic_error("measure_epsilon: final re-certification disagrees with the search");
  return res;
}

}  // namespace sharpturn
