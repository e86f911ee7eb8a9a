#pragma once

// Sign certification on boxes by Bernstein subdivision.
//
// A box is certified when every Bernstein coefficient on every leaf of a
// complete subdivision has the required sign.  A corner coefficient equals
// the value of the polynomial at that corner, so a corner of the wrong sign
// is an exact counterexample; it is re-evaluated from the original
// polynomial before being reported.

#include "sharpturn/bernstein.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sharpturn {

enum class Target { Positive, Negative, NonNegative, NonPositive };
enum class Verdict { Positive, Negative, NonNegative, NonPositive, MixedWitness, Unknown };

inline const char* to_string(Target t) {
  switch (t) {
    case Target::Positive: return "Positive";
    case Target::Negative: return "Negative";
    case Target::NonNegative: return "NonNegative";
    case Target::NonPositive: return "NonPositive";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "Positive";
    case Verdict::Negative: return "Negative";
    case Verdict::NonNegative: return "NonNegative";
    case Verdict::NonPositive: return "NonPositive";
    case Verdict::MixedWitness: return "MixedWitness";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline Verdict verdict_for(Target t) {
  switch (t) {
    case Target::Positive: return Verdict::Positive;
    case Target::Negative: return Verdict::Negative;
    case Target::NonNegative: return Verdict::NonNegative;
    case Target::NonPositive: return Verdict::NonPositive;
  }
  return Verdict::Unknown;
}

/// True when a value of sign s violates the target.
inline bool violates(Target t, int s) {
  switch (t) {
    case Target::Positive: return s <= 0;
    case Target::Negative: return s >= 0;
    case Target::NonNegative: return s < 0;
    case Target::NonPositive: return s > 0;
  }
  return true;
}

struct Witness {
  QSqrt2 x, y, value;
};

enum class LeafState { Certified, Witness, Unknown };

/// Subdivision leaf in approximate original coordinates, for rendering.
struct Leaf {
  double x0, x1, y0, y1;
  LeafState state;
};

struct SignCertificate {
  Verdict verdict = Verdict::Unknown;
  Target target = Target::Positive;
  std::optional<Witness> witness;
  long boxes_examined = 0;
  int max_depth_reached = 0;
  std::string unknown_reason;
  std::vector<Leaf> leaves;

  bool certified() const { return verdict == verdict_for(target); }
  bool has_witness() const { return verdict == Verdict::MixedWitness; }
};

struct CertifyOptions {
  int max_depth = 60;
  long max_boxes = 1L << 20;
  bool record_leaves = false;
};

namespace detail {

template <class G>
struct Node {
  bern::Grid<bern::Cell<G>> grid;
  Rational u0, u1, v0, v1;
  int depth;
};

template <class T>
long count_violations(const bern::Grid<T>& g, Target t) {
  long k = 0;
  for (const auto& c : g.c)
    if (violates(t, bern::cell_sign(c))) ++k;
  return k;
}

}  // namespace detail

template <ExactField F, class E>
SignCertificate sign_on_box(const BiPoly<F>& f, const BoxT<E>& box, Target target, const CertifyOptions& opt = {}) {
  using G = common_field_t<F, E>;
  using Cell = bern::Cell<G>;
  if (opt.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");

  SignCertificate cert;
  cert.target = target;
  const G xl = embed<G>(box.x_lo), wx = embed<G>(box.x_hi) - xl;
  const G yl = embed<G>(box.y_lo), wy = embed<G>(box.y_hi) - yl;
  const double xld = FieldTraits<G>::approx(xl), wxd = FieldTraits<G>::approx(wx);
  const double yld = FieldTraits<G>::approx(yl), wyd = FieldTraits<G>::approx(wy);

  auto leaf = [&](const detail::Node<G>& nd, LeafState st) {
    if (!opt.record_leaves) return;
    cert.leaves.push_back({xld + wxd * to_double(nd.u0), xld + wxd * to_double(nd.u1),
                           yld + wyd * to_double(nd.v0), yld + wyd * to_double(nd.v1), st});
  };

  std::vector<detail::Node<G>> stack;
  if constexpr (std::is_same_v<G, Rational>)
    stack.push_back({bern::integer_root_grid(f, box), Rational(0), Rational(1), Rational(0), Rational(1), 0});
  else
    stack.push_back({bern::integer_grid(bernstein_coefficients(f, box)), Rational(0), Rational(1), Rational(0),
                     Rational(1), 0});

  while (!stack.empty()) {
    detail::Node<G> nd = std::move(stack.back());
    stack.pop_back();
    ++cert.boxes_examined;
    cert.max_depth_reached = std::max(cert.max_depth_reached, nd.depth);
    const auto& g = nd.grid;

    for (int ci : {0, g.dx})
      for (int cj : {0, g.dy}) {
        if (!violates(target, bern::cell_sign(g.at(ci, cj)))) continue;
        const G px = xl + wx * G(ci ? nd.u1 : nd.u0);
        const G py = yl + wy * G(cj ? nd.v1 : nd.v0);
        const G val = f(px, py);
        if (!violates(target, FieldTraits<G>::sign(val)))
          throw std::logic_error("Bernstein corner disagrees with exact evaluation");
        cert.verdict = Verdict::MixedWitness;
        cert.witness = Witness{QSqrt2(px), QSqrt2(py), QSqrt2(val)};
        leaf(nd, LeafState::Witness);
        return cert;
      }

    const long bad = detail::count_violations(g, target);
    if (bad == 0) {
      leaf(nd, LeafState::Certified);
      continue;
    }
    if (nd.depth >= opt.max_depth || cert.boxes_examined >= opt.max_boxes) {
      cert.verdict = Verdict::Unknown;
      cert.unknown_reason = nd.depth >= opt.max_depth ? "depth_exhausted" : "box_budget_exhausted";
      leaf(nd, LeafState::Unknown);
      return cert;
    }

    const Rational umid = (nd.u0 + nd.u1) / 2, vmid = (nd.v0 + nd.v1) / 2;
    auto push = [&](std::pair<bern::Grid<Cell>, bern::Grid<Cell>> halves, int axis) {
      if (axis == 0) {
        stack.push_back({std::move(halves.second), umid, nd.u1, nd.v0, nd.v1, nd.depth + 1});
        stack.push_back({std::move(halves.first), nd.u0, umid, nd.v0, nd.v1, nd.depth + 1});
      } else {
        stack.push_back({std::move(halves.second), nd.u0, nd.u1, vmid, nd.v1, nd.depth + 1});
        stack.push_back({std::move(halves.first), nd.u0, nd.u1, nd.v0, vmid, nd.depth + 1});
      }
    };

    // Split along the axis whose halves carry fewer wrong-sign coefficients;
    // ties go to the longer side.
    if (g.dx == 0 || g.dy == 0) {
      const int axis = g.dx == 0 ? 1 : 0;
      push(bern::split(g, axis), axis);
      continue;
    }
    auto sx = bern::split(g, 0);
    auto sy = bern::split(g, 1);
    const long bx = detail::count_violations(sx.first, target) + detail::count_violations(sx.second, target);
    const long by = detail::count_violations(sy.first, target) + detail::count_violations(sy.second, target);
    bool use_x = bx < by;
    if (bx == by)
      use_x = std::abs(wxd) * to_double(Rational(nd.u1 - nd.u0)) >=
              std::abs(wyd) * to_double(Rational(nd.v1 - nd.v0));
    if (use_x)
      push(std::move(sx), 0);
    else
      push(std::move(sy), 1);
  }
  cert.verdict = verdict_for(target);
  return cert;
}

/// Univariate certificate on the closed interval [lo, hi].
template <ExactField F, class E>
SignCertificate sign_on_interval(const UniPoly<F>& p, const E& lo, const E& hi, Target target,
                                 const CertifyOptions& opt = {}) {
  return sign_on_box(BiPoly<F>::in_x(p), BoxT<E>::interval(lo, hi), target, opt);
}

}  // namespace sharpturn
