#pragma once

// JSON, CSV and SVG renderings of results.  Rationals are written as
// "num/den" strings; high-precision values as decimal strings.

#include "sharpturn/construction.hpp"
#include "sharpturn/fit.hpp"
#include "sharpturn/lowerbound.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace sharpturn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline std::string rational_str(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

inline Json to_json(const QSqrt2& q) { return Json{{"rat", rational_str(q.rat_part())}, {"sqrt2", rational_str(q.sqrt2_part())}}; }

inline Json to_json(const Interval& v, int digits = 30) {
  return Json{{"mid", v.mid().str(digits)}, {"radius", v.radius().str(6)}};
}

inline Json to_json(const SignCertificate& c) {
  Json j{{"verdict", to_string(c.verdict)},
         {"target", to_string(c.target)},
         {"boxes_examined", c.boxes_examined},
         {"max_depth_reached", c.max_depth_reached}};
  if (c.witness) j["witness"] = Json{{"x", to_json(c.witness->x)}, {"y", to_json(c.witness->y)}, {"value", to_json(c.witness->value)}};
  if (!c.unknown_reason.empty()) j["unknown_reason"] = c.unknown_reason;
  if (!c.leaves.empty()) j["leaf_count"] = c.leaves.size();
  return j;
}

inline Json to_json(const RegionCertificate& r) {
  Json j = to_json(r.cert);
  j["region"] = r.region.name;
  j["box"] = {rational_str(r.region.box.x_lo), rational_str(r.region.box.x_hi), rational_str(r.region.box.y_lo),
              rational_str(r.region.box.y_hi)};
  return j;
}

inline Json to_json(const CertifiedEpsilon& e) {
  Json regions = Json::array();
  for (const auto& r : e.regions) regions.push_back(to_json(r));
  return Json{{"schema", std::string("certified_epsilon/") + kSchemaVersion},
              {"n", e.n},
              {"eps_ok", rational_str(e.eps_ok)},
              {"eps_fail", rational_str(e.eps_fail)},
              {"eps_ok_approx", to_double(e.eps_ok)},
              {"steps", e.steps},
              {"bisection_steps", e.bisection_steps},
              {"fail_kind", e.fail_kind},
              {"probes", e.probes},
              {"unknown_probes", e.unknown_probes},
              {"certificates", regions}};
}

inline Json to_json(const ConditionCheck& c) {
  Json certs = Json::array();
  for (const auto& s : c.certificates) certs.push_back(to_json(s));
  return Json{{"name", c.name}, {"pass", c.pass}, {"method", c.method}, {"certificates", certs}};
}

inline Json to_json(const SharpTurnExample& ex, const std::string& poly_file = "") {
  Json conds = Json::array();
  for (const auto& c : ex.conditions) conds.push_back(to_json(c));
  Json its = Json::array();
  for (const auto& s : ex.iterates)
    its.push_back({{"m", s.m}, {"K", rational_str(s.K)}, {"K_approx", to_double(s.K)}, {"c", rational_str(s.c)},
                   {"deg_p", s.p.degree()}, {"deg_q", s.q.degree()}});
  return Json{{"schema", std::string("sharp_turn_example/") + kSchemaVersion},
              {"n", ex.params.n},
              {"m0", ex.params.m0},
              {"a", rational_str(ex.params.a)},
              {"deg_f", ex.params.deg_f},
              {"deg_p", ex.params.deg_p},
              {"deg_q", ex.params.deg_q},
              {"deg_g", ex.params.deg_g},
              {"g_factor_count", ex.params.g_factor_count},
              {"eps_ok", rational_str(ex.eps.eps_ok)},
              {"eps_fail", rational_str(ex.eps.eps_fail)},
              {"eps_ok_approx", to_double(ex.eps.eps_ok)},
              {"C0_effective", ex.params.C0_effective},
              {"all_conditions_pass", ex.all_conditions_pass()},
              {"poly_file", poly_file},
              {"iterates", its},
              {"conditions", conds},
              {"epsilon", to_json(ex.eps)}};
}

inline Json to_json(const AnnuliAnalysis& a) {
  Json shells = Json::array();
  for (const auto& s : a.shells) shells.push_back({{"h", s.h}, {"real_root_counts", s.counts}, {"root_free", s.root_free}});
  return Json{{"K", rational_str(a.K)},
              {"K_approx", to_double(a.K)},
              {"mode", to_string(a.mode)},
              {"eps", rational_str(a.eps)},
              {"n", a.n},
              {"found", a.found},
              {"t", a.t},
              {"gamma_plus_real_roots", a.gamma_plus_real},
              {"gamma_minus_real_roots", a.gamma_minus_real},
              {"gamma_plus_parity", a.gamma_plus_parity},
              {"gamma_minus_parity", a.gamma_minus_parity},
              {"sharp_change", a.sharp_change},
              {"assertion_applies", a.assertion_applies},
              {"assertion_ok", a.assertion_ok},
              {"shells", shells}};
}

inline Json to_json(const RatioReport& r) {
  Json vals = Json::array();
  for (int i = 0; i < 4; ++i) vals.push_back({{"point", r.labels[i]}, {"value", r.values[i].str(20)}});
  Json roots = Json::array();
  for (const auto& z : r.roots.roots) roots.push_back({z.real(), z.imag()});
  return Json{{"values", vals},
              {"ratio_plus", r.ratio_plus.str(20)},
              {"ratio_minus", r.ratio_minus.str(20)},
              {"cross_ratio", r.cross_ratio.str(20)},
              {"log_K_ratio_plus", r.log_K_ratio_plus},
              {"log_K_ratio_minus", r.log_K_ratio_minus},
              {"log_K_cross_ratio", r.log_K_cross},
              {"numeric_roots",
               {{"converged", r.roots.converged},
                {"iterations", r.roots.iterations},
                {"max_relative_residual", r.roots.max_relative_residual},
                {"inner_plus", r.numeric_inner_plus},
                {"inner_minus", r.numeric_inner_minus},
                {"shell_plus", r.numeric_shell_plus},
                {"shell_minus", r.numeric_shell_minus},
                {"roots", roots}}}};
}

inline Json to_json(const IncenterResult& s) {
  Json b = Json::array(), areas = Json::array(), dist = Json::array();
  for (const auto& v : s.b) b.push_back(to_json(v));
  for (const auto& v : s.facet_areas) areas.push_back(to_json(v, 20));
  for (const auto& v : s.distances) dist.push_back(to_json(v, 20));
  return Json{{"n", s.n},
              {"precision_bits", s.precision},
              {"area_route", s.area_route},
              {"volume", rational_str(s.volume)},
              {"R_n", to_json(s.R)},
              {"b", b},
              {"facet_areas", areas},
              {"total_area", to_json(s.total_area)},
              {"distances", dist},
              {"distances_agree", s.distances_agree},
              {"b_bounded", s.b_bounded},
              {"volume_identity", s.volume_identity}};
}

inline Json to_json(const PipelineTrace& tr) {
  Json stages = Json::array();
  for (const auto& s : tr.stages) stages.push_back({{"stage", s.stage}, {"pass", s.pass}, {"detail", s.detail}});
  Json certs = Json::array();
  for (const auto& r : tr.hypotheses) {
    Json c = to_json(r);
    c["stage"] = "hypotheses";
    certs.push_back(c);
  }
  for (const auto* side : {&tr.sharp.negative_side, &tr.sharp.positive_side})
    if (*side) {
      Json c = to_json(**side);
      c["stage"] = "sharp-change";
      certs.push_back(c);
    }
  Json pert = Json::array();
  for (const auto& r : tr.perturbation.rows)
    pert.push_back({{"j", r.j}, {"zero_slice", r.zero_slice}, {"lambda", to_json(r.lambda)}, {"plus", r.plus_pass},
                    {"minus", r.minus_pass}});
  Json coeffs = Json::array();
  for (const auto& c : tr.combination.coeffs) coeffs.push_back(to_json(c));
  Json j{{"schema", std::string("pipeline_trace/") + kSchemaVersion},
         {"n", tr.n},
         {"precision_bits", tr.precision},
         {"eps_hint", rational_str(tr.eps_hint)},
         {"eps_lemma3", rational_str(tr.sector.eps_sector)},
         {"eps_sector_over_eps_hint", to_double(tr.sector.eps_sector / tr.eps_hint)},
         {"sector_containment", tr.sector.certified()},
         {"R_n", to_json(tr.simplex.R)},
         {"b", to_json(tr.simplex).at("b")},
         {"volume", rational_str(tr.simplex.volume)},
         {"facet_areas", to_json(tr.simplex).at("facet_areas")},
         {"simplex_checks",
          {{"distances_agree", tr.simplex.distances_agree},
           {"b_bounded", tr.simplex.b_bounded},
           {"volume_identity", tr.simplex.volume_identity},
           {"area_route", tr.simplex.area_route}}},
         {"combination",
          {{"coefficients", coeffs},
           {"rounding_bits", tr.combination.bits},
           {"rounding_radius", tr.combination.rounding_radius.str(6)},
           {"degree", tr.combination.Phi.degree()}}},
         {"sharp_change", tr.sharp.pass},
         {"perturbation", {{"all_pass", tr.perturbation.all_pass()}, {"rows", pert}}},
         {"stages", stages},
         {"ok", tr.ok()},
         {"certificates", certs}};
  if (tr.annuli) {
    j["t"] = tr.annuli->t;
    j["parities"] = {{"gamma_plus", tr.annuli->gamma_plus_parity}, {"gamma_minus", tr.annuli->gamma_minus_parity}};
    j["annuli"] = to_json(*tr.annuli);
  }
  if (tr.ratios) j["ratio_diagnostics"] = to_json(*tr.ratios);
  return j;
}

// ---------------------------------------------------------------------------
// CSV

struct SimplexRow {
  int n = 0;
  Rational volume;
  Interval total_area;
  Interval R;
  double ln_R = 0;
};

inline SimplexRow simplex_row(int n, mpfr_prec_t prec) {
  const IncenterResult r = incenter(n, prec);
  return {n, r.volume, r.total_area, r.R, r.R.mid().log().to_double()};
}

/// One row per n plus the fitted slope and residual of ln R_n against n.
inline std::string simplex_csv(const std::vector<SimplexRow>& rows) {
  std::ostringstream os;
  os << "# schema simplex_table/" << kSchemaVersion << "\n";
  os << "n,volume,total_area,R_n,ln_R_n,slope_fit,fit_residual\n";
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.n);
    ys.push_back(r.ln_R);
  }
  LineFit fit;
  const bool fitted = rows.size() >= 2;
  if (fitted) fit = fit_line(xs, ys);
  for (const auto& r : rows) {
    os << r.n << "," << rational_str(r.volume) << "," << r.total_area.mid().str(20) << "," << r.R.mid().str(20) << ","
       << r.ln_R << ",";
    if (fitted)
      os << fit.slope << "," << r.ln_R - (fit.slope * r.n + fit.intercept);
    else
      os << ",";
    os << "\n";
  }
  return os.str();
}

inline Json simplex_json(const std::vector<SimplexRow>& rows) {
  Json arr = Json::array();
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"volume", rational_str(r.volume)},
                   {"total_area", to_json(r.total_area, 20)},
                   {"R_n", to_json(r.R, 20)},
                   {"ln_R_n", r.ln_R}});
    xs.push_back(r.n);
    ys.push_back(r.ln_R);
  }
  Json j{{"schema", std::string("simplex_table/") + kSchemaVersion}, {"rows", arr}};
  if (rows.size() >= 2) {
    const LineFit f = fit_line(xs, ys);
    j["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"max_residual", f.max_residual}};
  }
  return j;
}

/// Flat key,value rendering of a JSON object (nested keys joined by '.').
inline std::string flat_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  auto walk = [&](auto&& self, const Json& v, const std::string& prefix) -> void {
    if (v.is_object()) {
      for (auto it = v.begin(); it != v.end(); ++it) self(self, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) self(self, v[i], prefix + "." + std::to_string(i));
    } else {
      std::string s = v.is_string() ? v.get<std::string>() : v.dump();
      if (s.find_first_of(",\"") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        s = q + "\"";
      }
      os << prefix << "," << s << "\n";
    }
  };
  walk(walk, j, "");
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

inline const char* leaf_colour(Target target, LeafState s) {
  if (s == LeafState::Unknown) return "#9e9e9e";
  if (s == LeafState::Witness) return "#000000";
  return target == Target::Positive || target == Target::NonNegative ? "#2e7d32" : "#c62828";
}

/// Left panel: leaves of the three corner-region certificates on [-1,1]^2.
/// Right panel: leaves of the sharp-change certificates drawn as sectors of
/// the annulus 1/2 <= r <= 1 (s = cos theta, both half planes).
inline std::string sign_region_svg(const std::vector<RegionCertificate>& regions,
                                   const std::vector<const SignCertificate*>& sectors) {
  const double S = 200, pad = 20, W = 2 * (2 * S) + 3 * pad, H = 2 * S + 2 * pad + 20;
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  const double ox = pad, oy = pad + 20;
  auto px = [&](double x) { return ox + (x + 1) * S; };
  auto py = [&](double y) { return oy + (1 - y) * S; };
  os << "<text x=\"" << ox << "\" y=\"" << pad + 10 << "\" font-size=\"12\">corner regions</text>\n";
  os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << 2 * S << "\" height=\"" << 2 * S
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (const auto& r : regions)
    for (const auto& l : r.cert.leaves)
      os << "<rect class=\"leaf\" data-region=\"" << r.region.name << "\" x=\"" << px(l.x0) << "\" y=\"" << py(l.y1)
         << "\" width=\"" << (l.x1 - l.x0) * S << "\" height=\"" << (l.y1 - l.y0) * S << "\" fill=\""
         << leaf_colour(r.cert.target, l.state) << "\" fill-opacity=\"0.55\" stroke=\"#222\" stroke-width=\"0.2\"/>\n";

  const double cx = 3 * S + 2 * pad, cy = oy + S;
  os << "<text x=\"" << 2 * S + 2 * pad << "\" y=\"" << pad + 10 << "\" font-size=\"12\">annulus sectors (s = cos theta)</text>\n";
  auto pt = [&](double r, double th) {
    std::ostringstream p;
    p.precision(6);
    p << cx + r * S * std::cos(th) << "," << cy - r * S * std::sin(th);
    return p.str();
  };
  for (const auto* c : sectors) {
    if (!c) continue;
    for (const auto& l : c->leaves) {
      const double a0 = std::acos(std::clamp(l.x1, -1.0, 1.0)), a1 = std::acos(std::clamp(l.x0, -1.0, 1.0));
      for (int sgn : {1, -1}) {
        const double t0 = sgn * a0, t1 = sgn * a1;
        const int sweep = sgn > 0 ? 0 : 1;
        os << "<path class=\"sector\" d=\"M " << pt(0.5, t0) << " L " << pt(1.0, t0) << " A " << S << " " << S << " 0 0 "
           << sweep << " " << pt(1.0, t1) << " L " << pt(0.5, t1) << " A " << S / 2 << " " << S / 2 << " 0 0 "
           << 1 - sweep << " " << pt(0.5, t0) << " Z\" fill=\"" << leaf_colour(c->target, l.state)
           << "\" fill-opacity=\"0.55\" stroke=\"#222\" stroke-width=\"0.2\"/>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string pipeline_svg(const PipelineTrace& tr) {
  std::vector<const SignCertificate*> sectors;
  if (tr.sharp.negative_side) sectors.push_back(&*tr.sharp.negative_side);
  if (tr.sharp.positive_side) sectors.push_back(&*tr.sharp.positive_side);
  return sign_region_svg(tr.hypotheses, sectors);
}

}  // namespace sharpturn
