// Command-line driver.  Exit codes: 0 success, 1 certification failure,
// 2 usage, parse or precondition error, 3 internal error.

#include "sharpturn/sharpturn.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace sharpturn;
namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kCertificationFailure = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  int n = 0;
  std::string n_range;
  int precision_bits = 256;
  int steps = 30;
  int threads = 1;
  std::string out = ".";
  std::string format;
  std::string poly_file;
  std::string eps_hint;
  bool quiet = false;
};

std::vector<int> resolve_ns(const RunConfig& cfg) {
  if (!cfg.n_range.empty()) {
    const auto dots = cfg.n_range.find("..");
    if (dots == std::string::npos) throw PreconditionError("--n-range expects A..B, got '" + cfg.n_range + "'");
    int a = 0, b = 0;
    try {
      a = std::stoi(cfg.n_range.substr(0, dots));
      b = std::stoi(cfg.n_range.substr(dots + 2));
    } catch (const std::exception&) {
      throw PreconditionError("--n-range expects integers A..B, got '" + cfg.n_range + "'");
    }
    if (a > b) throw PreconditionError("--n-range is empty");
    std::vector<int> ns;
    for (int k = a; k <= b; ++k) ns.push_back(k);
    return ns;
  }
  if (cfg.n == 0) throw PreconditionError("one of --n or --n-range is required");
  return {cfg.n};
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
  fs::create_directories(cfg.out);
  std::ofstream os(fs::path(cfg.out) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(cfg.out) / name).string());
  os << body;
}

/// Writes the report as <stem>.json or <stem>.csv and echoes it to stdout.
void emit(const RunConfig& cfg, const std::string& stem, const Json& j) {
  const bool csv = cfg.format == "csv";
  const std::string body = csv ? flat_csv(j) : j.dump(2) + "\n";
  write_file(cfg, stem + (csv ? ".csv" : ".json"), body);
  if (!cfg.quiet) std::cout << body;
}

EpsilonOptions epsilon_options(const RunConfig& cfg) {
  EpsilonOptions o;
  o.steps = cfg.steps;
  o.threads = cfg.threads;
  return o;
}

int cmd_construct(const RunConfig& cfg) {
  int rc = kOk;
  for (int n : resolve_ns(cfg)) {
    ConstructOptions opt;
    opt.eps = epsilon_options(cfg);
    const SharpTurnExample ex = construct_example(n, opt);
    const std::string stem = "sharp_turn_n" + std::to_string(n);
    write_file(cfg, stem + ".poly", poly_to_string(ex.f));
    emit(cfg, stem, to_json(ex, stem + ".poly"));
    if (!ex.all_conditions_pass()) {
      std::cerr << "n = " << n << ": some construction conditions are not certified\n";
      rc = kCertificationFailure;
    }
  }
  return rc;
}

int cmd_measure(const RunConfig& cfg) {
  const auto f = load_poly<Rational>(cfg.poly_file);
  const Rational hint = cfg.eps_hint.empty() ? make_rational(1, 8) : parse_rational(cfg.eps_hint);
  CertifiedEpsilon e = measure_epsilon(f, hint, epsilon_options(cfg));
  e.n = f.total_degree();
  emit(cfg, fs::path(cfg.poly_file).stem().string() + ".epsilon", to_json(e));
  return e.all_certified() ? kOk : kCertificationFailure;
}

int cmd_baseline(const RunConfig& cfg) {
  int rc = kOk;
  for (int n : resolve_ns(cfg)) {
    SharpTurnExample ex = baseline_simple(n, epsilon_options(cfg));
    ex.eps.n = n;
    Json j = to_json(ex.eps);
    j["schema"] = std::string("baseline/") + kSchemaVersion;
    j["threshold"] = baseline_threshold(n);
    j["brackets_threshold"] = to_double(ex.eps.eps_fail) < baseline_threshold(n) && baseline_threshold(n) < to_double(ex.eps.eps_ok);
    emit(cfg, "baseline_n" + std::to_string(n), j);
    if (!ex.eps.all_certified()) rc = kCertificationFailure;
  }
  return rc;
}

int cmd_simplex(const RunConfig& cfg) {
  RunConfig c = cfg;
  if (c.n == 0 && c.n_range.empty()) c.n_range = "1..10";
  const auto ns = resolve_ns(c);
  if (ns.front() < 1 || ns.back() > 10) throw PreconditionError("simplex tables need n in [1, 10]");
  std::vector<SimplexRow> rows;
  bool ok = true;
  for (int n : ns) {
    mpfr_prec_t prec = c.precision_bits;
    for (int attempt = 0;; ++attempt) {
      try {
        const FacetAreas fa = facet_areas(n, prec);
        ok = ok && fa.all_within_bound();
        break;
      } catch (const PrecisionError&) {
        if (attempt == 3) throw;
        prec *= 2;
      }
    }
    rows.push_back(simplex_row(n, prec));
  }
  if (c.format.empty() || c.format == "csv") {
    const std::string body = simplex_csv(rows);
    write_file(c, "simplex.csv", body);
    if (!c.quiet) std::cout << body;
  } else {
    emit(c, "simplex", simplex_json(rows));
  }
  return ok ? kOk : kCertificationFailure;
}

int cmd_pipeline(const RunConfig& cfg) {
  PipelineOptions po;
  po.precision = cfg.precision_bits;
  po.threads = cfg.threads;
  po.cert.record_leaves = true;
  BiPoly<Rational> f;
  Rational eps;
  int n = cfg.n;
  if (!cfg.poly_file.empty()) {
    f = load_poly<Rational>(cfg.poly_file);
    if (n == 0) n = f.total_degree();
    if (cfg.eps_hint.empty()) {
      EpsilonOptions eo = epsilon_options(cfg);
      eps = measure_epsilon(f, make_rational(1, 8), eo).eps_ok;
    } else {
      eps = parse_rational(cfg.eps_hint);
    }
  } else {
    if (n <= 100) throw PreconditionError("pipeline without --poly requires n > 100 (got n = " + std::to_string(n) + ")");
    ConstructOptions opt;
    opt.eps = epsilon_options(cfg);
    const SharpTurnExample ex = construct_example(n, opt);
    f = ex.f;
    eps = cfg.eps_hint.empty() ? ex.eps.eps_ok : parse_rational(cfg.eps_hint);
  }
  const PipelineTrace tr = pipeline(f, n, eps, po);
  const std::string stem = "pipeline_n" + std::to_string(n);
  write_file(cfg, stem + ".svg", pipeline_svg(tr));
  emit(cfg, stem, to_json(tr));
  return tr.ok() ? kOk : kCertificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp-turn polynomial construction, certification and simplex diagnostics"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--n", cfg.n, "Degree");
    sc->add_option("--n-range", cfg.n_range, "Inclusive degree range A..B");
    sc->add_option("--precision-bits", cfg.precision_bits, "Working precision for high-precision values")
        ->check(CLI::Range(64, 1 << 20));
    sc->add_option("--steps", cfg.steps, "Relative bisection steps for epsilon brackets")->check(CLI::Range(1, 200));
    sc->add_option("--threads", cfg.threads, "Worker threads for region certificates")->check(CLI::Range(1, 256));
    sc->add_option("--out", cfg.out, "Output directory");
    sc->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sc->add_flag("--quiet", cfg.quiet, "Do not echo the report to stdout");
  };
  auto* construct = app.add_subcommand("construct", "Build and certify the sharp-turn example for n > 100");
  common(construct);
  auto* measure = app.add_subcommand("measure", "Certified epsilon bracket for a polynomial file");
  common(measure);
  measure->add_option("poly_file", cfg.poly_file, "Polynomial file")->required();
  measure->add_option("--hint", cfg.eps_hint, "Starting epsilon, a rational");
  auto* simplex = app.add_subcommand("simplex", "Volume, surface and inradius table");
  common(simplex);
  auto* pipe = app.add_subcommand("pipeline", "Rotation, polar slices, incenter combination and root parities");
  common(pipe);
  pipe->add_option("--poly", cfg.poly_file, "Polynomial file (default: the constructed example for --n)");
  pipe->add_option("--eps", cfg.eps_hint, "Corner margin the hypotheses are certified at");
  auto* baseline = app.add_subcommand("baseline", "Epsilon bracket for (x+1)^(2n) + (y+1)^(2n) - 1");
  common(baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(cfg);
    if (*measure) return cmd_measure(cfg);
    if (*simplex) return cmd_simplex(cfg);
    if (*pipe) return cmd_pipeline(cfg);
    if (*baseline) return cmd_baseline(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoPassingEpsilon& e) {
    std::cerr << "certification failure: no passing eps: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline failure at stage '" << e.stage() << "': " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
