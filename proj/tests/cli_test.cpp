#include "sharpturn/construction.hpp"
#include "sharpturn/poly_io.hpp"
#include "sharpturn/report.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SHARPTURN_CLI
#error "SHARPTURN_CLI must name the CLI executable"
#endif
#ifndef CLI_TEST_DIR
#error "CLI_TEST_DIR must name a scratch directory"
#endif

using namespace sharpturn;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int rc = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::path(CLI_TEST_DIR) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

RunResult run(const std::string& args, const fs::path& dir) {
  const fs::path o = dir / "stdout.txt", e = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + SHARPTURN_CLI + "\" " + args + " > \"" + o.string() + "\" 2> \"" + e.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

std::string out_flag(const fs::path& d) { return " --out \"" + d.string() + "\""; }

Rational json_rational(const Json& v) { return parse_rational(v.get<std::string>()); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t k = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++k;
  return k;
}

}  // namespace

TEST(CliConstruct, RejectsSmallDegree) {
  const auto d = scratch("construct100");
  const RunResult r = run("construct --n 100 --quiet" + out_flag(d), d);
  EXPECT_EQ(r.rc, 2);
  EXPECT_NE(r.err.find("n > 100"), std::string::npos) << r.err;
}

TEST(CliConstruct, N101BeatsBaseline) {
  const auto d = scratch("construct101");
  const RunResult r = run("construct --n 101 --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const Json j = Json::parse(slurp(d / "sharp_turn_n101.json"));
  EXPECT_EQ(j["schema"], "sharp_turn_example/1");
  EXPECT_LT(to_double(json_rational(j["eps_ok"])), 0.00343);
  EXPECT_EQ(j["poly_file"], "sharp_turn_n101.poly");
  const auto f = load_poly<Rational>((d / "sharp_turn_n101.poly").string());
  EXPECT_LE(f.total_degree(), 101);
  EXPECT_EQ(f, construct_example(101).f);
}

TEST(CliConstruct, N201BracketWidth) {
  const auto d = scratch("construct201");
  const RunResult r = run("construct --n 201 --steps 40 --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const Json j = Json::parse(slurp(d / "sharp_turn_n201.json"));
  const Rational ok = json_rational(j["eps_ok"]), fail = json_rational(j["eps_fail"]);
  EXPECT_LT(fail, ok);
  EXPECT_LE(ok - fail, ok * pow2(-40));
}

TEST(CliConstruct, CsvFormat) {
  const auto d = scratch("construct_csv");
  const RunResult r = run("construct --n 101 --format csv" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const std::string csv = slurp(d / "sharp_turn_n101.csv");
  EXPECT_EQ(csv, r.out);
  EXPECT_NE(csv.find("eps_ok"), std::string::npos);
}

TEST(CliMeasure, BaselineTen) {
  const auto d = scratch("measure_baseline");
  save_poly((d / "baseline10.poly").string(), baseline_poly(10));
  const RunResult r = run("measure \"" + (d / "baseline10.poly").string() + "\" --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const Json j = Json::parse(slurp(d / "baseline10.epsilon.json"));
  const double t = 1.0 - std::exp2(-1.0 / 20);
  EXPECT_LT(to_double(json_rational(j["eps_fail"])), t);
  EXPECT_GT(to_double(json_rational(j["eps_ok"])), t);
}

TEST(CliMeasure, LinearHasNoPassingEpsilon) {
  const auto d = scratch("measure_linear");
  save_poly((d / "xy.poly").string(), BiPoly<Rational>::x() + BiPoly<Rational>::y());
  const RunResult r = run("measure \"" + (d / "xy.poly").string() + "\" --steps 20 --quiet" + out_flag(d), d);
  EXPECT_EQ(r.rc, 1);
  EXPECT_NE(r.err.find("certification failure"), std::string::npos) << r.err;
}

TEST(CliMeasure, MalformedFile) {
  const auto d = scratch("measure_bad");
  std::ofstream(d / "bad.poly") << "1/2 x^1 z^3\n";
  const RunResult r = run("measure \"" + (d / "bad.poly").string() + "\" --quiet" + out_flag(d), d);
  EXPECT_EQ(r.rc, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos) << r.err;
  const RunResult missing = run("measure \"" + (d / "absent.poly").string() + "\" --quiet" + out_flag(d), d);
  EXPECT_EQ(missing.rc, 2);
}

TEST(CliSimplex, Rows) {
  const auto d = scratch("simplex");
  const RunResult r = run("simplex --n-range 1..10 --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  std::istringstream csv(slurp(d / "simplex.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "# schema simplex_table/1");
  std::getline(csv, line);
  EXPECT_EQ(line, "n,volume,total_area,R_n,ln_R_n,slope_fit,fit_residual");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0][1], "1/4");
  EXPECT_NEAR(std::stod(rows[0][3]), 0.16490, 1e-4);
  EXPECT_EQ(rows[1][1], "1/192");
  EXPECT_LT(std::stod(rows[0][5]), 0);
}

TEST(CliSimplex, RejectsLargeN) {
  const auto d = scratch("simplex_big");
  EXPECT_EQ(run("simplex --n 11 --quiet" + out_flag(d), d).rc, 2);
}

TEST(CliUsage, Errors) {
  const auto d = scratch("usage");
  EXPECT_EQ(run("frobnicate", d).rc, 2);
  EXPECT_EQ(run("", d).rc, 2);
  EXPECT_EQ(run("construct --n 101 --format xml", d).rc, 2);
  EXPECT_EQ(run("baseline --n-range 3", d).rc, 2);
}

TEST(CliPipeline, SvgMatchesCertificates) {
  const auto d = scratch("pipeline8");
  save_poly((d / "base4.poly").string(), baseline_poly(4));
  const RunResult r = run("pipeline --poly \"" + (d / "base4.poly").string() + "\" --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const Json j = Json::parse(slurp(d / "pipeline_n8.json"));
  EXPECT_EQ(j["parities"]["gamma_plus"], "odd");
  EXPECT_EQ(j["parities"]["gamma_minus"], "even");
  std::size_t boxes = 0, sectors = 0;
  for (const auto& c : j["certificates"]) {
    ASSERT_TRUE(c.contains("leaf_count"));
    (c["stage"] == "hypotheses" ? boxes : sectors) += c["leaf_count"].get<std::size_t>();
  }
  const std::string svg = slurp(d / "pipeline_n8.svg");
  EXPECT_EQ(count(svg, "class=\"leaf\""), boxes);
  EXPECT_EQ(count(svg, "class=\"sector\""), 2 * sectors);  // mirrored half-planes
  EXPECT_GT(boxes, 0u);
}

TEST(CliPipeline, RejectsInvalidPolynomialAtFirstStage) {
  const auto d = scratch("pipeline_bad");
  save_poly((d / "neg.poly").string(), BiPoly<Rational>::constant(make_rational(0, 1)) - baseline_poly(2));
  const RunResult r =
      run("pipeline --poly \"" + (d / "neg.poly").string() + "\" --eps 1/8 --quiet" + out_flag(d), d);
  EXPECT_EQ(r.rc, 1);
  EXPECT_NE(r.err.find("hypotheses"), std::string::npos) << r.err;
}

TEST(CliPipeline, RequiresLargeNWithoutPoly) {
  const auto d = scratch("pipeline_small");
  EXPECT_EQ(run("pipeline --n 50 --quiet" + out_flag(d), d).rc, 2);
}

TEST(CliDeterminism, ByteIdenticalReports) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  save_poly((a / "base4.poly").string(), baseline_poly(4));
  save_poly((b / "base4.poly").string(), baseline_poly(4));
  for (const auto& d : {a, b}) {
    ASSERT_EQ(run("pipeline --poly \"" + (d / "base4.poly").string() + "\" --quiet" + out_flag(d), d).rc, 0);
    ASSERT_EQ(run("construct --n 101 --quiet" + out_flag(d), d).rc, 0);
    ASSERT_EQ(run("baseline --n-range 1..3 --quiet" + out_flag(d), d).rc, 0);
  }
  for (const char* f : {"pipeline_n8.json", "pipeline_n8.svg", "sharp_turn_n101.json", "sharp_turn_n101.poly",
                        "baseline_n1.json", "baseline_n3.json"}) {
    const std::string x = slurp(a / f), y = slurp(b / f);
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, y) << f;
  }
}

TEST(CliBaseline, BracketsThreshold) {
  const auto d = scratch("baseline");
  const RunResult r = run("baseline --n 5 --quiet" + out_flag(d), d);
  ASSERT_EQ(r.rc, 0) << r.err;
  const Json j = Json::parse(slurp(d / "baseline_n5.json"));
  EXPECT_TRUE(j["brackets_threshold"].get<bool>());
}
