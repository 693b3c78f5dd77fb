#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gradelast/errors.hpp"
#include "gradelast/harness.hpp"

using namespace gradelast;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("gradelast_test_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kStripRates = R"({
  "case_id": "rates", "domain": "strip", "method": "pdo", "modes": 4, "ny": 128,
  "lame": {"lambda": 1.0, "mu": 1.0},
  "g_list": [0.2, 0.1, 0.05, 0.025],
  "load": {"modes": [{"k": 1, "comp": 0, "profile": {"kind": "polynomial", "coeffs": [1.0]}}]}
})";

ConvergenceReport g_study(double scale) {
  ConvergenceReport r;
  for (int t = 0; t < 2; ++t)
    for (double g : {0.2, 0.1, 0.05, 0.025}) r.rows.push_back({"study", "strip", "pdo", g, 64, t, scale * g * g, 0.0});
  return r;
}

}  // namespace

TEST(Config, MinimalIntervalDefaults) {
  const CaseConfig c = parse_config(R"({"case_id": "a"})");
  EXPECT_EQ(c.domain, Domain::Interval);
  EXPECT_EQ(c.method, Method::Oracle);
  EXPECT_EQ(c.polynomial, std::vector<double>{1.0});
  EXPECT_DOUBLE_EQ(c.lame.p_modulus(), 1.0);
}

TEST(Config, Violations) {
  EXPECT_THROW(parse_config(R"({"case_id": "a", "domain": "interval", "method": "pdo"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", )"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "domain": "strip"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "method": "mixed", "norms": [2]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a/b"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "gradient": {"g": -1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "gradient": {"a": [1, 2]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "lame": {"lambda": 1, "mu": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "boundary": "set2"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"case_id": "a", "resolutions": [1]})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/case.json"), ConfigError);
}

TEST(RunCase, SelfComparisonIsZero) {
  const auto rep = run_case(parse_config(R"({"case_id": "self", "resolutions": [16]})"));
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].error, 0.0);
  EXPECT_EQ(rep.rows[0].h_or_ny, 16);
}

TEST(RunCase, ClosedFormReferenceConverges) {
  const auto rep = run_case(parse_config(
      R"({"case_id": "cf", "reference": "closed-form", "resolutions": [16, 32], "norms": [1], "gradient": {"g": 0.1}})"));
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_GT(rep.rows[0].error / rep.rows[1].error, 7.0);
}

TEST(RunCase, ExplicitParametersMatchGradientLength) {
  const auto a = run_case(parse_config(
      R"({"case_id": "p", "method": "mixed", "gradient": {"a": [0, 0, 0, 0.005, 0]}, "resolutions": [16]})"));
  const auto b = run_case(parse_config(R"({"case_id": "p", "method": "mixed", "gradient": {"g": 0.1}, "resolutions": [16]})"));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  EXPECT_NEAR(a.rows[0].error, b.rows[0].error, 1e-12 * b.rows[0].error);
}

TEST(RunCase, StripRatesCarryTargets) {
  const auto rep = run_case(parse_config(kStripRates));
  ASSERT_EQ(rep.fits.size(), 3u);
  EXPECT_EQ(rep.fits[1].target, 1.4);
  EXPECT_EQ(rep.fits[2].target, 0.45);
  EXPECT_TRUE(rep.fits[1].pass && rep.fits[2].pass);
}

TEST(RunCase, BitwiseReproducibleCsv) {
  const CaseConfig c = parse_config(kStripRates);
  EXPECT_EQ(run_case(c).csv(), run_case(c).csv());
}

TEST(RunCase, NumericalFailureNamesTriple) {
  const CaseConfig c = parse_config(
      R"({"case_id": "f", "method": "mixed", "boundary": "set2", "load": {"constant": 1}, "resolutions": [8]})");
  try {
    run_case(c);
    FAIL() << "expected a Fredholm failure";
  } catch (const FredholmIncompatible& e) {
    EXPECT_NE(std::string(e.what()).find("(k=0, g=0.1, n=8)"), std::string::npos);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FredholmIncompatible) << e.what();
  }
}

TEST(Report, FilesAndRoundTrip) {
  const fs::path dir = scratch_dir("report");
  const ConvergenceReport rep = g_study(1.0);
  write_report(rep, dir, "study");
  const std::string csv = slurp(dir / "study.csv");
  EXPECT_EQ(csv.rfind("case_id,domain,method,g,h_or_ny,t,error,runtime_ms\n", 0), 0u);
  EXPECT_EQ(parse_report_csv(csv).csv(), csv);
  EXPECT_TRUE(fs::exists(dir / "study_summary.json"));
  EXPECT_THROW(parse_report_csv("a,b\n"), InvalidArgument);
  fs::remove_all(dir);
}

TEST(Report, SlopeFit) {
  const SlopeFit f = fit_loglog({1, 2, 4, 8}, {3, 12, 48, 192});
  ASSERT_TRUE(f.slope);
  EXPECT_NEAR(*f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.half_width95, 0.0, 1e-10);
  EXPECT_FALSE(fit_loglog({1}, {1}).slope);
  EXPECT_FALSE(fit_loglog({1, 2}, {0, 0}).slope);
  ConvergenceReport r = g_study(1.0);
  const SlopeFit fit = r.fit(0, 2.5);
  EXPECT_NEAR(*fit.slope, 2.0, 1e-12);
  EXPECT_TRUE(fit.monotone);
  EXPECT_FALSE(fit.pass);
}

TEST(Plots, OnePerNormIndex) {
  const fs::path dir = scratch_dir("plots");
  std::vector<std::string> warnings;
  const auto files = emit_plots(g_study(1.0), dir, &warnings);
  EXPECT_EQ(files.size(), 2u);
  EXPECT_TRUE(warnings.empty());
  EXPECT_NE(slurp(dir / "study_t0.svg").find("slope 2"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Plots, SingleRowWarns) {
  const fs::path dir = scratch_dir("single");
  ConvergenceReport r;
  r.rows.push_back({"one", "interval", "oracle", 0.1, 16, 0, 0.0, 0.0});
  std::vector<std::string> warnings;
  EXPECT_TRUE(emit_plots(r, dir, &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_FALSE(fs::exists(dir / "one_t0.svg"));
}

TEST(Plots, ZeroErrorsGiveFlatLine) {
  const fs::path dir = scratch_dir("flat");
  const auto files = emit_plots(g_study(0.0), dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_NE(slurp(files[0]).find("slope undefined"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Io, UnwritableDirectory) {
  EXPECT_THROW(ensure_writable("/proc/gradelast_no_such_dir"), IoError);
  EXPECT_THROW(write_report(g_study(1.0), "/proc/gradelast_no_such_dir", "x"), IoError);
}
