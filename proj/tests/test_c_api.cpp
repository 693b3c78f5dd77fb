#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gradelast/gradelast.h"

namespace fs = std::filesystem;

TEST(CApi, HexadicLifecycle) {
  const double a[5] = {0.0, 0.005, 0.0, 0.01, 0.0};
  ge_hexadic* h = nullptr;
  ASSERT_EQ(ge_hexadic_create(1, a, &h), GE_OK);
  int dim = 0;
  EXPECT_EQ(ge_hexadic_dim(h, &dim), GE_OK);
  EXPECT_EQ(dim, 1);
  double nu = 2.0, mu = 0.0, defect = 1.0, c = 0.0;
  EXPECT_EQ(ge_hexadic_apply(h, &nu, &mu), GE_OK);
  EXPECT_NEAR(mu, 2.0 * 0.03, 1e-15);
  EXPECT_EQ(ge_hexadic_symmetry_defect(h, &defect), GE_OK);
  EXPECT_EQ(defect, 0.0);
  EXPECT_EQ(ge_hexadic_coercivity(h, 1, &c), GE_OK);
  EXPECT_NEAR(c, 0.03, 1e-15);
  ge_hexadic_destroy(h);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  ge_hexadic* h = nullptr;
  const double bad[5] = {0, 0, 0, -1, 0};
  EXPECT_EQ(ge_hexadic_create(3, bad, &h), GE_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ge_last_error()), "");
  EXPECT_EQ(h, nullptr);
  const double a[5] = {0, 0, 0, 0, 1};
  ASSERT_EQ(ge_hexadic_create(3, a, &h), GE_OK);
  double c = 0.0;
  EXPECT_EQ(ge_hexadic_coercivity(h, 1, &c), GE_COERCIVITY_FAILURE);
  EXPECT_STREQ(ge_status_string(GE_COERCIVITY_FAILURE), "coercivity-failure");
  ge_hexadic_destroy(h);
  EXPECT_EQ(ge_hexadic_apply(nullptr, &c, &c), GE_INVALID_ARGUMENT);
  EXPECT_EQ(ge_hexadic_create(4, a, &h), GE_INVALID_ARGUMENT);
}

TEST(CApi, FromComponents) {
  std::vector<double> comps(64, 0.0);
  comps[5] = 1.0;
  const double a[5] = {0, 0, 0, 1, 0};
  ge_hexadic* h = nullptr;
  ASSERT_EQ(ge_hexadic_from_components(2, a, comps.data(), comps.size(), &h), GE_OK);
  double defect = 0.0;
  EXPECT_EQ(ge_hexadic_symmetry_defect(h, &defect), GE_OK);
  EXPECT_EQ(defect, 1.0);
  ge_hexadic_destroy(h);
  EXPECT_EQ(ge_hexadic_from_components(2, a, comps.data(), 10, &h), GE_INVALID_ARGUMENT);
}

TEST(CApi, ClosedForm) {
  const double x[3] = {0.0, 0.5, 1.0};
  double u[3];
  ASSERT_EQ(ge_closed_form_1d(1.0, 0.1, 1.0, 0.0, 0.5, x, 3, u), GE_OK);
  EXPECT_NEAR(u[1], 0.1151347528, 1e-10);
  EXPECT_EQ(u[0], 0.0);
  EXPECT_EQ(ge_closed_form_1d(1.0, -0.1, 1.0, 0.0, 0.5, x, 3, u), GE_INVALID_ARGUMENT);
}

TEST(CApi, RunCaseAndPlot) {
  const fs::path dir = fs::temp_directory_path() / "gradelast_capi";
  fs::remove_all(dir);
  char* summary = nullptr;
  const char* cfg = R"({"case_id": "capi", "reference": "closed-form", "g_list": [0.2, 0.1], "resolutions": [32]})";
  ASSERT_EQ(ge_run_case_text(cfg, dir.c_str(), 0, &summary), GE_OK) << ge_last_error();
  EXPECT_NE(std::string(summary).find("\"case_id\": \"capi\""), std::string::npos);
  ge_free_string(summary);
  int written = 0;
  char* warnings = nullptr;
  ASSERT_EQ(ge_plot((dir / "capi.csv").c_str(), dir.c_str(), &written, &warnings), GE_OK) << ge_last_error();
  EXPECT_EQ(written, 1);
  ge_free_string(warnings);
  EXPECT_EQ(ge_run_case_text(R"({"case_id": "x", "method": "pdo"})", dir.c_str(), 0, nullptr), GE_CONFIG);
  EXPECT_EQ(ge_run_case("/nonexistent.json", nullptr, 0, nullptr), GE_CONFIG);
  EXPECT_EQ(ge_run_case_text(R"({"case_id": "x"})", "/proc/gradelast_nope", 0, nullptr), GE_IO);
  fs::remove_all(dir);
}

TEST(CApi, VerifyCriterion) {
  EXPECT_EQ(ge_criterion_count(), 11);
  char *entry = nullptr, *line = nullptr;
  int pass = 0;
  ASSERT_EQ(ge_verify_criterion(2, 1, 0, &entry, &line, &pass), GE_OK);
  EXPECT_EQ(pass, 1);
  EXPECT_NE(std::string(entry).find("\"criterion\": 2"), std::string::npos);
  ge_free_string(entry);
  ge_free_string(line);
  ASSERT_EQ(ge_verify_criterion(2, 1, 1, nullptr, nullptr, &pass), GE_OK);
  EXPECT_EQ(pass, 0);
  EXPECT_EQ(ge_verify_criterion(12, 1, 0, nullptr, nullptr, &pass), GE_INVALID_ARGUMENT);
}

TEST(CApi, ConcurrentCases) {
  const fs::path dir = fs::temp_directory_path() / "gradelast_capi_many";
  fs::remove_all(dir);
  const std::string good = std::string(GRADELAST_CONFIG_DIR) + "/interval_oracle.json";
  const std::string bad = std::string(GRADELAST_CONFIG_DIR) + "/invalid_pdo_interval.json";
  const char* paths[2] = {good.c_str(), bad.c_str()};
  ge_status st[2];
  char* msg[2];
  ASSERT_EQ(ge_set_threads(2), GE_OK);
  ASSERT_EQ(ge_run_cases(paths, 2, dir.c_str(), 0, st, msg), GE_OK);
  EXPECT_EQ(st[0], GE_OK);
  EXPECT_EQ(st[1], GE_CONFIG);
  EXPECT_EQ(msg[0], nullptr);
  EXPECT_NE(std::string(msg[1]).find("pdo"), std::string::npos);
  ge_free_string(msg[1]);
  EXPECT_TRUE(fs::exists(dir / "interval-oracle_solution.csv"));
  ge_set_threads(1);
  fs::remove_all(dir);
}
