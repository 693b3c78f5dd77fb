#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "gradelast/acceptance.hpp"
#include "gradelast/errors.hpp"

using namespace gradelast;

TEST(Acceptance, NamesAndBudgets) {
  EXPECT_STREQ(criterion_name(1), "constitutive-equivalence");
  EXPECT_DOUBLE_EQ(criterion_budget(10), 120.0);
  EXPECT_THROW(criterion_name(12), InvalidArgument);
  EXPECT_THROW(run_criterion(0, VerifyOptions{}), InvalidArgument);
}

TEST(Acceptance, ConstitutiveCriteriaPass) {
  const auto r = run_acceptance(VerifyOptions{7, {1, 2}, false});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].pass) << acceptance_line(r[0]);
  EXPECT_TRUE(r[1].pass) << acceptance_line(r[1]);
}

TEST(Acceptance, BrokenSymmetryFailsOnlyConstitutiveCriteria) {
  VerifyOptions opt{1, {1, 2, 4, 6}, true};
  const auto r = run_acceptance(opt);
  EXPECT_FALSE(r[0].pass);
  EXPECT_FALSE(r[1].pass);
  EXPECT_TRUE(r[2].pass) << acceptance_line(r[2]);
  EXPECT_TRUE(r[3].pass) << acceptance_line(r[3]);
}

TEST(Acceptance, JsonSchema) {
  const auto r = run_acceptance(VerifyOptions{1, {4}, false});
  const auto j = nlohmann::json::parse(acceptance_json(r));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["criterion"], 4);
  EXPECT_TRUE(j[0]["measured"].contains("max_error_n128"));
  EXPECT_TRUE(j[0].contains("target"));
  EXPECT_TRUE(j[0]["pass"].get<bool>());
  EXPECT_EQ(acceptance_line(r[0]).rfind("PASS 4 oracle-1d", 0), 0u);
}
