#include <gtest/gtest.h>

#include <cmath>

#include "gradelast/errors.hpp"
#include "gradelast/mixed.hpp"

using namespace gradelast;

namespace {

const LameParams kUnit{0.0, 0.5};

MixedSystem<double> interval_system(int n, MixedOptions opt, const std::function<double(double)>& f, double g = 0.1) {
  return assemble_mixed(IntervalMesh(1.0, n), kUnit, one_d_gradient_params(g, 1.0), opt, f);
}

double one(double) { return 1.0; }

}  // namespace

TEST(Mixed, MatchesClosedFormOnInterval) {
  const ClosedForm1D cf(1.0, 0.1, 1.0, kUnit);
  const auto st = solve_mixed(interval_system(128, MixedOptions{}, one));
  EXPECT_NEAR(st.u().evaluate(0.5, 0), cf.value(0.5), 1e-6);
  const double err = interval_norm(st.u(), 0, 0, [&cf](double x) { return cf.jet(x); });
  EXPECT_LT(err / interval_norm(st.u(), 0, 0), 1e-6);
}

TEST(Mixed, ConstraintResidualFirstOrder) {
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    const double r = constraint_residual(solve_mixed(interval_system(n, MixedOptions{}, one)));
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / r), 1.0, 0.1);
    prev = r;
  }
}

TEST(Mixed, LinearElementsConverge) {
  MixedOptions opt;
  opt.family = Family::LagrangeP1;
  const ClosedForm1D cf(1.0, 0.1, 1.0, kUnit);
  const auto st = solve_mixed(interval_system(256, opt, one));
  EXPECT_NEAR(st.u().evaluate(0.5, 0), cf.value(0.5), 1e-4);
}

TEST(Mixed, PlusOperatorSymmetricMinusCoercive) {
  MixedOptions plus;
  plus.sign = 1;
  const auto sys = interval_system(16, plus, one);
  const Eigen::MatrixXd a = Eigen::MatrixXd(sys.system.matrix);
  EXPECT_EQ((a - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(solve_mixed(sys), InvalidArgument);
  EXPECT_GT(smallest_ritz_value(interval_system(16, MixedOptions{}, one)), 0.0);
  MixedOptions bad;
  bad.sign = 0;
  EXPECT_THROW(interval_system(8, bad, one), InvalidArgument);
}

TEST(Mixed, EnergyIsPositive) {
  const auto sys = interval_system(32, MixedOptions{}, one);
  const auto st = solve_mixed(sys);
  EXPECT_GT(energy(st, kUnit, sys.h), 0.0);
}

TEST(Mixed, SecondBoundarySetInterval) {
  MixedOptions opt;
  opt.boundary = BoundarySet::Set2;
  EXPECT_EQ(mixed_nullspace_dimension(interval_system(8, opt, one)), 1);
  EXPECT_THROW(solve_mixed(interval_system(8, opt, one)), FredholmIncompatible);
  SolveInfo info;
  const auto st = solve_mixed(interval_system(16, opt, [](double x) { return std::cos(M_PI * x); }), &info);
  EXPECT_LE(info.residual, 1e-10);
  // Antisymmetric load about the midpoint gives an antisymmetric displacement.
  EXPECT_NEAR(st.u().evaluate(0.25, 0), -st.u().evaluate(0.75, 0), 1e-10);
}

TEST(Mixed, SecondBoundarySetRectangle) {
  const LameParams lm{1.0, 1.0};
  MixedOptions opt;
  opt.boundary = BoundarySet::Set2;
  const auto uniform = [](double, double) { return std::array<double, 2>{0.0, 1.0}; };
  const auto rect = assemble_mixed_rect(RectangleMesh{1.0, 1.0, 3, 3}, lm, simple_gradient_params(0.1, lm), opt, uniform);
  // translations only: the rotation violates the imposed ∂u/∂n = 0
  EXPECT_EQ(mixed_nullspace_dimension(rect), 2);
  EXPECT_THROW(solve_mixed_rect(rect), FredholmIncompatible);
}

TEST(Mixed, ZeroGradientReducesToClassical) {
  const auto st = solve_mixed(
      assemble_mixed(IntervalMesh(1.0, 8), kUnit, GradientParams{}, MixedOptions{}, one));
  for (double x : {0.1, 0.5, 0.8}) EXPECT_NEAR(st.u().evaluate(x, 0), 0.5 * x * (1 - x), 1e-13);
}

TEST(Mixed, StripAgreesWithFourthOrderOracle) {
  const LameParams lm{1.0, 1.0};
  StripLoad f;
  f.terms.push_back({1, 0, 1.0, 0.0, {Profile::Kind::Sine, 1, {}}});
  f.terms.push_back({0, 1, 1.0, 0.0, {Profile::Kind::Polynomial, 1, {0.0, 1.0}}});
  const auto oracle = solve_strip_fourth(f, 0.1, lm, StripGrid{2, 128});
  const auto mixed = solve_strip_mixed(f, 0.1, lm, StripGrid{2, 64});
  EXPECT_LT(strip_norm(mixed.u, &oracle.u, 0) / strip_norm(oracle.u, nullptr, 0), 1e-5);
  EXPECT_GT(mixed.constraint_residual, 0.0);
}

TEST(Mixed, StripModeRejectsSecondBoundarySet) {
  MixedOptions opt;
  opt.boundary = BoundarySet::Set2;
  const auto f = [](double) { return std::array<cplx, 2>{1.0, 0.0}; };
  EXPECT_THROW(assemble_mixed_mode(IntervalMesh(1.0, 8), 1.0, LameParams{}, simple_gradient_params(0.1, LameParams{}),
                                   opt, f),
               Unsupported);
}
