#include <gtest/gtest.h>

#include <Eigen/LU>
#include <cmath>

#include "gradelast/errors.hpp"
#include "gradelast/pdo_strip.hpp"

using namespace gradelast;

namespace {

const LameParams kLame{1.0, 1.0};

StripLoad sine_load() {
  StripLoad f;
  f.terms.push_back({1, 0, 1.0, 0.0, {Profile::Kind::Sine, 1, {}}});
  f.terms.push_back({2, 1, 0.5, 0.3, {Profile::Kind::Polynomial, 1, {1.0, 2.0}}});
  return f;
}

}  // namespace

TEST(Green, ClassicalModeZero) {
  const auto u = green_mode(StripGrid{4, 64}, 0, kLame, [](double y) {
    return std::array<cplx, 2>{std::sin(M_PI * y), 0.0};
  });
  EXPECT_NEAR(u.evaluate(0.5, 0).real(), 1.0 / (M_PI * M_PI), 1e-9);
  EXPECT_NEAR(std::abs(u.evaluate(0.0, 0)), 0.0, 1e-15);
}

TEST(Poisson, ReproducesEdgeData) {
  const std::array<cplx, 4> phi{cplx(1.0, 0.5), 2.0, cplx(0.0, -1.0), 0.25};
  const auto u = poisson_mode(StripGrid{4, 32}, 3, kLame, phi);
  EXPECT_NEAR(std::abs(u.evaluate(0.0, 0) - phi[0]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(u.evaluate(1.0, 0) - phi[1]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(u.evaluate(0.0, 1) - phi[2]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(u.evaluate(1.0, 1) - phi[3]), 0.0, 1e-13);
}

TEST(T0, DecompositionIdentity) {
  const HexadicH h = build_H(simple_gradient_params(0.1, kLame), 2);
  const ModeBVP bvp(StripGrid{8, 32}, 5, kLame, h);
  const BoundarySymbol g2 = bvp.gamma2_r0();
  const BoundarySymbol t0 = bvp.t0();
  const Eigen::Matrix2cd ninv = g2.normalization.inverse().cast<cplx>();
  const MatX<cplx> g0 = bvp.gamma0();
  for (int edge = 0; edge < 2; ++edge) {
    const MatX<cplx> lhs = t0.matrix.middleRows(2 * edge, 2) + g0.middleRows(2 * edge, 2);
    const MatX<cplx> rhs = -ninv * g2.matrix.middleRows(2 * edge, 2);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(T0, VanishesAtZeroFrequencyAndStaysBounded) {
  const GradientParams p = simple_gradient_params(0.1, kLame);
  const StripGrid grid{64, 128};
  EXPECT_EQ(t0_mode(grid, 0, kLame, p).norm(), 0.0);
  double lo = INFINITY, hi = 0.0;
  for (int k : {8, 16, 32, 64}) {
    const double n = t0_mode(grid, k, kLame, p).norm();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  EXPECT_LT(hi / lo, 1.5);
  EXPECT_THROW(t0_mode(grid, 1, kLame, GradientParams{}), InvalidArgument);
}

TEST(RawGamma2, GrowsQuadratically) {
  const HexadicH h = build_H(simple_gradient_params(0.1, kLame), 2);
  const StripGrid grid{64, 256};
  std::vector<double> mags;
  for (int k : {16, 32, 64}) {
    const ModeBVP bvp(grid, k, kLame, h);
    const auto r = raw_gamma2(bvp.poisson({1.0, 1.0, 1.0, 1.0}), k, h);
    mags.push_back(std::abs(r[0]));
  }
  EXPECT_NEAR(std::log2(mags[1] / mags[0]), 2.0, 0.2);
  EXPECT_NEAR(std::log2(mags[2] / mags[1]), 2.0, 0.2);
}

TEST(ProblemIII, MatchesFourthOrderOracle) {
  const StripGrid grid{4, 128};
  for (double g : {0.2, 0.05}) {
    const auto oracle = solve_strip_fourth(sine_load(), g, kLame, grid);
    const auto pdo = solve_problem_III(sine_load(), g, kLame, grid);
    EXPECT_LT(strip_norm(pdo.u, &oracle.u, 0) / strip_norm(oracle.u, nullptr, 0), 1e-6);
  }
  EXPECT_THROW(solve_problem_III(sine_load(), 0.0, kLame, grid), InvalidArgument);
}

TEST(ProblemIII, DoubleStressTraceVanishesAtEdges) {
  const double g = 0.1;
  const auto pdo = solve_problem_III(sine_load(), g, kLame, StripGrid{4, 256});
  const auto r = raw_gamma2(pdo.u.modes.at(1), 1, build_H(simple_gradient_params(g, kLame), 2));
  for (const cplx& v : r) EXPECT_LT(std::abs(v), 1e-6);
}

TEST(ConvergenceStudy, RatesMeetTargets) {
  StripLoad f;
  f.terms.push_back({1, 0, 1.0, 0.0, {Profile::Kind::Polynomial, 1, {1.0}}});
  const auto rep = convergence_study(f, {0.2, 0.1, 0.05, 0.025}, kLame, StripGrid{4, 256}, "rates");
  ASSERT_EQ(rep.rows.size(), 12u);
  ASSERT_EQ(rep.fits.size(), 3u);
  EXPECT_NEAR(*rep.fits[1].slope, 1.461, 0.01);
  EXPECT_NEAR(*rep.fits[2].slope, 0.502, 0.01);
  EXPECT_TRUE(rep.fits[1].pass);
  EXPECT_TRUE(rep.fits[2].pass);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    EXPECT_TRUE(rep.rows[i - 1].t < rep.rows[i].t || rep.rows[i - 1].g <= rep.rows[i].g);
}

TEST(ProbeLargestG, AllModesSolvable) {
  EXPECT_DOUBLE_EQ(probe_largest_g(sine_load(), kLame, StripGrid{4, 32}, 0.5, 6), 0.5);
}
