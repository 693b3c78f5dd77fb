#include <gtest/gtest.h>

#include <random>

#include "gradelast/constitutive.hpp"
#include "gradelast/errors.hpp"

using namespace gradelast;

namespace {

GradientParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GradientParams p;
  for (double& a : p.a) a = u(rng);
  return p;
}

// Strain gradient ν_ijk = ∂_i e_jk and ∂_i∂_j u_k of a random quadratic field.
std::pair<Tensor, Tensor> random_gradient(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor w(3, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) w({i, j, k}) = w({j, i, k}) = u(rng);
  Tensor nu(3, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) nu({i, j, k}) = 0.5 * (w({i, j, k}) + w({i, k, j}));
  return {w, nu};
}

// Mindlin Form II energy density in the strain gradient.
double form_two_energy(const Tensor& nu, const GradientParams& p) {
  const int d = nu.dim();
  double w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        w1 += nu({i, i, k}) * nu({k, j, j});
        w2 += nu({i, j, j}) * nu({i, k, k});
        w3 += nu({i, i, k}) * nu({j, j, k});
        w4 += nu({i, j, k}) * nu({i, j, k});
        w5 += nu({i, j, k}) * nu({k, j, i});
      }
  return p.a[0] * w1 + p.a[1] * w2 + p.a[2] * w3 + p.a[3] * w4 + p.a[4] * w5;
}

double max_abs(const Tensor& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Lame, Validation) {
  EXPECT_NO_THROW((LameParams{1.0, 1.0}.validate()));
  EXPECT_THROW((LameParams{1.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((LameParams{-1.0, 1.0}.validate()), InvalidArgument);
  EXPECT_DOUBLE_EQ((LameParams{0.0, 0.5}.p_modulus()), 1.0);
}

TEST(GradientParamsTest, Validation) {
  GradientParams p;
  p.a = {0, 0, 0, -1, 1};
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.a = {0, 0, 0, NAN, 1};
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.a = {0, 0.25, 0, 0.5, 0};
  EXPECT_TRUE(!p.all_zero());
  EXPECT_DOUBLE_EQ(p.min_nonzero(), 0.25);
  EXPECT_DOUBLE_EQ(one_d_gradient_params(0.1, 2.0).one_d_modulus(), 0.02);
}

TEST(Strain, SymmetricPartAndStress) {
  const Tensor gu(2, 2, {1, 2, 0, 3});
  const Tensor e = strain(gu);
  EXPECT_EQ(e({0, 1}), 1.0);
  EXPECT_EQ(e({1, 0}), 1.0);
  const Tensor s = cauchy_stress(e, LameParams{2.0, 1.0});
  EXPECT_DOUBLE_EQ(s({0, 0}), 2.0 + 8.0);
  EXPECT_DOUBLE_EQ(s({1, 1}), 6.0 + 8.0);
  EXPECT_DOUBLE_EQ(s({0, 1}), 2.0);
  EXPECT_THROW(cauchy_stress(gu, LameParams{}), InvalidArgument);
}

TEST(DoubleStress, IsEnergyDerivative) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const GradientParams p = random_params(rng);
    const auto [w, nu] = random_gradient(3, rng);
    const auto [w2, eta] = random_gradient(3, rng);
    const Tensor mu = double_stress_direct(w, p);
    const Tensor mu2 = double_stress_direct(w2, p);
    const double work = scalar(multidot(permute(nu, {3, 2, 1}), mu, 3));
    EXPECT_NEAR(work, 2.0 * form_two_energy(nu, p), 1e-12 * std::max(1.0, std::abs(work)));
    const double cross = scalar(multidot(permute(eta, {3, 2, 1}), mu, 3));
    const double cross2 = scalar(multidot(permute(nu, {3, 2, 1}), mu2, 3));
    EXPECT_NEAR(cross, cross2, 1e-12);
    EXPECT_LE(max_abs(mu - permute(mu, {1, 3, 2})), 1e-14);
  }
}

TEST(DoubleStress, RejectsUnsymmetricHessian) {
  Tensor w(3, 2);
  w({0, 1, 0}) = 1.0;
  EXPECT_THROW(double_stress_direct(w, GradientParams{}), InvalidArgument);
}

TEST(Hexadic, MatchesDirectForm) {
  std::mt19937_64 rng(22);
  for (int d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      const GradientParams p = random_params(rng);
      const HexadicH h = build_H(p, d);
      const auto [w, nu] = random_gradient(d, rng);
      const Tensor direct = double_stress_direct(w, p);
      EXPECT_LE(max_abs(h.apply(nu) - direct), 1e-13 * std::max(1.0, max_abs(direct)));
    }
}

TEST(Hexadic, SymmetriesExact) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) EXPECT_EQ(symmetry_defect(build_H(random_params(rng), 3)), 0.0);
}

TEST(Hexadic, OneDimensionalModulus) {
  GradientParams p;
  p.a = {0.1, 0.2, 0.3, 0.4, 0.5};
  const HexadicH h = build_H(p, 1);
  EXPECT_NEAR(h.tensor()({0, 0, 0, 0, 0, 0}), 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.one_d_modulus(), 3.0);
}

TEST(Hexadic, SimpleModelCoercivityConstant) {
  const LameParams lame{0.7, 1.3};
  const double g = 0.2;
  const HexadicH h = build_H(simple_gradient_params(g, lame), 3);
  // ν⋮H⋮ν = g²(λ|∇tr e|² + 2μ|∇e|²); its minimum on |ν| = 1 is 2μg² for λ >= 0.
  EXPECT_NEAR(h.smallest_eigenvalue(), 2.0 * lame.mu * g * g, 1e-14);
  EXPECT_NEAR(coercivity_certificate(h, 4, 2000), 2.0 * lame.mu * g * g, 1e-14);
}

TEST(Hexadic, PositivityCounterexample) {
  GradientParams p;
  p.a = {0, 0, 0, 0, 1};
  const HexadicH h = build_H(p, 3);
  EXPECT_NEAR(h.smallest_eigenvalue(), -1.0, 1e-12);
  EXPECT_THROW(coercivity_certificate(h), CoercivityFailure);
  GradientParams q;
  q.a = {1, 1, 1, 0, 0};
  EXPECT_THROW(coercivity_certificate(build_H(q, 3)), InvalidArgument);
}

TEST(Hexadic, FaultInjectedComponentsShowDefect) {
  const HexadicH good = build_H(simple_gradient_params(0.1, LameParams{}), 2);
  Tensor t = good.tensor();
  t({0, 0, 1, 0, 1, 1}) += 1e-3;
  EXPECT_NEAR(symmetry_defect(HexadicH::from_components(good.params(), t)), 1e-3, 1e-15);
  EXPECT_THROW(HexadicH::from_components(good.params(), Tensor(3, 2)), InvalidArgument);
}

TEST(Hexadic, BilinearIsSymmetric) {
  std::mt19937_64 rng(24);
  const HexadicH h = build_H(random_params(rng), 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [w1, a] = random_gradient(3, rng);
    const auto [w2, b] = random_gradient(3, rng);
    EXPECT_NEAR(h.bilinear(a, b), h.bilinear(b, a), 1e-13);
  }
}

TEST(Boundary, DoubleStressTrace) {
  Tensor mu(3, 2);
  mu({1, 0, 1}) = 2.0;
  mu({0, 0, 1}) = 5.0;
  Tensor n(1, 2, {0.0, 1.0});
  const Tensor r = double_stress_trace(mu, n);
  EXPECT_EQ(r({0}), 2.0);
  EXPECT_EQ(r({1}), 0.0);
}

TEST(Boundary, TractionReducesToCauchy) {
  const LameParams lame{1.0, 1.0};
  const Tensor gu(2, 2, {0.1, 0.2, 0.3, 0.4});
  const BoundaryPatch patch{Tensor(1, 2, {0.0, 1.0}), 0.0};
  const Tensor t = traction_static(gu, Tensor(4, 2), patch, lame);
  const Tensor s = cauchy_stress(strain(gu), lame);
  EXPECT_DOUBLE_EQ(t({0}), s({1, 0}));
  EXPECT_DOUBLE_EQ(t({1}), s({1, 1}));
  EXPECT_THROW(traction_static(gu, Tensor(4, 2), BoundaryPatch{Tensor(1, 2, {0.0, 1.0}), 0.5}, lame), Unsupported);
  EXPECT_THROW(traction_static(gu, Tensor(4, 2), BoundaryPatch{Tensor(1, 2, {0.0, 2.0}), 0.0}, lame), InvalidArgument);
}

TEST(Boundary, TractionNormalDerivativeTerm) {
  // One-dimensional check: traction = E u' − ∂μ/∂x with μ = h u''.
  const LameParams lame{0.0, 0.5};
  const Tensor gu(2, 1, {0.3});
  Tensor gmu(4, 1);
  gmu({0, 0, 0, 0}) = 0.25;
  const Tensor t = traction_static(gu, gmu, BoundaryPatch{Tensor(1, 1, {1.0}), 0.0}, lame);
  EXPECT_DOUBLE_EQ(t({0}), 0.3 - 0.25);
}

TEST(Navier, QuadraticField) {
  const LameParams lame{2.0, 3.0};
  FieldJet jet{Tensor(1, 2), Tensor(2, 2), Tensor(3, 2)};
  jet.hess_u({0, 0, 0}) = 2.0;  // u = (x², 0)
  const Tensor r = navier_apply(jet, lame);
  EXPECT_DOUBLE_EQ(r({0}), 2.0 * 3.0 + 2.0 * 5.0);
  EXPECT_DOUBLE_EQ(r({1}), 0.0);
}
