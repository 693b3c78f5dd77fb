#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "gradelast/assembly.hpp"
#include "gradelast/errors.hpp"
#include "gradelast/linear_system.hpp"
#include "gradelast/norms.hpp"
#include "gradelast/parallel.hpp"
#include "gradelast/quadrature.hpp"

using namespace gradelast;

namespace {

std::shared_ptr<const FunctionSpace> space(int n, Family f, int ncomp = 1, double length = 1.0) {
  return std::make_shared<const FunctionSpace>(IntervalMesh(length, n), f, ncomp);
}

// Hermite interpolant of p(x) = x³ − x.
DiscreteField<double> hermite_cubic(int n) {
  const auto sp = space(n, Family::Hermite3);
  DiscreteField<double> u(sp);
  for (int v = 0; v <= n; ++v) {
    const double x = sp->mesh().node(v);
    u.coeffs()[sp->vertex_value(v)] = x * x * x - x;
    u.coeffs()[sp->vertex_slope(v)] = 3 * x * x - 1;
  }
  return u;
}

SpMat<double> dense_sparse(const Eigen::MatrixXd& m) { return m.sparseView(); }

}  // namespace

TEST(Quadrature, ExactToDegree) {
  for (int n = 1; n <= 6; ++n) {
    const GaussRule& r = gauss_rule(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (std::size_t q = 0; q < r.points.size(); ++q) s += r.weights[q] * std::pow(r.points[q], deg);
      EXPECT_NEAR(s, 1.0 / (deg + 1), 1e-14) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(Mesh, LocateAndValidate) {
  const IntervalMesh m(2.0, 4);
  double t = 0.0;
  EXPECT_EQ(m.locate(0.75, t), 1);
  EXPECT_DOUBLE_EQ(t, 0.5);
  EXPECT_EQ(m.locate(2.0, t), 3);
  EXPECT_DOUBLE_EQ(t, 1.0);
  EXPECT_THROW(IntervalMesh(1.0, 1), InvalidArgument);
  EXPECT_THROW(IntervalMesh(-1.0, 4), InvalidArgument);
  EXPECT_THROW((StripGrid{0, 16}.validate()), InvalidArgument);
  EXPECT_THROW((StripGrid{4, 4}.validate()), InvalidArgument);
}

TEST(FunctionSpaceTest, HermiteReproducesCubics) {
  const auto u = hermite_cubic(5);
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    EXPECT_NEAR(u.evaluate(x, 0, 0), x * x * x - x, 1e-14);
    EXPECT_NEAR(u.evaluate(x, 0, 1), 3 * x * x - 1, 1e-13);
    EXPECT_NEAR(u.evaluate(x, 0, 2), 6 * x, 1e-11);
  }
  EXPECT_THROW(space(4, Family::LagrangeP2)->vertex_slope(0), InvalidArgument);
}

TEST(Assembly, LaplaceP1Stiffness) {
  const LineDiscretization disc(JetLayout(1, {{1, 1}}), {space(2, Family::LagrangeP1)});
  Kernel c = zero_kernel(disc.layout());
  add_laplace(c, disc.layout(), 0);
  const Eigen::MatrixXd a = Eigen::MatrixXd(disc.assemble(c));
  Eigen::MatrixXd ref(3, 3);
  ref << 2, -2, 0, -2, 4, -2, 0, -2, 2;
  EXPECT_LE((a - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Assembly, MassPartitionOfUnity) {
  for (Family f : {Family::LagrangeP1, Family::LagrangeP2}) {
    const LineDiscretization disc(JetLayout(1, {{1, 1}}), {space(7, f, 1, 3.0)});
    Kernel c = zero_kernel(disc.layout());
    add_mass(c, disc.layout(), 0);
    EXPECT_NEAR(Eigen::MatrixXd(disc.assemble(c)).sum(), 3.0, 1e-13);
  }
}

TEST(Assembly, FourthOrderEnergyOfQuadratic) {
  const double modulus = 0.3;
  const auto sp = space(4, Family::Hermite3);
  const LineDiscretization disc(JetLayout(1, {{1, 2}}), {sp});
  Kernel c = zero_kernel(disc.layout());
  add_fourth(c, disc.layout(), 0, build_H(one_d_gradient_params(1.0, modulus), 1));
  Eigen::VectorXd x(sp->ndofs());
  for (int v = 0; v <= 4; ++v) {
    const double p = sp->mesh().node(v);
    x[sp->vertex_value(v)] = p * p;
    x[sp->vertex_slope(v)] = 2 * p;
  }
  EXPECT_NEAR(x.dot(disc.assemble(c) * x), 4.0 * modulus, 1e-12);
}

TEST(Assembly, MirrorIsBitwiseSymmetric) {
  const LineDiscretization disc(JetLayout(1, {{1, 2}}), {space(6, Family::Hermite3)});
  Kernel c = zero_kernel(disc.layout());
  add_laplace(c, disc.layout(), 0);
  add_fourth(c, disc.layout(), 0, build_H(one_d_gradient_params(0.1, 1.0), 1));
  const Eigen::MatrixXd a = Eigen::MatrixXd(disc.assemble(c, true));
  EXPECT_EQ((a - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assembly, RejectsNonConformingForm) {
  const LineDiscretization disc(JetLayout(1, {{1, 2}}), {space(4, Family::LagrangeP2)});
  Kernel c = zero_kernel(disc.layout());
  add_fourth(c, disc.layout(), 0, build_H(one_d_gradient_params(0.1, 1.0), 1));
  EXPECT_THROW(disc.check_conformity(c), InvalidArgument);
}

TEST(Assembly, StripJetOfPlaneWave) {
  std::array<cplx, 6> out{};
  strip_jet(2, 3.0, Jet1{2.0, 5.0, 7.0}, out);
  EXPECT_EQ(out[0], cplx(2.0));
  EXPECT_EQ(out[1], cplx(0.0, 6.0));
  EXPECT_EQ(out[2], cplx(5.0));
  EXPECT_EQ(out[3], cplx(-18.0));
  EXPECT_EQ(out[4], cplx(0.0, 15.0));
  EXPECT_EQ(out[5], cplx(7.0));
}

TEST(LinearSystem, EssentialAndLinearConstraints) {
  // -u'' = 0 stencil on 4 unknowns with u0 = 1 and u3 - u2 = 0.
  Eigen::MatrixXd a(4, 4);
  a << 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2;
  SparseSystem<double> s{dense_sparse(a), Eigen::VectorXd::Zero(4), {}, {}, {}};
  s = apply_essential(s, {{0, 1.0}});
  s.linear.push_back({{{3, 1.0}, {2, -1.0}}, 0.0});
  SolveInfo info;
  const Eigen::VectorXd x = solve_linear(s, &info);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_NEAR(x[3] - x[2], 0.0, 1e-14);
  EXPECT_LE(info.residual, 1e-14);
  EXPECT_THROW(apply_essential(s, {{0, 2.0}}), InvalidArgument);
  EXPECT_THROW(apply_essential(s, {{9, 0.0}}), InvalidArgument);
}

TEST(LinearSystem, DeflationAndFredholm) {
  // Neumann Laplacian: nullspace spanned by constants.
  Eigen::MatrixXd a(3, 3);
  a << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  SparseSystem<double> s{dense_sparse(a), Eigen::Vector3d(1, 0, -1), {}, {}, Eigen::MatrixXd::Ones(3, 1)};
  EXPECT_EQ(nullspace_dimension(s), 1);
  const Eigen::VectorXd x = solve_linear(s);
  EXPECT_LE((a * x - s.rhs).norm(), 1e-14);
  EXPECT_NEAR(x.sum(), 0.0, 1e-14);
  s.rhs = Eigen::Vector3d(1, 0, 0);
  EXPECT_THROW(solve_linear(s), FredholmIncompatible);
  s.deflation.resize(0, 0);
  s.rhs = Eigen::Vector3d(1, 0, -1);
  EXPECT_THROW(solve_linear(s), SingularSystem);
}

TEST(LinearSystem, ComplexSystem) {
  Eigen::MatrixXcd a(2, 2);
  a << cplx(2, 1), cplx(0, 1), cplx(0, -1), cplx(3, 0);
  SparseSystem<cplx> s{a.sparseView(), Eigen::Vector2cd(cplx(1, 0), cplx(0, 1)), {}, {}, {}};
  const Eigen::VectorXcd x = solve_linear(s);
  EXPECT_LE((a * x - s.rhs).norm(), 1e-14);
}

TEST(Norms, IntervalNormOfInterpolant) {
  const auto u = hermite_cubic(8);
  const ExactFn exact = [](double x) { return Jet1{x * x * x - x, 3 * x * x - 1, 6 * x}; };
  for (int t = 0; t <= 2; ++t) EXPECT_LE(interval_norm(u, 0, t, exact), 1e-11);
  // ∫(x³ − x)² = 8/105, ∫(3x² − 1)² = 4/5, ∫36x² = 12
  EXPECT_NEAR(interval_norm(u, 0, 0), std::sqrt(8.0 / 105.0), 1e-13);
  EXPECT_NEAR(interval_norm(u, 0, 1, {}, true), std::sqrt(0.8), 1e-13);
  EXPECT_NEAR(interval_norm(u, 0, 2), std::sqrt(8.0 / 105.0 + 0.8 + 12.0), 1e-12);
}

TEST(Norms, StripModeWeights) {
  const auto sp = space(8, Family::Hermite3, 2);
  DiscreteField<cplx> mode(sp);
  for (int v = 0; v <= 8; ++v) mode.coeffs()[sp->dof(0, sp->vertex_value(v))] = 1.0;
  StripField f{StripGrid{2, 8}, {{1, mode}}};
  EXPECT_NEAR(strip_norm(f, nullptr, 0), std::sqrt(4.0 * M_PI), 1e-12);
  EXPECT_NEAR(strip_norm(f, nullptr, 1), std::sqrt(8.0 * M_PI), 1e-12);
  EXPECT_NEAR(f.evaluate(0.3, 0.4, 0), 2.0 * std::cos(0.3), 1e-14);
  EXPECT_EQ(strip_norm(f, &f, 2), 0.0);
}

TEST(Parallel, EveryIndexOnceAndErrorsPropagate) {
  set_thread_count(3);
  std::vector<int> hits(100, 0);
  parallel_for(100, [&](int i) { hits[i] += 1; });
  EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 100);
  EXPECT_THROW(parallel_for(10, [](int i) {
                 if (i == 7) throw SingularSystem("boom");
               }),
               SingularSystem);
  set_thread_count(1);
  EXPECT_EQ(thread_count(), 1);
}
