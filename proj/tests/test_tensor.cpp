#include <gtest/gtest.h>

#include <random>

#include "gradelast/errors.hpp"
#include "gradelast/tensor.hpp"

using namespace gradelast;

namespace {

Tensor random_tensor(int rank, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t(rank, dim);
  for (double& v : t.data()) v = u(rng);
  return t;
}

}  // namespace

TEST(Tensor, FlatIndexRoundTrip) {
  Tensor t(4, 3);
  std::array<int, 4> idx{};
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.unflat(f, idx);
    EXPECT_EQ(t.flat(std::span<const int>(idx)), f);
  }
  EXPECT_EQ(t.size(), 81u);
}

TEST(Tensor, RejectsBadShapes) {
  EXPECT_THROW(Tensor(7, 3), InvalidArgument);
  EXPECT_THROW(Tensor(2, 4), InvalidArgument);
  EXPECT_THROW(Tensor(2, 2, std::vector<double>(3)), InvalidArgument);
}

TEST(Permute, PolyadicSlots) {
  const Tensor t = Tensor::basis(3, {0, 1, 2});
  EXPECT_EQ(permute(t, {3, 1, 2}), Tensor::basis(3, {2, 0, 1}));
  EXPECT_EQ(permute(t, {1, 3, 2}), Tensor::basis(3, {0, 2, 1}));
  EXPECT_EQ(permute(t, {3, 2, 1}), Tensor::basis(3, {2, 1, 0}));
}

TEST(Permute, TransposeOfMatrix) {
  Tensor a(2, 2, {1, 2, 3, 4});
  const Tensor at = permute(a, {2, 1});
  EXPECT_EQ(at({0, 1}), 3.0);
  EXPECT_EQ(at({1, 0}), 2.0);
}

TEST(Permute, InverseUndoes) {
  std::mt19937_64 rng(3);
  const Tensor t = random_tensor(5, 2, rng);
  const PermSpec s{2, 5, 1, 4, 3};
  EXPECT_EQ(permute(permute(t, s), s.inverse()), t);
}

TEST(Permute, RejectsNonPermutation) {
  EXPECT_THROW(PermSpec({1, 1, 2}), InvalidArgument);
  Tensor t(2, 2);
  EXPECT_THROW(permute(t, {1, 2, 3}), InvalidArgument);
}

TEST(Multidot, SingleIsMatrixProduct) {
  const Tensor a(2, 2, {1, 2, 3, 4});
  const Tensor b(2, 2, {5, 6, 7, 8});
  const Tensor c = multidot(a, b, 1);
  EXPECT_EQ(c({0, 0}), 19.0);
  EXPECT_EQ(c({0, 1}), 22.0);
  EXPECT_EQ(c({1, 0}), 43.0);
  EXPECT_EQ(c({1, 1}), 50.0);
}

TEST(Multidot, DoubleUsesNearestIndices) {
  const Tensor a(2, 2, {1, 2, 3, 4});
  const Tensor b(2, 2, {5, 6, 7, 8});
  // a_ij b_ji = tr(ab)
  EXPECT_EQ(scalar(multidot(a, b, 2)), 69.0);
}

TEST(Multidot, TripleAgainstLoops) {
  std::mt19937_64 rng(5);
  const Tensor a = random_tensor(5, 3, rng);
  const Tensor b = random_tensor(3, 3, rng);
  const Tensor c = multidot(a, b, 3);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      double ref = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) ref += a({p, q, i, j, k}) * b({k, j, i});
      EXPECT_NEAR(c({p, q}), ref, 1e-14);
    }
}

TEST(Multidot, RejectsMismatch) {
  EXPECT_THROW(multidot(Tensor(2, 2), Tensor(2, 3), 1), InvalidArgument);
  EXPECT_THROW(multidot(Tensor(2, 2), Tensor(1, 2), 2), InvalidArgument);
}

TEST(Multidot, FullContractionIsBilinear) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor a = random_tensor(3, 3, rng), b = random_tensor(3, 3, rng), c = random_tensor(3, 3, rng);
    const double lhs = scalar(multidot(a + 2.0 * b, c, 3));
    const double rhs = scalar(multidot(a, c, 3)) + 2.0 * scalar(multidot(b, c, 3));
    EXPECT_NEAR(lhs, rhs, 1e-13);
  }
}

TEST(SymTriadic, CountAndMultiplicity) {
  EXPECT_EQ(SymTriadic::count(1), 1);
  EXPECT_EQ(SymTriadic::count(2), 6);
  EXPECT_EQ(SymTriadic::count(3), 18);
  int total = 0;
  for (int m = 0; m < SymTriadic::count(3); ++m) total += SymTriadic::multiplicity(3, m);
  EXPECT_EQ(total, 27);
}

TEST(SymTriadic, ExpandIsSymmetric) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTriadic s(3);
  for (double& v : s.reduced()) v = u(rng);
  const Tensor t = s.expand();
  EXPECT_EQ(t, permute(t, {1, 3, 2}));
  const SymTriadic back = sym_last_two(t);
  for (int m = 0; m < SymTriadic::count(3); ++m) EXPECT_DOUBLE_EQ(back.reduced()[m], s.reduced()[m]);
}

TEST(Tensor, IdentityContractsToTrace) {
  EXPECT_EQ(scalar(multidot(Tensor::identity(3), Tensor::identity(3), 2)), 3.0);
  EXPECT_DOUBLE_EQ(frobenius(Tensor::identity(2)), std::sqrt(2.0));
}
