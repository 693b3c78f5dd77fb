#pragma once

#include <Eigen/SparseCore>
#include <utility>
#include <vector>

#include "gradelast/assembly.hpp"

namespace gradelast {

/// Σ coef · x[dof] = rhs
template <class S>
struct LinearConstraint {
  std::vector<std::pair<int, S>> terms;
  S rhs{};
};

template <class S>
struct SparseSystem {
  SpMat<S> matrix;
  VecX<S> rhs;
  std::vector<std::pair<int, S>> essential;
  std::vector<LinearConstraint<S>> linear;
  /// Optional deflation basis (ndofs x p); columns span the expected nullspace.
  MatX<S> deflation;

  int ndofs() const { return static_cast<int>(matrix.rows()); }
};

/// Appends essential constraints after validating them; contradicting
/// duplicates throw InvalidArgument.
template <class S>
SparseSystem<S> apply_essential(SparseSystem<S> system, const std::vector<std::pair<int, S>>& constraints);

/// x = x0 + T z, with z indexing the free (master) dofs.
template <class S>
struct Reduction {
  SpMat<S> t;
  VecX<S> x0;
  std::vector<int> masters;
};

template <class S>
Reduction<S> reduce_constraints(const SparseSystem<S>& system);

/// Tᴴ A T
template <class S>
SpMat<S> reduced_matrix(const SparseSystem<S>& system, const Reduction<S>& red);

struct SolveInfo {
  double residual = 0.0;  // relative residual of the (bordered) reduced system
  int refinements = 0;
};

template <class S>
VecX<S> solve_linear(const SparseSystem<S>& system, SolveInfo* info = nullptr);

/// Number of singular values of the constrained matrix below tol · σ_max (dense SVD).
template <class S>
int nullspace_dimension(const SparseSystem<S>& system, double tol = 1e-9);

}  // namespace gradelast
