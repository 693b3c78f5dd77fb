#pragma once

// Augmented second-order system in (u, ν) with ν standing for ∇e(u):
// Φ = W_el(v,u) − s∫η⋮H⋮ν − X(v,ν) − s X(u,η), s = −1 for A₋, +1 for A₊.

#include <memory>

#include "gradelast/assembly.hpp"
#include "gradelast/linear_system.hpp"
#include "gradelast/oracle.hpp"

namespace gradelast {

enum class BoundarySet { Set1, Set2 };

const char* to_string(BoundarySet b);

struct MixedOptions {
  int sign = -1;
  BoundarySet boundary = BoundarySet::Set1;
  Family family = Family::LagrangeP2;  // line discretizations
  int degree = 2;                       // rectangle discretizations
};

/// Assembled mixed system on an interval (dim 1) or a strip mode (dim 2, complex).
template <class S>
struct MixedSystem {
  std::shared_ptr<const LineDiscretization> disc;
  SparseSystem<S> system;
  LameParams lame;
  HexadicH h;
  MixedOptions options;
  double k = 0.0;
};

template <class S>
struct MixedState {
  std::shared_ptr<const LineDiscretization> disc;
  VecX<S> x;
  double k = 0.0;

  DiscreteField<S> u() const;
  DiscreteField<S> nu() const;
};

/// Interval [0, L]: f is the axial load.
MixedSystem<double> assemble_mixed(const IntervalMesh& mesh, const LameParams& lame, const GradientParams& params,
                                   const MixedOptions& options, const std::function<double(double)>& f);

/// Strip mode k with in-plane load coefficients f(y) (two components). Set1 only.
MixedSystem<cplx> assemble_mixed_mode(const IntervalMesh& mesh, double k, const LameParams& lame,
                                      const GradientParams& params, const MixedOptions& options,
                                      const std::function<std::array<cplx, 2>(double)>& f);

/// Solves A₋; A₊ is rejected. With a = 0 only the displacement block is solved.
template <class S>
MixedState<S> solve_mixed(const MixedSystem<S>& mixed, SolveInfo* info = nullptr);

/// ‖ν − 𝒟ᵀ·u‖_{L²} (broken second derivatives of u per element).
template <class S>
double constraint_residual(const MixedState<S>& state);

/// W_el(u,u) + ∫ν⋮H⋮ν
template <class S>
double energy(const MixedState<S>& state, const LameParams& lame, const HexadicH& h);

/// Smallest generalized eigenvalue of the symmetric part of the constrained
/// matrix against the (‖u‖²_{H¹} + ‖ν‖²_{L²}) Gram matrix (dense).
double smallest_ritz_value(const MixedSystem<double>& mixed);

/// Gram matrix of ‖u‖²_{H¹} + ‖ν‖²_{L²} on the interval discretization.
SpMat<double> mixed_gram(const LineDiscretization& disc);

/// Strip solve of Problem I through the mixed system, mode by mode.
struct StripMixedResult {
  StripField u;
  double constraint_residual = 0.0;  // strip L² norm over all modes
};
StripMixedResult solve_strip_mixed(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid,
                                   Family family = Family::LagrangeP2);

/// Rectangle [0,Lx]x[0,Ly] with Q1/Q2 spaces, any boundary set. f gives the in-plane load.
struct RectMixedSystem {
  std::shared_ptr<const RectDiscretization> disc;
  SparseSystem<double> system;
  MixedOptions options;
};

RectMixedSystem assemble_mixed_rect(const RectangleMesh& mesh, const LameParams& lame, const GradientParams& params,
                                    const MixedOptions& options,
                                    const std::function<std::array<double, 2>(double, double)>& f);
VecX<double> solve_mixed_rect(const RectMixedSystem& mixed, SolveInfo* info = nullptr);
/// Dimension of the nullspace of the constrained homogeneous problem.
int mixed_nullspace_dimension(const RectMixedSystem& mixed);
int mixed_nullspace_dimension(const MixedSystem<double>& mixed);

}  // namespace gradelast
