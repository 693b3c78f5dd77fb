#pragma once

// Per-mode Green/Poisson operators on the periodic strip [0,2π) x [0,1] and
// the two-stage solution of the second-order problem with the nonlocal
// boundary condition γ0 w + T0 w = 0.

#include <Eigen/SparseLU>
#include <memory>

#include "gradelast/assembly.hpp"
#include "gradelast/linear_system.hpp"
#include "gradelast/oracle.hpp"
#include "gradelast/report.hpp"

namespace gradelast {

/// Edge rows are ordered (edge y=0: j=0,1), (edge y=1: j=0,1).
struct BoundarySymbol {
  int k = 0;
  MatX<cplx> matrix;       // 4 x (w dofs)
  Eigen::Matrix2d normalization = Eigen::Matrix2d::Zero();  // N with γ2R0(0) = -N γ0

  /// Max absolute row sum (∞-norm over nodal profile values).
  double norm() const;
};

/// Transverse operators of one tangential mode: Green operator R0 of −Δ*_k with
/// Dirichlet edges (displacements in Hermite3, data in P2) and its Poisson operator K0.
class ModeBVP {
 public:
  ModeBVP(const StripGrid& grid, int k, const LameParams& lame, const HexadicH& h);

  int k() const noexcept { return k_; }
  const std::shared_ptr<const FunctionSpace>& u_space() const { return u_space_; }
  const std::shared_ptr<const FunctionSpace>& w_space() const { return w_space_; }

  /// R0 applied to a P2 profile.
  DiscreteField<cplx> green(const DiscreteField<cplx>& w) const;
  /// R0 applied to a load given pointwise.
  DiscreteField<cplx> green(const std::function<std::array<cplx, 2>(double)>& chi) const;
  /// K0: homogeneous solution with edge values phi = (u0(0), u0(1), u1(0), u1(1)).
  DiscreteField<cplx> poisson(const std::array<cplx, 4>& phi) const;
  /// Green + Poisson in one solve.
  DiscreteField<cplx> solve(const std::function<std::array<cplx, 2>(double)>& chi, const std::array<cplx, 4>& phi) const;

  /// Edge slopes of R0 w as rows over w dofs (rows ordered like BoundarySymbol).
  const MatX<cplx>& slope_rows() const { return slope_rows_; }
  /// γ0 on the P2 profile.
  MatX<cplx> gamma0() const;
  BoundarySymbol gamma2_r0() const;
  /// T0(k) = -N⁻¹ γ2R0(k) − γ0
  BoundarySymbol t0() const;

  /// Edge coefficient matrices: R_j = Σ_c alpha_jc u_c'' + beta_jc ik u_c' on u = 0.
  const Eigen::Matrix2d& alpha() const { return alpha_; }
  const Eigen::Matrix2d& beta() const { return beta_; }

 private:
  VecX<cplx> solve_reduced(const VecX<cplx>& rhs, const VecX<cplx>& x0) const;

  int k_;
  LameParams lame_;
  HexadicH h_;
  std::shared_ptr<const FunctionSpace> u_space_, w_space_;
  std::shared_ptr<const LineDiscretization> u_disc_, coupled_disc_;
  SparseSystem<cplx> navier_;
  Reduction<cplx> red_;
  SpMat<cplx> reduced_;
  SpMat<cplx> coupling_;  // Hermite test x P2 trial mass
  std::shared_ptr<Eigen::SparseLU<SpMat<cplx>, Eigen::COLAMDOrdering<int>>> lu_;
  MatX<cplx> slope_rows_;
  Eigen::Matrix2d alpha_ = Eigen::Matrix2d::Zero(), beta_ = Eigen::Matrix2d::Zero();
};

DiscreteField<cplx> green_mode(const StripGrid& grid, int k, const LameParams& lame,
                               const std::function<std::array<cplx, 2>(double)>& chi);
DiscreteField<cplx> poisson_mode(const StripGrid& grid, int k, const LameParams& lame, const std::array<cplx, 4>& phi);
BoundarySymbol boundary_symbol_gamma2R0(const StripGrid& grid, int k, const LameParams& lame,
                                        const GradientParams& params);
BoundarySymbol t0_mode(const StripGrid& grid, int k, const LameParams& lame, const GradientParams& params);

/// Edge values R_j = n n : H ⋮ ∇∇u of a Hermite3 mode profile u (no PDE substitution).
std::array<cplx, 4> raw_gamma2(const DiscreteField<cplx>& u, int k, const HexadicH& h);

struct ProblemIIIResult {
  StripField w;
  StripField u;
};

/// (−Δ + s²) w = s² f with γ0 w + T0 w = 0, then u_g = R0 w; s = 1/g.
ProblemIIIResult solve_problem_III(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid);

/// Rows (g, ‖u_g − u‖_t) for t = 0, 1, 2 against the classical strip solution,
/// with fitted slopes; targets 1.4 (t = 1) and 0.45 (t = 2).
ConvergenceReport convergence_study(const StripLoad& f, const std::vector<double>& g_list, const LameParams& lame,
                                    const StripGrid& grid, const std::string& case_id = "strip-rates");

/// Largest g in (0, g_max] for which every per-mode Problem III solve succeeds (bisection).
double probe_largest_g(const StripLoad& f, const LameParams& lame, const StripGrid& grid, double g_max,
                       int steps = 20);

}  // namespace gradelast
