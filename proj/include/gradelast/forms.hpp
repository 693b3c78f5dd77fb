#pragma once

// Pointwise bilinear densities over "model jets". A field block of order 1
// carries [v, ∂_1..∂_d] per component; order 2 appends ∂_ij for i <= j.
// A kernel C pairs test jets (rows) with trial jets (columns).

#include <Eigen/Core>
#include <array>
#include <complex>
#include <vector>

#include "gradelast/constitutive.hpp"
#include "gradelast/function_space.hpp"

namespace gradelast {

struct FieldBlock {
  int ncomp = 1;
  int order = 1;
};

class JetLayout {
 public:
  JetLayout(int dim, std::vector<FieldBlock> blocks);

  int dim() const noexcept { return dim_; }
  int blocks() const noexcept { return static_cast<int>(blocks_.size()); }
  const FieldBlock& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  int jet_size(int order) const;
  int total() const noexcept { return total_; }

  int offset(int b, int comp) const;
  int value(int b, int comp) const { return offset(b, comp); }
  int first(int b, int comp, int i) const { return offset(b, comp) + 1 + i; }
  int second(int b, int comp, int i, int j) const;

  /// Highest derivative order a kernel reads from block b (-1 if unused).
  int derivative_use(const Eigen::MatrixXd& kernel, int b) const;

 private:
  int dim_;
  std::vector<FieldBlock> blocks_;
  std::vector<int> offsets_;
  int total_ = 0;
};

using Kernel = Eigen::MatrixXd;

Kernel zero_kernel(const JetLayout& layout);

/// τ(u) : e(v) on block bu.
void add_elastic(Kernel& c, const JetLayout& layout, int bu, const LameParams& lame, double scale = 1.0);
/// ∇e(v)^{321} ⋮ H ⋮ ∇e(u) on block bu (order 2).
void add_fourth(Kernel& c, const JetLayout& layout, int bu, const HexadicH& h, double scale = 1.0);
/// scale · Σ v_c u_c on block b.
void add_mass(Kernel& c, const JetLayout& layout, int b, double scale = 1.0);
/// scale · Σ ∇v_c · ∇u_c on block b.
void add_laplace(Kernel& c, const JetLayout& layout, int b, double scale = 1.0);

/// Reduced form Q[m][m'] = unit_m^{321} ⋮ H ⋮ unit_m'.
Eigen::MatrixXd triadic_form(const HexadicH& h);
/// Columns μ(unit_m) flattened (d^3 x count(d)).
Eigen::MatrixXd triadic_stress(const HexadicH& h);

/// Mixed density for A₊ (sign = +1) or A₋ (sign = -1), block bu = u, bn = ν:
/// W_el(v,u) - sign ∫η⋮H⋮ν - X(v,ν) - sign X(u,η),
/// X(w,ν) = Σ ∂_i μ_ijk(ν) ∂_j w_k.
void add_mixed(Kernel& c, const JetLayout& layout, int bu, int bn, const LameParams& lame, const HexadicH& h,
               int sign);
/// Flat-boundary density of the same form for a boundary with outward normal n:
/// X carries -∫_S n_i μ_ijk (∇_S)_j w_k.
void add_mixed_surface(Kernel& c, const JetLayout& layout, int bu, int bn, const HexadicH& h, int sign,
                       const std::array<double, 3>& normal);

/// Model jet of a 1D basis function in an interval layout (dim 1).
void interval_jet(int order, const Jet1& j, std::span<double> out);
/// Model jet of a transverse basis function times exp(ikx) on the strip (dim 2, x tangential).
void strip_jet(int order, double k, const Jet1& j, std::span<std::complex<double>> out);

}  // namespace gradelast
