#pragma once

// Constitutive objects of Mindlin Form II gradient elasticity: strain, Cauchy
// stress, double stress (explicit five-parameter form and the condensed
// hexadic form), static traction and the double-stress boundary trace.

#include <array>
#include <cstdint>
#include <optional>

#include "gradelast/tensor.hpp"

namespace gradelast {

struct LameParams {
  double lambda = 1.0;
  double mu = 1.0;

  /// Throws InvalidArgument unless mu > 0 and 3 lambda + 2 mu > 0.
  void validate() const;
  double p_modulus() const noexcept { return lambda + 2.0 * mu; }
};

struct GradientParams {
  std::array<double, 5> a{};  // a1..a5

  /// Strict: every a_i >= 0 and finite.
  void validate() const;
  bool all_zero() const noexcept;
  /// Smallest nonzero a_i (0 if all vanish).
  double min_nonzero() const noexcept;
  /// Modulus h with mu_111 = h u'' in one dimension.
  double one_d_modulus() const noexcept;
};

/// Parameters reproducing (1 - g^2 Δ) Δ* for the simple model xi1 = xi2 = g:
/// the gradient energy is g^2 (λ/2 |∇ tr e|^2 + μ |∇e|^2).
GradientParams simple_gradient_params(double g, const LameParams& lame);

/// One-dimensional parameters with one_d_modulus() == modulus * g^2.
GradientParams one_d_gradient_params(double g, double modulus);

/// Point values of u, ∇u and ∇∇u with (∇u)_ij = ∂_i u_j, (∇∇u)_ijk = ∂_i ∂_j u_k.
struct FieldJet {
  Tensor u;
  Tensor grad_u;
  Tensor hess_u;
};

/// Flat boundary patch. Curved patches are rejected by the traction routine.
struct BoundaryPatch {
  Tensor normal;
  double curvature = 0.0;
};

Tensor strain(const Tensor& grad_u);
Tensor cauchy_stress(const Tensor& strain, const LameParams& lame);

/// Term-by-term five-parameter double stress from ∇∇u.
Tensor double_stress_direct(const Tensor& hess_u, const GradientParams& params);

/// Rank-6 constitutive polyadic with μ̃ = H ⋮ ∇ẽ.
class HexadicH {
 public:
  HexadicH() = default;

  /// Wraps raw components without any symmetry enforcement (fault injection, tests).
  static HexadicH from_components(const GradientParams& params, Tensor components);

  const Tensor& tensor() const noexcept { return h_; }
  const GradientParams& params() const noexcept { return params_; }
  int dim() const noexcept { return h_.dim(); }
  std::optional<double> cached_coercivity() const noexcept { return coercivity_; }

  /// H ⋮ nu; nu is any rank-3 tensor, only its last-two-symmetric part acts.
  Tensor apply(const Tensor& nu) const { return multidot(h_, nu, 3); }
  Tensor apply(const SymTriadic& nu) const { return apply(nu.expand()); }
  /// eta^{321} ⋮ H ⋮ nu
  double bilinear(const Tensor& eta, const Tensor& nu) const;

  /// Reduced quadratic-form matrix on the symmetric-triadic subspace in an
  /// orthonormal basis (count(d) x count(d), row-major).
  std::vector<double> reduced_form() const;
  /// Smallest eigenvalue of reduced_form().
  double smallest_eigenvalue() const;

 private:
  friend HexadicH build_H(const GradientParams& params, int dim);
  Tensor h_;
  GradientParams params_;
  std::optional<double> coercivity_;
};

HexadicH build_H(const GradientParams& params, int dim);

/// Checks the three index symmetries of H; returns the largest componentwise violation.
double symmetry_defect(const HexadicH& h);

/// Smallest eigenvalue c_a of the form on symmetric triadics, verified by
/// sampling. Throws InvalidArgument if a4 = a5 = 0 and CoercivityFailure if c_a <= 0.
double coercivity_certificate(const HexadicH& h, std::uint64_t seed = 1, int samples = 10000);

/// Static traction on a flat patch:
/// n·τ − n n : ∂μ/∂n − n·(∇_S·μ) − n·(∇_S·μ^{213}).
/// grad_mu(l,i,j,k) = ∂_l μ_ijk.
Tensor traction_static(const Tensor& grad_u, const Tensor& grad_mu, const BoundaryPatch& patch,
                       const LameParams& lame);

/// ∂_l μ_ijk from third derivatives d3u(l,i,j,k) = ∂_l ∂_i ∂_j u_k.
Tensor double_stress_gradient(const Tensor& d3u, const HexadicH& h);

/// R̃ = n̂·μ̃·n̂
Tensor double_stress_trace(const Tensor& mu, const Tensor& normal);

/// Δ*·u = μ Δu + (λ+μ) ∇∇·u
Tensor navier_apply(const FieldJet& jet, const LameParams& lame);

}  // namespace gradelast
