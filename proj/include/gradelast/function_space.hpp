#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <memory>
#include <span>

#include "gradelast/mesh.hpp"

namespace gradelast {

using cplx = std::complex<double>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

enum class Family { LagrangeP1, LagrangeP2, Hermite3 };

const char* to_string(Family f);

/// Value and first two physical derivatives of one scalar basis function.
using Jet1 = std::array<double, 3>;

/// Scalar finite element family on an IntervalMesh, replicated over ncomp
/// components. Global dofs are component-major: dof(c, s) = c * scalar_dofs() + s.
class FunctionSpace {
 public:
  FunctionSpace(IntervalMesh mesh, Family family, int ncomp);

  const IntervalMesh& mesh() const noexcept { return mesh_; }
  Family family() const noexcept { return family_; }
  int ncomp() const noexcept { return ncomp_; }
  int scalar_dofs() const noexcept { return scalar_dofs_; }
  int ndofs() const noexcept { return scalar_dofs_ * ncomp_; }
  /// Local scalar basis functions per element.
  int local() const noexcept { return local_; }
  /// Highest derivative order that is square integrable across elements.
  int conformity() const noexcept { return family_ == Family::Hermite3 ? 2 : 1; }

  int dof(int comp, int scalar) const { return comp * scalar_dofs_ + scalar; }
  /// Scalar dofs of element e in local basis order.
  void element_scalar_dofs(int e, std::span<int> out) const;
  /// Basis jets at local coordinate t of element e (local() entries).
  void eval(int e, double t, std::span<Jet1> out) const;

  /// Scalar dof carrying the value at a mesh vertex.
  int vertex_value(int vertex) const;
  /// Scalar dof carrying the slope at a mesh vertex (Hermite3 only).
  int vertex_slope(int vertex) const;

 private:
  IntervalMesh mesh_;
  Family family_;
  int ncomp_;
  int local_;
  int scalar_dofs_;
};

/// Coefficients over a FunctionSpace.
template <class S>
class DiscreteField {
 public:
  DiscreteField() = default;
  explicit DiscreteField(std::shared_ptr<const FunctionSpace> space)
      : space_(std::move(space)), coeffs_(VecX<S>::Zero(space_->ndofs())) {}
  DiscreteField(std::shared_ptr<const FunctionSpace> space, VecX<S> coeffs);

  const FunctionSpace& space() const { return *space_; }
  const std::shared_ptr<const FunctionSpace>& space_ptr() const { return space_; }
  const VecX<S>& coeffs() const noexcept { return coeffs_; }
  VecX<S>& coeffs() noexcept { return coeffs_; }

  /// d^order/dx^order of component comp at x (elementwise for broken orders).
  S evaluate(double x, int comp, int order = 0) const;
  /// Same on a given element, local coordinate t.
  S evaluate_local(int e, double t, int comp, int order = 0) const;

 private:
  std::shared_ptr<const FunctionSpace> space_;
  VecX<S> coeffs_;
};

extern template class DiscreteField<double>;
extern template class DiscreteField<cplx>;

}  // namespace gradelast
