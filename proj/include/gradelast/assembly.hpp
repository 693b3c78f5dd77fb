#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <vector>

#include "gradelast/forms.hpp"
#include "gradelast/function_space.hpp"
#include "gradelast/mesh.hpp"

namespace gradelast {

template <class S>
using SpMat = Eigen::SparseMatrix<S>;

template <class S>
struct QuadPoint {
  double weight = 0.0;
  std::array<double, 2> x{};
  MatX<S> jets;  // local basis x layout.total()
};

template <class S>
struct ElementBatch {
  std::vector<int> dofs;
  std::vector<QuadPoint<S>> points;
};

template <class S>
using ElementFn = std::function<void(int, ElementBatch<S>&)>;

/// Writes the layout-sized jet coefficients of the load at a point.
template <class S>
using LoadFn = std::function<void(const std::array<double, 2>&, std::span<S>)>;

/// Galerkin matrix A_ij = Σ_q w conj(B_q,i) C B_q,j. With mirror the upper
/// triangle is assembled and copied, so the result is bitwise symmetric.
template <class S>
SpMat<S> assemble_matrix(int ndofs, int elements, const ElementFn<S>& element, const Kernel& kernel,
                         bool mirror = false);

template <class S>
VecX<S> assemble_vector(int ndofs, int elements, const ElementFn<S>& element, const LoadFn<S>& load);

/// One space per layout block on a common interval mesh. dim 1 layouts give
/// real interval jets, dim 2 layouts give strip-mode jets for frequency k.
class LineDiscretization {
 public:
  LineDiscretization(JetLayout layout, std::vector<std::shared_ptr<const FunctionSpace>> spaces, int quad = 5);

  const JetLayout& layout() const noexcept { return layout_; }
  const FunctionSpace& space(int b) const { return *spaces_[static_cast<std::size_t>(b)]; }
  const std::shared_ptr<const FunctionSpace>& space_ptr(int b) const { return spaces_[static_cast<std::size_t>(b)]; }
  int block_offset(int b) const { return offsets_[static_cast<std::size_t>(b)]; }
  int ndofs() const noexcept { return ndofs_; }
  int elements() const noexcept { return spaces_.front()->mesh().elements(); }

  /// Throws InvalidArgument when the kernel reads derivatives a space cannot supply.
  void check_conformity(const Kernel& kernel) const;

  ElementFn<double> interval_elements() const;
  ElementFn<cplx> strip_elements(double k) const;

  SpMat<double> assemble(const Kernel& kernel, bool mirror = false) const;
  SpMat<cplx> assemble_strip(const Kernel& kernel, double k, bool mirror = false) const;

 private:
  template <class S, class JetFn>
  void fill(int e, ElementBatch<S>& batch, JetFn jet) const;

  JetLayout layout_;
  std::vector<std::shared_ptr<const FunctionSpace>> spaces_;
  std::vector<int> offsets_;
  int ndofs_ = 0;
  int quad_;
};

/// Tensor-product Lagrange space (degree 1 or 2) on a RectangleMesh.
class RectSpace {
 public:
  RectSpace(RectangleMesh mesh, int degree, int ncomp);

  const RectangleMesh& mesh() const noexcept { return mesh_; }
  int degree() const noexcept { return degree_; }
  int ncomp() const noexcept { return ncomp_; }
  int nodes_x() const noexcept { return degree_ * mesh_.nx + 1; }
  int nodes_y() const noexcept { return degree_ * mesh_.ny + 1; }
  int nodes() const noexcept { return nodes_x() * nodes_y(); }
  int ndofs() const noexcept { return nodes() * ncomp_; }
  int node(int ix, int iy) const { return iy * nodes_x() + ix; }
  int dof(int comp, int node) const { return comp * nodes() + node; }
  std::array<double, 2> coordinate(int node) const;

  /// 1D Lagrange basis on [0,1] with equispaced nodes: values and first derivatives.
  void basis_1d(double t, std::span<double> v, std::span<double> dv) const;

 private:
  RectangleMesh mesh_;
  int degree_;
  int ncomp_;
};

/// Rectangle counterpart of LineDiscretization (dim 2 layouts with order-1 blocks).
class RectDiscretization {
 public:
  enum class Side { Left, Right, Bottom, Top };

  RectDiscretization(JetLayout layout, std::vector<std::shared_ptr<const RectSpace>> spaces, int quad = 4);

  const JetLayout& layout() const noexcept { return layout_; }
  const RectSpace& space(int b) const { return *spaces_[static_cast<std::size_t>(b)]; }
  int block_offset(int b) const { return offsets_[static_cast<std::size_t>(b)]; }
  int ndofs() const noexcept { return ndofs_; }
  int elements() const noexcept { return spaces_.front()->mesh().nx * spaces_.front()->mesh().ny; }
  int side_elements(Side s) const;
  static std::array<double, 3> normal(Side s);

  ElementFn<double> volume_elements() const;
  ElementFn<double> side_elements_fn(Side s) const;

 private:
  void fill(int ex, int ey, const std::vector<std::array<double, 3>>& pts, ElementBatch<double>& batch) const;

  JetLayout layout_;
  std::vector<std::shared_ptr<const RectSpace>> spaces_;
  std::vector<int> offsets_;
  int ndofs_ = 0;
  int quad_;
};

}  // namespace gradelast
