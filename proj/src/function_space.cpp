#include "gradelast/function_space.hpp"

#include "gradelast/errors.hpp"

namespace gradelast {

const char* to_string(Family f) {
  switch (f) {
    case Family::LagrangeP1: return "P1";
    case Family::LagrangeP2: return "P2";
    case Family::Hermite3: return "Hermite3";
  }
  return "?";
}

FunctionSpace::FunctionSpace(IntervalMesh mesh, Family family, int ncomp)
    : mesh_(std::move(mesh)), family_(family), ncomp_(ncomp) {
  if (ncomp < 1) throw InvalidArgument("function space needs at least one component");
  const int n = mesh_.elements();
  switch (family_) {
    case Family::LagrangeP1:
      local_ = 2;
      scalar_dofs_ = n + 1;
      break;
    case Family::LagrangeP2:
      local_ = 3;
      scalar_dofs_ = 2 * n + 1;
      break;
    case Family::Hermite3:
      local_ = 4;
      scalar_dofs_ = 2 * (n + 1);
      break;
  }
}

void FunctionSpace::element_scalar_dofs(int e, std::span<int> out) const {
  switch (family_) {
    case Family::LagrangeP1:
      out[0] = e;
      out[1] = e + 1;
      break;
    case Family::LagrangeP2:
      out[0] = 2 * e;
      out[1] = 2 * e + 1;
      out[2] = 2 * e + 2;
      break;
    case Family::Hermite3:
      out[0] = 2 * e;
      out[1] = 2 * e + 1;
      out[2] = 2 * e + 2;
      out[3] = 2 * e + 3;
      break;
  }
}

void FunctionSpace::eval(int, double t, std::span<Jet1> out) const {
  const double h = mesh_.h();
  const double ih = 1.0 / h, ih2 = ih * ih;
  switch (family_) {
    case Family::LagrangeP1:
      out[0] = {1.0 - t, -ih, 0.0};
      out[1] = {t, ih, 0.0};
      break;
    case Family::LagrangeP2:
      out[0] = {(1.0 - t) * (1.0 - 2.0 * t), (4.0 * t - 3.0) * ih, 4.0 * ih2};
      out[1] = {4.0 * t * (1.0 - t), (4.0 - 8.0 * t) * ih, -8.0 * ih2};
      out[2] = {t * (2.0 * t - 1.0), (4.0 * t - 1.0) * ih, 4.0 * ih2};
      break;
    case Family::Hermite3: {
      const double t2 = t * t, t3 = t2 * t;
      out[0] = {1.0 - 3.0 * t2 + 2.0 * t3, (-6.0 * t + 6.0 * t2) * ih, (-6.0 + 12.0 * t) * ih2};
      out[1] = {h * (t - 2.0 * t2 + t3), 1.0 - 4.0 * t + 3.0 * t2, (-4.0 + 6.0 * t) * ih};
      out[2] = {3.0 * t2 - 2.0 * t3, (6.0 * t - 6.0 * t2) * ih, (6.0 - 12.0 * t) * ih2};
      out[3] = {h * (-t2 + t3), -2.0 * t + 3.0 * t2, (-2.0 + 6.0 * t) * ih};
      break;
    }
  }
}

int FunctionSpace::vertex_value(int vertex) const {
  if (vertex < 0 || vertex > mesh_.elements()) throw InvalidArgument("vertex out of range");
  switch (family_) {
    case Family::LagrangeP1: return vertex;
    case Family::LagrangeP2: return 2 * vertex;
    case Family::Hermite3: return 2 * vertex;
  }
  return -1;
}

int FunctionSpace::vertex_slope(int vertex) const {
  if (family_ != Family::Hermite3) throw InvalidArgument("slope dofs exist only for Hermite3");
  if (vertex < 0 || vertex > mesh_.elements()) throw InvalidArgument("vertex out of range");
  return 2 * vertex + 1;
}

template <class S>
DiscreteField<S>::DiscreteField(std::shared_ptr<const FunctionSpace> space, VecX<S> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != space_->ndofs()) throw InvalidArgument("coefficient count does not match the space");
}

template <class S>
S DiscreteField<S>::evaluate_local(int e, double t, int comp, int order) const {
  if (order < 0 || order > 2) throw InvalidArgument("evaluate: derivative order must be 0..2");
  std::array<int, 4> dofs{};
  std::array<Jet1, 4> jets{};
  const int nl = space_->local();
  space_->element_scalar_dofs(e, std::span<int>(dofs.data(), static_cast<std::size_t>(nl)));
  space_->eval(e, t, std::span<Jet1>(jets.data(), static_cast<std::size_t>(nl)));
  S v{};
  for (int i = 0; i < nl; ++i) v += coeffs_[space_->dof(comp, dofs[i])] * jets[i][order];
  return v;
}

template <class S>
S DiscreteField<S>::evaluate(double x, int comp, int order) const {
  double t = 0.0;
  const int e = space_->mesh().locate(x, t);
  return evaluate_local(e, t, comp, order);
}

template class DiscreteField<double>;
template class DiscreteField<cplx>;

}  // namespace gradelast
