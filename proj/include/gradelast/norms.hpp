#pragma once

#include <functional>
#include <map>

#include "gradelast/function_space.hpp"
#include "gradelast/mesh.hpp"

namespace gradelast {

/// Exact reference: (value, first, second derivative) of one component at x.
using ExactFn = std::function<Jet1(double)>;

/// Sobolev norm of order t ∈ {0,1,2} of field component comp minus exact
/// (exact may be empty). seminorm keeps only the order-t term.
double interval_norm(const DiscreteField<double>& field, int comp, int t, const ExactFn& exact = {},
                     bool seminorm = false);

/// Strip field Σ_k û_k(y) e^{ikx}; only k >= 0 is stored, negative modes are
/// the complex conjugates. Absent modes are zero.
struct StripField {
  StripGrid grid;
  std::map<int, DiscreteField<cplx>> modes;

  /// Physical value of component comp at (x, y).
  double evaluate(double x, double y, int comp, int dy = 0) const;
};

/// ‖a - b‖_t with weights (1+k²)^{t-j} on ∂_y^j, summed over k = -K..K,
/// scaled by the period 2π. b may be null.
double strip_norm(const StripField& a, const StripField* b, int t);

}  // namespace gradelast
