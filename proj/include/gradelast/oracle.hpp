#pragma once

// Reference solvers for the fourth-order problem g²ΔΔ*u − Δ*u = f and the
// classical problem −Δ*u = f with u = 0 and vanishing double-stress trace.

#include <set>
#include <string>
#include <vector>

#include "gradelast/constitutive.hpp"
#include "gradelast/norms.hpp"

namespace gradelast {

struct OracleMeta {
  std::string method;  // closed-form, hermite-1d, strip-spectral
  double g = 0.0;
  int resolution = 0;
};

/// u(x) = f/(2E) x(L−x) − g² f/E (1 − cosh((x−L/2)/g)/cosh(L/(2g))), E = λ+2μ.
class ClosedForm1D {
 public:
  ClosedForm1D(double f, double g, double length, const LameParams& lame);

  double value(double x) const { return jet(x)[0]; }
  Jet1 jet(double x) const;
  double third(double x) const;
  double modulus() const noexcept { return e_; }
  OracleMeta meta() const { return {"closed-form", g_, 0}; }

 private:
  double f_, g_, l_, e_;
};

ClosedForm1D solve_1d_closed_form(double f, double g, double length, const LameParams& lame);

struct IntervalSolution {
  DiscreteField<double> u;
  OracleMeta meta;
};

/// Hermite3 Galerkin solution of ∫E(u′v′ + g²u″v″) = ∫fv with u = 0 at both ends.
IntervalSolution solve_1d_hermite(const std::function<double(double)>& f, double g, const IntervalMesh& mesh,
                                  const LameParams& lame);
IntervalSolution solve_1d_hermite(const DiscreteField<double>& f, double g, const LameParams& lame);

/// Transverse profile of a strip load term.
struct Profile {
  enum class Kind { Sine, Cosine, Polynomial };
  Kind kind = Kind::Sine;
  int n = 1;                  // sin(nπy) or cos(nπy)
  std::vector<double> coeffs; // Σ c_i y^i
  double eval(double y) const;
};

/// f_comp(x, y) = (A cos kx + B sin kx) · p(y)
struct StripLoadTerm {
  int k = 0;
  int comp = 0;
  double cos_amp = 1.0;
  double sin_amp = 0.0;
  Profile profile;
};

struct StripLoad {
  std::vector<StripLoadTerm> terms;

  /// Coefficient of e^{ikx} (k >= 0) of component comp at y.
  cplx mode_value(int k, int comp, double y) const;
  std::set<int> modes() const;
  StripLoad scaled(double s) const;
  double physical(double x, double y, int comp) const;
};

struct StripSolution {
  StripField u;
  OracleMeta meta;
};

/// Per-mode Hermite3 solve of g²ΔΔ*u − Δ*u = f (∂x → ik), u = 0 and
/// vanishing double-stress trace on both edges; simple model xi1 = xi2 = g.
StripSolution solve_strip_fourth(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid);
/// Per-mode Hermite3 solve of −Δ*u = f with Dirichlet edges.
StripSolution solve_strip_classical(const StripLoad& f, const LameParams& lame, const StripGrid& grid);

void check_strip_load(const StripLoad& f, const StripGrid& grid);

}  // namespace gradelast
