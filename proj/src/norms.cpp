#include "gradelast/norms.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "gradelast/errors.hpp"
#include "gradelast/quadrature.hpp"

namespace gradelast {

double interval_norm(const DiscreteField<double>& field, int comp, int t, const ExactFn& exact, bool seminorm) {
  if (t < 0 || t > 2) throw InvalidArgument("norm order must be 0, 1 or 2");
  const FunctionSpace& sp = field.space();
  if (t > sp.conformity()) throw InvalidArgument("norm order exceeds the conformity of the space");
  if (comp < 0 || comp >= sp.ncomp()) throw InvalidArgument("component out of range");
  const GaussRule& rule = gauss_rule(6);
  const IntervalMesh& mesh = sp.mesh();
  double sum = 0.0;
  for (int e = 0; e < mesh.elements(); ++e)
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double x = mesh.node(e) + rule.points[q] * mesh.h();
      const Jet1 ref = exact ? exact(x) : Jet1{0.0, 0.0, 0.0};
      for (int j = seminorm ? t : 0; j <= t; ++j) {
        const double d = field.evaluate_local(e, rule.points[q], comp, j) - ref[static_cast<std::size_t>(j)];
        sum += rule.weights[q] * mesh.h() * d * d;
      }
    }
  return std::sqrt(sum);
}

double StripField::evaluate(double x, double y, int comp, int dy) const {
  double v = 0.0;
  for (const auto& [k, f] : modes) {
    const cplx c = f.evaluate(y, comp, dy) * std::exp(cplx(0.0, k * x));
    v += k == 0 ? c.real() : 2.0 * c.real();
  }
  return v;
}

double strip_norm(const StripField& a, const StripField* b, int t) {
  if (t < 0 || t > 2) throw InvalidArgument("norm order must be 0, 1 or 2");
  std::set<int> ks;
  for (const auto& m : a.modes) ks.insert(m.first);
  if (b)
    for (const auto& m : b->modes) ks.insert(m.first);
  IntervalMesh mesh = a.grid.transverse();
  int finest = 0;
  for (const StripField* f : {&a, b}) {
    if (!f) continue;
    for (const auto& m : f->modes)
      if (m.second.space().mesh().elements() > finest) {
        finest = m.second.space().mesh().elements();
        mesh = m.second.space().mesh();
      }
  }
  const GaussRule& rule = gauss_rule(6);
  double total = 0.0;
  for (int k : ks) {
    const DiscreteField<cplx>* fa = a.modes.count(k) ? &a.modes.at(k) : nullptr;
    const DiscreteField<cplx>* fb = (b && b->modes.count(k)) ? &b->modes.at(k) : nullptr;
    const int ncomp = fa ? fa->space().ncomp() : fb->space().ncomp();
    double sum = 0.0;
    for (int e = 0; e < mesh.elements(); ++e)
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double y = mesh.node(e) + rule.points[q] * mesh.h();
        for (int c = 0; c < ncomp; ++c)
          for (int j = 0; j <= t; ++j) {
            cplx d = 0.0;
            if (fa) d += fa->space().mesh().elements() == mesh.elements() ? fa->evaluate_local(e, rule.points[q], c, j)
                                                                           : fa->evaluate(y, c, j);
            if (fb) d -= fb->space().mesh().elements() == mesh.elements() ? fb->evaluate_local(e, rule.points[q], c, j)
                                                                           : fb->evaluate(y, c, j);
            sum += rule.weights[q] * mesh.h() * std::pow(1.0 + double(k) * k, t - j) * std::norm(d);
          }
      }
    total += (k == 0 ? 1.0 : 2.0) * sum;
  }
  return std::sqrt(2.0 * std::numbers::pi * total);
}

}  // namespace gradelast
