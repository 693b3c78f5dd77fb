#include "gradelast/oracle.hpp"

#include <cmath>

#include "gradelast/assembly.hpp"
#include "gradelast/errors.hpp"
#include "gradelast/linear_system.hpp"
#include "gradelast/parallel.hpp"

namespace gradelast {
namespace {

// cosh(a)/cosh(b) and sinh(a)/cosh(b) for b >= |a| without overflow.
double cosh_ratio(double a, double b) {
  return std::exp(std::abs(a) - b) * (1.0 + std::exp(-2.0 * std::abs(a))) / (1.0 + std::exp(-2.0 * b));
}
double sinh_ratio(double a, double b) {
  const double s = a < 0 ? -1.0 : 1.0;
  return s * std::exp(std::abs(a) - b) * (1.0 - std::exp(-2.0 * std::abs(a))) / (1.0 + std::exp(-2.0 * b));
}

std::vector<std::pair<int, cplx>> dirichlet_edges(const FunctionSpace& sp) {
  std::vector<std::pair<int, cplx>> c;
  for (int comp = 0; comp < sp.ncomp(); ++comp)
    for (int v : {0, sp.mesh().elements()}) c.emplace_back(sp.dof(comp, sp.vertex_value(v)), 0.0);
  return c;
}

StripSolution solve_strip(const StripLoad& f, const LameParams& lame, const StripGrid& grid, const HexadicH* h,
                          double g) {
  grid.validate();
  lame.validate();
  check_strip_load(f, grid);
  auto space = std::make_shared<const FunctionSpace>(grid.transverse(), Family::Hermite3, 2);
  const JetLayout layout(2, {{2, 2}});
  const LineDiscretization disc(layout, {space});
  Kernel c = zero_kernel(layout);
  add_elastic(c, layout, 0, lame);
  if (h) add_fourth(c, layout, 0, *h);
  const std::set<int> mode_set = f.modes();
  const std::vector<int> ks(mode_set.begin(), mode_set.end());
  std::vector<VecX<cplx>> sols(ks.size());
  parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const int k = ks[static_cast<std::size_t>(i)];
    SparseSystem<cplx> sys;
    sys.matrix = disc.assemble_strip(c, k);
    sys.rhs = assemble_vector<cplx>(disc.ndofs(), disc.elements(), disc.strip_elements(k),
                                    [&](const std::array<double, 2>& x, std::span<cplx> l) {
                                      for (int comp = 0; comp < 2; ++comp)
                                        l[static_cast<std::size_t>(layout.value(0, comp))] = f.mode_value(k, comp, x[0]);
                                    });
    sys = apply_essential(std::move(sys), dirichlet_edges(*space));
    try {
      sols[static_cast<std::size_t>(i)] = solve_linear(sys);
    } catch (const SingularSystem& e) {
      throw SingularSystem(std::string(e.what()) + " (k=" + std::to_string(k) + ", g=" + std::to_string(g) +
                           ", n=" + std::to_string(grid.ny) + ")");
    }
  });
  StripSolution out;
  out.u.grid = grid;
  for (std::size_t i = 0; i < ks.size(); ++i) out.u.modes.emplace(ks[i], DiscreteField<cplx>(space, sols[i]));
  out.meta = {"strip-spectral", g, grid.ny};
  return out;
}

}  // namespace

ClosedForm1D::ClosedForm1D(double f, double g, double length, const LameParams& lame)
    : f_(f), g_(g), l_(length), e_(lame.p_modulus()) {
  if (!(length > 0.0)) throw InvalidArgument("interval length must be positive");
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("g must be finite and >= 0");
  lame.validate();
}

Jet1 ClosedForm1D::jet(double x) const {
  const double fe = f_ / e_;
  Jet1 j{0.5 * fe * x * (l_ - x), 0.5 * fe * (l_ - 2.0 * x), -fe};
  if (g_ > 0.0) {
    const double a = (x - 0.5 * l_) / g_, b = 0.5 * l_ / g_;
    const double c = cosh_ratio(a, b), s = sinh_ratio(a, b);
    j[0] -= g_ * g_ * fe * (1.0 - c);
    j[1] += g_ * fe * s;
    j[2] += fe * c;
  }
  return j;
}

double ClosedForm1D::third(double x) const {
  if (g_ == 0.0) return 0.0;
  return f_ / (e_ * g_) * sinh_ratio((x - 0.5 * l_) / g_, 0.5 * l_ / g_);
}

ClosedForm1D solve_1d_closed_form(double f, double g, double length, const LameParams& lame) {
  return ClosedForm1D(f, g, length, lame);
}

IntervalSolution solve_1d_hermite(const std::function<double(double)>& f, double g, const IntervalMesh& mesh,
                                  const LameParams& lame) {
  lame.validate();
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("g must be finite and >= 0");
  auto space = std::make_shared<const FunctionSpace>(mesh, Family::Hermite3, 1);
  const JetLayout layout(1, {{1, 2}});
  const LineDiscretization disc(layout, {space});
  Kernel c = zero_kernel(layout);
  add_elastic(c, layout, 0, lame);
  if (g > 0.0) add_fourth(c, layout, 0, build_H(one_d_gradient_params(g, lame.p_modulus()), 1));
  SparseSystem<double> sys;
  sys.matrix = disc.assemble(c);
  sys.rhs = assemble_vector<double>(disc.ndofs(), disc.elements(), disc.interval_elements(),
                                    [&](const std::array<double, 2>& x, std::span<double> l) { l[0] = f(x[0]); });
  sys = apply_essential(std::move(sys), {{space->vertex_value(0), 0.0}, {space->vertex_value(mesh.elements()), 0.0}});
  IntervalSolution out{DiscreteField<double>(space, solve_linear(sys)), {"hermite-1d", g, mesh.elements()}};
  return out;
}

IntervalSolution solve_1d_hermite(const DiscreteField<double>& f, double g, const LameParams& lame) {
  return solve_1d_hermite([&f](double x) { return f.evaluate(x, 0); }, g, f.space().mesh(), lame);
}

double Profile::eval(double y) const {
  switch (kind) {
    case Kind::Sine: return std::sin(n * M_PI * y);
    case Kind::Cosine: return std::cos(n * M_PI * y);
    case Kind::Polynomial: {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * y + *it;
      return v;
    }
  }
  return 0.0;
}

cplx StripLoad::mode_value(int k, int comp, double y) const {
  cplx v = 0.0;
  for (const auto& t : terms) {
    if (t.k != k || t.comp != comp) continue;
    const double p = t.profile.eval(y);
    v += k == 0 ? cplx(t.cos_amp * p, 0.0) : 0.5 * cplx(t.cos_amp, -t.sin_amp) * p;
  }
  return v;
}

std::set<int> StripLoad::modes() const {
  std::set<int> ks;
  for (const auto& t : terms)
    if (t.cos_amp != 0.0 || (t.k != 0 && t.sin_amp != 0.0)) ks.insert(t.k);
  return ks;
}

StripLoad StripLoad::scaled(double s) const {
  StripLoad out = *this;
  for (auto& t : out.terms) {
    t.cos_amp *= s;
    t.sin_amp *= s;
  }
  return out;
}

double StripLoad::physical(double x, double y, int comp) const {
  double v = 0.0;
  for (const auto& t : terms)
    if (t.comp == comp) v += (t.cos_amp * std::cos(t.k * x) + t.sin_amp * std::sin(t.k * x)) * t.profile.eval(y);
  return v;
}

void check_strip_load(const StripLoad& f, const StripGrid& grid) {
  for (const auto& t : f.terms) {
    if (t.k < 0 || t.k > grid.modes) throw InvalidArgument("load mode outside 0..K");
    if (t.comp < 0 || t.comp > 1) throw InvalidArgument("strip load component must be 0 or 1");
    if (!std::isfinite(t.cos_amp) || !std::isfinite(t.sin_amp)) throw InvalidArgument("load amplitudes must be finite");
  }
}

StripSolution solve_strip_fourth(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("g must be finite and >= 0");
  if (g == 0.0) return solve_strip_classical(f, lame, grid);
  const HexadicH h = build_H(simple_gradient_params(g, lame), 2);
  return solve_strip(f, lame, grid, &h, g);
}

StripSolution solve_strip_classical(const StripLoad& f, const LameParams& lame, const StripGrid& grid) {
  return solve_strip(f, lame, grid, nullptr, 0.0);
}

}  // namespace gradelast
