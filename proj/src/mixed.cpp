#include "gradelast/mixed.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "gradelast/errors.hpp"
#include "gradelast/parallel.hpp"
#include "gradelast/quadrature.hpp"

namespace gradelast {
namespace {

// Coefficients of R_j = n_a n_b μ_abj(ν) on the reduced ν components.
Eigen::MatrixXd trace_rows(const HexadicH& h, const std::array<double, 3>& n) {
  const int d = h.dim();
  const Eigen::MatrixXd s = triadic_stress(h);
  Tensor probe(3, d);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, s.cols());
  for (int j = 0; j < d; ++j)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        r.row(j) += n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)] *
                    s.row(static_cast<int>(probe.flat({a, b, j})));
  return r;
}

// (i, j, k) of each reduced ν slot.
std::vector<std::array<int, 3>> slot_indices(int d) {
  std::vector<std::array<int, 3>> out(static_cast<std::size_t>(SymTriadic::count(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) out[static_cast<std::size_t>(SymTriadic::slot(d, i, j, k))] = {i, j, k};
  return out;
}

void check_line_family(Family f) {
  if (f == Family::Hermite3) throw InvalidArgument("mixed spaces are Lagrange P1 or P2");
}

template <class S>
MixedSystem<S> build_line(const IntervalMesh& mesh, int dim, double k, const LameParams& lame,
                          const GradientParams& params, const MixedOptions& options,
                          const std::function<std::array<S, 2>(double)>& f) {
  lame.validate();
  params.validate();
  check_line_family(options.family);
  if (options.sign != 1 && options.sign != -1) throw InvalidArgument("mixed sign must be +1 or -1");
  const int nn = SymTriadic::count(dim);
  auto su = std::make_shared<const FunctionSpace>(mesh, options.family, dim);
  auto sn = std::make_shared<const FunctionSpace>(mesh, options.family, nn);
  const JetLayout layout(dim, {{dim, 1}, {nn, 1}});
  auto disc = std::make_shared<const LineDiscretization>(layout, std::vector<std::shared_ptr<const FunctionSpace>>{su, sn});

  MixedSystem<S> out;
  out.disc = disc;
  out.lame = lame;
  out.h = build_H(params, dim);
  out.options = options;
  out.k = k;
  Kernel c = zero_kernel(layout);
  add_mixed(c, layout, 0, 1, lame, out.h, options.sign);
  const bool mirror = options.sign == 1;
  if constexpr (std::is_same_v<S, double>) {
    out.system.matrix = disc->assemble(c, mirror);
    out.system.rhs = assemble_vector<double>(disc->ndofs(), disc->elements(), disc->interval_elements(),
                                             [&](const std::array<double, 2>& x, std::span<double> l) {
                                               l[static_cast<std::size_t>(layout.value(0, 0))] = f(x[0])[0];
                                             });
  } else {
    out.system.matrix = disc->assemble_strip(c, k, mirror);
    out.system.rhs = assemble_vector<cplx>(disc->ndofs(), disc->elements(), disc->strip_elements(k),
                                           [&](const std::array<double, 2>& x, std::span<cplx> l) {
                                             const auto v = f(x[0]);
                                             for (int comp = 0; comp < dim; ++comp)
                                               l[static_cast<std::size_t>(layout.value(0, comp))] = v[static_cast<std::size_t>(comp)];
                                           });
  }

  const int last = mesh.elements();
  for (int vtx : {0, last}) {
    std::array<double, 3> n{};
    n[static_cast<std::size_t>(dim - 1)] = vtx == 0 ? -1.0 : 1.0;
    if (options.boundary == BoundarySet::Set1) {
      for (int comp = 0; comp < dim; ++comp) out.system.essential.emplace_back(su->dof(comp, su->vertex_value(vtx)), S(0));
      const Eigen::MatrixXd rows = trace_rows(out.h, n);
      for (int j = 0; j < dim; ++j) {
        LinearConstraint<S> lc;
        for (int m = 0; m < nn; ++m)
          if (rows(j, m) != 0.0) lc.terms.emplace_back(disc->block_offset(1) + sn->dof(m, sn->vertex_value(vtx)), S(rows(j, m)));
        if (!lc.terms.empty()) out.system.linear.push_back(std::move(lc));
      }
    } else {
      if (dim != 1) throw Unsupported("the second boundary set is implemented on the interval and the rectangle");
      const int e = vtx == 0 ? 0 : last - 1;
      std::array<int, 4> sd{};
      std::array<Jet1, 4> jets{};
      su->element_scalar_dofs(e, std::span<int>(sd.data(), static_cast<std::size_t>(su->local())));
      su->eval(e, vtx == 0 ? 0.0 : 1.0, std::span<Jet1>(jets.data(), static_cast<std::size_t>(su->local())));
      LinearConstraint<S> lc;
      for (int i = 0; i < su->local(); ++i) lc.terms.emplace_back(su->dof(0, sd[static_cast<std::size_t>(i)]), S(jets[static_cast<std::size_t>(i)][1]));
      out.system.linear.push_back(std::move(lc));
    }
  }
  if (options.boundary == BoundarySet::Set2) {
    out.system.deflation = MatX<S>::Zero(disc->ndofs(), 1);
    for (int i = 0; i < su->scalar_dofs(); ++i) out.system.deflation(su->dof(0, i), 0) = S(1);
  }
  return out;
}

template <class S>
DiscreteField<S> block_field(const std::shared_ptr<const LineDiscretization>& disc, const VecX<S>& x, int b) {
  const auto& sp = disc->space_ptr(b);
  return DiscreteField<S>(sp, x.segment(disc->block_offset(b), sp->ndofs()));
}

}  // namespace

const char* to_string(BoundarySet b) { return b == BoundarySet::Set1 ? "set1" : "set2"; }

template <class S>
DiscreteField<S> MixedState<S>::u() const {
  return block_field(disc, x, 0);
}

template <class S>
DiscreteField<S> MixedState<S>::nu() const {
  return block_field(disc, x, 1);
}

MixedSystem<double> assemble_mixed(const IntervalMesh& mesh, const LameParams& lame, const GradientParams& params,
                                   const MixedOptions& options, const std::function<double(double)>& f) {
  return build_line<double>(mesh, 1, 0.0, lame, params, options,
                            [&f](double x) { return std::array<double, 2>{f(x), 0.0}; });
}

MixedSystem<cplx> assemble_mixed_mode(const IntervalMesh& mesh, double k, const LameParams& lame,
                                      const GradientParams& params, const MixedOptions& options,
                                      const std::function<std::array<cplx, 2>(double)>& f) {
  if (options.boundary != BoundarySet::Set1) throw Unsupported("strip modes support the first boundary set only");
  return build_line<cplx>(mesh, 2, k, lame, params, options, f);
}

template <class S>
MixedState<S> solve_mixed(const MixedSystem<S>& mixed, SolveInfo* info) {
  if (mixed.options.sign != -1) throw InvalidArgument("only A- is solvable; A+ is assembled for inspection");
  MixedState<S> state{mixed.disc, VecX<S>(), mixed.k};
  if (!mixed.h.params().all_zero()) {
    state.x = solve_linear(mixed.system, info);
    return state;
  }
  const int nu = mixed.disc->block_offset(1);
  SparseSystem<S> sub;
  sub.matrix = mixed.system.matrix.topLeftCorner(nu, nu);
  sub.rhs = mixed.system.rhs.head(nu);
  for (const auto& e : mixed.system.essential)
    if (e.first < nu) sub.essential.push_back(e);
  for (const auto& lc : mixed.system.linear) {
    bool inside = true;
    for (const auto& t : lc.terms) inside = inside && t.first < nu;
    if (inside) sub.linear.push_back(lc);
  }
  if (mixed.system.deflation.cols() > 0) sub.deflation = mixed.system.deflation.topRows(nu);
  state.x = VecX<S>::Zero(mixed.disc->ndofs());
  state.x.head(nu) = solve_linear(sub, info);
  return state;
}

template <class S>
double constraint_residual(const MixedState<S>& state) {
  const LineDiscretization& disc = *state.disc;
  const int d = disc.layout().dim();
  const DiscreteField<S> u = state.u();
  const DiscreteField<S> nu = state.nu();
  const auto slots = slot_indices(d);
  const GaussRule& rule = gauss_rule(6);
  const IntervalMesh& mesh = disc.space(0).mesh();
  const cplx ik(0.0, state.k);
  auto deriv = [&](int e, double t, int a, int b, int c) -> cplx {
    // ∂_a ∂_b u_c with ∂_{d-1} the line coordinate and ∂_0 → ik when d = 2
    int ny = 0, nx = 0;
    for (int s : {a, b}) (s == d - 1 ? ny : nx) += 1;
    cplx v = u.evaluate_local(e, t, c, ny);
    for (int i = 0; i < nx; ++i) v *= ik;
    return v;
  };
  double sum = 0.0;
  for (int e = 0; e < mesh.elements(); ++e)
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      for (std::size_t m = 0; m < slots.size(); ++m) {
        const auto [i, j, k] = slots[m];
        const cplx target = 0.5 * (deriv(e, t, i, j, k) + deriv(e, t, i, k, j));
        const cplx diff = cplx(nu.evaluate_local(e, t, static_cast<int>(m), 0)) - target;
        sum += rule.weights[q] * mesh.h() * SymTriadic::multiplicity(d, static_cast<int>(m)) * std::norm(diff);
      }
    }
  return std::sqrt(sum);
}

template <class S>
double energy(const MixedState<S>& state, const LameParams& lame, const HexadicH& h) {
  const LineDiscretization& disc = *state.disc;
  const JetLayout& layout = disc.layout();
  Kernel c = zero_kernel(layout);
  add_elastic(c, layout, 0, lame);
  const Eigen::MatrixXd q = triadic_form(h);
  for (int m = 0; m < q.rows(); ++m)
    for (int p = 0; p < q.cols(); ++p) c(layout.value(1, m), layout.value(1, p)) += q(m, p);
  if constexpr (std::is_same_v<S, double>) {
    const SpMat<double> a = disc.assemble(c);
    return state.x.dot(a * state.x);
  } else {
    const SpMat<cplx> a = disc.assemble_strip(c, state.k);
    return std::real(state.x.dot(a * state.x));
  }
}

SpMat<double> mixed_gram(const LineDiscretization& disc) {
  const JetLayout& layout = disc.layout();
  Kernel c = zero_kernel(layout);
  add_mass(c, layout, 0);
  add_laplace(c, layout, 0);
  add_mass(c, layout, 1);
  return disc.assemble(c, true);
}

double smallest_ritz_value(const MixedSystem<double>& mixed) {
  const Reduction<double> red = reduce_constraints(mixed.system);
  const Eigen::MatrixXd ar = Eigen::MatrixXd(reduced_matrix(mixed.system, red));
  const Eigen::MatrixXd sym = 0.5 * (ar + ar.transpose());
  const SpMat<double> g = mixed_gram(*mixed.disc);
  const Eigen::MatrixXd gr = Eigen::MatrixXd(SpMat<double>(red.t.transpose() * g * red.t));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, gr, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InternalError("generalized eigenvalue solve failed");
  return es.eigenvalues().minCoeff();
}

int mixed_nullspace_dimension(const MixedSystem<double>& mixed) { return nullspace_dimension(mixed.system); }

StripMixedResult solve_strip_mixed(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid,
                                   Family family) {
  grid.validate();
  check_strip_load(f, grid);
  if (!(g > 0.0)) throw InvalidArgument("the mixed strip solve needs g > 0");
  const GradientParams params = simple_gradient_params(g, lame);
  const std::set<int> mode_set = f.modes();
  const std::vector<int> ks(mode_set.begin(), mode_set.end());
  std::vector<MixedState<cplx>> states(ks.size());
  std::vector<double> res(ks.size());
  MixedOptions opt;
  opt.family = family;
  parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const int k = ks[static_cast<std::size_t>(i)];
    const auto sys = assemble_mixed_mode(grid.transverse(), k, lame, params, opt, [&](double y) {
      return std::array<cplx, 2>{f.mode_value(k, 0, y), f.mode_value(k, 1, y)};
    });
    try {
      states[static_cast<std::size_t>(i)] = solve_mixed(sys);
    } catch (const SingularSystem& e) {
      throw SingularSystem(std::string(e.what()) + " (k=" + std::to_string(k) + ", g=" + std::to_string(g) +
                           ", n=" + std::to_string(grid.ny) + ")");
    }
    const double r = constraint_residual(states[static_cast<std::size_t>(i)]);
    res[static_cast<std::size_t>(i)] = (k == 0 ? 1.0 : 2.0) * r * r;
  });
  StripMixedResult out;
  out.u.grid = grid;
  double total = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out.u.modes.emplace(ks[i], states[i].u());
    total += res[i];
  }
  out.constraint_residual = std::sqrt(2.0 * std::numbers::pi * total);
  return out;
}

RectMixedSystem assemble_mixed_rect(const RectangleMesh& mesh, const LameParams& lame, const GradientParams& params,
                                    const MixedOptions& options,
                                    const std::function<std::array<double, 2>(double, double)>& f) {
  lame.validate();
  params.validate();
  if (options.sign != 1 && options.sign != -1) throw InvalidArgument("mixed sign must be +1 or -1");
  const int nn = SymTriadic::count(2);
  auto su = std::make_shared<const RectSpace>(mesh, options.degree, 2);
  auto sn = std::make_shared<const RectSpace>(mesh, options.degree, nn);
  const JetLayout layout(2, {{2, 1}, {nn, 1}});
  auto disc = std::make_shared<const RectDiscretization>(layout, std::vector<std::shared_ptr<const RectSpace>>{su, sn});
  const HexadicH h = build_H(params, 2);
  const bool mirror = options.sign == 1;

  RectMixedSystem out;
  out.disc = disc;
  out.options = options;
  Kernel c = zero_kernel(layout);
  add_mixed(c, layout, 0, 1, lame, h, options.sign);
  out.system.matrix = assemble_matrix<double>(disc->ndofs(), disc->elements(), disc->volume_elements(), c, mirror);
  out.system.rhs = assemble_vector<double>(disc->ndofs(), disc->elements(), disc->volume_elements(),
                                           [&](const std::array<double, 2>& x, std::span<double> l) {
                                             const auto v = f(x[0], x[1]);
                                             l[static_cast<std::size_t>(layout.value(0, 0))] = v[0];
                                             l[static_cast<std::size_t>(layout.value(0, 1))] = v[1];
                                           });
  using Side = RectDiscretization::Side;
  const int p = options.degree;
  std::array<double, 3> bv{}, bd{};
  for (Side side : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
    const auto n = RectDiscretization::normal(side);
    const bool vertical = side == Side::Left || side == Side::Right;
    const bool high = side == Side::Right || side == Side::Top;
    const int count = vertical ? su->nodes_y() : su->nodes_x();
    if (options.boundary == BoundarySet::Set2) {
      Kernel cs = zero_kernel(layout);
      add_mixed_surface(cs, layout, 0, 1, h, options.sign, n);
      out.system.matrix += assemble_matrix<double>(disc->ndofs(), disc->side_elements(side),
                                                   disc->side_elements_fn(side), cs, mirror);
      su->basis_1d(high ? 1.0 : 0.0, bv, bd);
      const double hn = vertical ? mesh.lx / mesh.nx : mesh.ly / mesh.ny;
      const int base = high ? (vertical ? su->nodes_x() : su->nodes_y()) - 1 - p : 0;
      for (int s = 0; s < count; ++s)
        for (int comp = 0; comp < 2; ++comp) {
          LinearConstraint<double> lc;
          for (int i = 0; i <= p; ++i) {
            const int node = vertical ? su->node(base + i, s) : su->node(s, base + i);
            lc.terms.emplace_back(su->dof(comp, node), bd[static_cast<std::size_t>(i)] / hn);
          }
          out.system.linear.push_back(std::move(lc));
        }
    } else {
      const Eigen::MatrixXd rows = trace_rows(h, n);
      for (int s = 0; s < count; ++s) {
        const int node = vertical ? su->node(high ? su->nodes_x() - 1 : 0, s) : su->node(s, high ? su->nodes_y() - 1 : 0);
        for (int comp = 0; comp < 2; ++comp) out.system.essential.emplace_back(su->dof(comp, node), 0.0);
        for (int j = 0; j < 2; ++j) {
          LinearConstraint<double> lc;
          for (int m = 0; m < nn; ++m)
            if (rows(j, m) != 0.0) lc.terms.emplace_back(disc->block_offset(1) + sn->dof(m, node), rows(j, m));
          if (!lc.terms.empty()) out.system.linear.push_back(std::move(lc));
        }
      }
    }
  }
  if (options.boundary == BoundarySet::Set2) {
    out.system.deflation = MatX<double>::Zero(disc->ndofs(), 2);
    for (int comp = 0; comp < 2; ++comp)
      for (int node = 0; node < su->nodes(); ++node) out.system.deflation(su->dof(comp, node), comp) = 1.0;
  }
  return out;
}

VecX<double> solve_mixed_rect(const RectMixedSystem& mixed, SolveInfo* info) {
  if (mixed.options.sign != -1) throw InvalidArgument("only A- is solvable; A+ is assembled for inspection");
  return solve_linear(mixed.system, info);
}

int mixed_nullspace_dimension(const RectMixedSystem& mixed) { return nullspace_dimension(mixed.system); }

template DiscreteField<double> MixedState<double>::u() const;
template DiscreteField<double> MixedState<double>::nu() const;
template DiscreteField<cplx> MixedState<cplx>::u() const;
template DiscreteField<cplx> MixedState<cplx>::nu() const;
template MixedState<double> solve_mixed(const MixedSystem<double>&, SolveInfo*);
template MixedState<cplx> solve_mixed(const MixedSystem<cplx>&, SolveInfo*);
template double constraint_residual(const MixedState<double>&);
template double constraint_residual(const MixedState<cplx>&);
template double energy(const MixedState<double>&, const LameParams&, const HexadicH&);
template double energy(const MixedState<cplx>&, const LameParams&, const HexadicH&);

}  // namespace gradelast
