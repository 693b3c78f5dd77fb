#include "gradelast/pdo_strip.hpp"

#include <Eigen/LU>
#include <cmath>

#include "gradelast/errors.hpp"
#include "gradelast/norms.hpp"
#include "gradelast/parallel.hpp"

namespace gradelast {
namespace {

using LU = Eigen::SparseLU<SpMat<cplx>, Eigen::COLAMDOrdering<int>>;

Tensor edge_stress(const HexadicH& h, const Tensor& hess) { return h.apply(sym_last_two(hess).expand()); }

VecX<cplx> load_vector(const LineDiscretization& disc, double k,
                       const std::function<std::array<cplx, 2>(double)>& chi) {
  const JetLayout& layout = disc.layout();
  return assemble_vector<cplx>(disc.ndofs(), disc.elements(), disc.strip_elements(k),
                               [&](const std::array<double, 2>& x, std::span<cplx> l) {
                                 const auto v = chi(x[0]);
                                 l[static_cast<std::size_t>(layout.value(0, 0))] = v[0];
                                 l[static_cast<std::size_t>(layout.value(0, 1))] = v[1];
                               });
}

}  // namespace

double BoundarySymbol::norm() const {
  double m = 0.0;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) m = std::max(m, matrix.row(r).cwiseAbs().sum());
  return m;
}

ModeBVP::ModeBVP(const StripGrid& grid, int k, const LameParams& lame, const HexadicH& h)
    : k_(k), lame_(lame), h_(h) {
  grid.validate();
  lame.validate();
  if (std::abs(k) > grid.modes) throw InvalidArgument("mode outside -K..K");
  if (h.dim() != 2) throw InvalidArgument("strip operators need a two-dimensional H");
  const IntervalMesh mesh = grid.transverse();
  u_space_ = std::make_shared<const FunctionSpace>(mesh, Family::Hermite3, 2);
  w_space_ = std::make_shared<const FunctionSpace>(mesh, Family::LagrangeP2, 2);
  const JetLayout lu(2, {{2, 1}});
  u_disc_ = std::make_shared<const LineDiscretization>(lu, std::vector<std::shared_ptr<const FunctionSpace>>{u_space_});
  Kernel c = zero_kernel(lu);
  add_elastic(c, lu, 0, lame);
  navier_.matrix = u_disc_->assemble_strip(c, k);
  navier_.rhs = VecX<cplx>::Zero(u_disc_->ndofs());
  for (int comp = 0; comp < 2; ++comp)
    for (int v : {0, mesh.elements()}) navier_.essential.emplace_back(u_space_->dof(comp, u_space_->vertex_value(v)), 0.0);
  red_ = reduce_constraints(navier_);
  reduced_ = reduced_matrix(navier_, red_);
  lu_ = std::make_shared<LU>();
  lu_->compute(reduced_);
  if (lu_->info() != Eigen::Success) throw InternalError("Dirichlet Navier mode matrix is singular (k=" + std::to_string(k) + ")");

  const JetLayout lc(2, {{2, 1}, {2, 1}});
  coupled_disc_ = std::make_shared<const LineDiscretization>(
      lc, std::vector<std::shared_ptr<const FunctionSpace>>{u_space_, w_space_});
  Kernel m = zero_kernel(lc);
  for (int comp = 0; comp < 2; ++comp) m(lc.value(0, comp), lc.value(1, comp)) = 1.0;
  const SpMat<cplx> full = coupled_disc_->assemble_strip(m, k);
  coupling_ = full.block(0, u_space_->ndofs(), u_space_->ndofs(), w_space_->ndofs());

  const SpMat<cplx> art = reduced_.transpose();
  LU lut;
  lut.compute(art);
  if (lut.info() != Eigen::Success) throw InternalError("transposed Navier mode matrix is singular");
  const SpMat<cplx> thb = SpMat<cplx>(red_.t.adjoint()) * coupling_;
  slope_rows_ = MatX<cplx>::Zero(4, w_space_->ndofs());
  for (int edge = 0; edge < 2; ++edge)
    for (int comp = 0; comp < 2; ++comp) {
      const int sd = u_space_->dof(comp, u_space_->vertex_slope(edge == 0 ? 0 : mesh.elements()));
      VecX<cplx> a = red_.t.transpose() * VecX<cplx>::Unit(u_space_->ndofs(), sd);
      const VecX<cplx> r = lut.solve(a);
      slope_rows_.row(edge * 2 + comp) = (thb.transpose() * r).transpose();
    }

  for (int comp = 0; comp < 2; ++comp) {
    Tensor w(3, 2);
    w({1, 1, comp}) = 1.0;
    const Tensor mu = edge_stress(h, w);
    Tensor v(3, 2);
    v({0, 1, comp}) = 1.0;
    v({1, 0, comp}) = 1.0;
    const Tensor mv = edge_stress(h, v);
    for (int j = 0; j < 2; ++j) {
      alpha_(j, comp) = mu({1, 1, j});
      beta_(j, comp) = mv({1, 1, j});
    }
  }
}

VecX<cplx> ModeBVP::solve_reduced(const VecX<cplx>& rhs, const VecX<cplx>& x0) const {
  const VecX<cplx> br = red_.t.adjoint() * (rhs - navier_.matrix * x0);
  const VecX<cplx> z = lu_->solve(br);
  return x0 + red_.t * z;
}

DiscreteField<cplx> ModeBVP::green(const DiscreteField<cplx>& w) const {
  if (w.space().ndofs() != w_space_->ndofs()) throw InvalidArgument("profile is not on the P2 data space");
  return DiscreteField<cplx>(u_space_, solve_reduced(coupling_ * w.coeffs(), VecX<cplx>::Zero(u_space_->ndofs())));
}

DiscreteField<cplx> ModeBVP::green(const std::function<std::array<cplx, 2>(double)>& chi) const {
  return solve(chi, {});
}

DiscreteField<cplx> ModeBVP::poisson(const std::array<cplx, 4>& phi) const {
  return solve([](double) { return std::array<cplx, 2>{}; }, phi);
}

DiscreteField<cplx> ModeBVP::solve(const std::function<std::array<cplx, 2>(double)>& chi,
                                   const std::array<cplx, 4>& phi) const {
  VecX<cplx> x0 = VecX<cplx>::Zero(u_space_->ndofs());
  const int last = u_space_->mesh().elements();
  for (int comp = 0; comp < 2; ++comp) {
    x0[u_space_->dof(comp, u_space_->vertex_value(0))] = phi[static_cast<std::size_t>(2 * comp)];
    x0[u_space_->dof(comp, u_space_->vertex_value(last))] = phi[static_cast<std::size_t>(2 * comp + 1)];
  }
  return DiscreteField<cplx>(u_space_, solve_reduced(load_vector(*u_disc_, k_, chi), x0));
}

MatX<cplx> ModeBVP::gamma0() const {
  MatX<cplx> g = MatX<cplx>::Zero(4, w_space_->ndofs());
  const int last = w_space_->mesh().elements();
  for (int edge = 0; edge < 2; ++edge)
    for (int comp = 0; comp < 2; ++comp) g(edge * 2 + comp, w_space_->dof(comp, w_space_->vertex_value(edge ? last : 0))) = 1.0;
  return g;
}

BoundarySymbol ModeBVP::gamma2_r0() const {
  const double m[2] = {lame_.mu, lame_.p_modulus()};
  const double lm = lame_.lambda + lame_.mu;
  Eigen::Matrix2d n, y;
  for (int j = 0; j < 2; ++j)
    for (int c = 0; c < 2; ++c) {
      n(j, c) = alpha_(j, c) / m[c];
      y(j, c) = beta_(j, c) - alpha_(j, 1 - c) * lm / m[1 - c];
    }
  const MatX<cplx> g0 = gamma0();
  const cplx ik(0.0, k_);
  BoundarySymbol out;
  out.k = k_;
  out.normalization = n;
  out.matrix = MatX<cplx>::Zero(4, w_space_->ndofs());
  for (int edge = 0; edge < 2; ++edge)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 2; ++c)
        out.matrix.row(edge * 2 + j) += -n(j, c) * g0.row(edge * 2 + c) + ik * y(j, c) * slope_rows_.row(edge * 2 + c);
  return out;
}

BoundarySymbol ModeBVP::t0() const {
  if (h_.params().all_zero()) throw InvalidArgument("H = 0 makes the boundary decomposition degenerate");
  const BoundarySymbol g2 = gamma2_r0();
  const Eigen::Matrix2d& n = g2.normalization;
  if (std::abs(n.determinant()) <= 1e-14 * n.squaredNorm()) throw InternalError("normalization matrix N is singular");
  const double lm = lame_.lambda + lame_.mu;
  const double m[2] = {lame_.mu, lame_.p_modulus()};
  Eigen::Matrix2d y;
  for (int j = 0; j < 2; ++j)
    for (int c = 0; c < 2; ++c) y(j, c) = beta_(j, c) - alpha_(j, 1 - c) * lm / m[1 - c];
  const Eigen::Matrix2cd ny = -(n.inverse() * y).cast<cplx>() * cplx(0.0, k_);
  BoundarySymbol out;
  out.k = k_;
  out.normalization = n;
  out.matrix = MatX<cplx>::Zero(4, w_space_->ndofs());
  for (int edge = 0; edge < 2; ++edge)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 2; ++c)
        if (ny(j, c) != cplx(0.0)) out.matrix.row(edge * 2 + j) += ny(j, c) * slope_rows_.row(edge * 2 + c);
  return out;
}

DiscreteField<cplx> green_mode(const StripGrid& grid, int k, const LameParams& lame,
                               const std::function<std::array<cplx, 2>(double)>& chi) {
  return ModeBVP(grid, k, lame, build_H(GradientParams{}, 2)).green(chi);
}

DiscreteField<cplx> poisson_mode(const StripGrid& grid, int k, const LameParams& lame, const std::array<cplx, 4>& phi) {
  return ModeBVP(grid, k, lame, build_H(GradientParams{}, 2)).poisson(phi);
}

BoundarySymbol boundary_symbol_gamma2R0(const StripGrid& grid, int k, const LameParams& lame,
                                        const GradientParams& params) {
  return ModeBVP(grid, k, lame, build_H(params, 2)).gamma2_r0();
}

BoundarySymbol t0_mode(const StripGrid& grid, int k, const LameParams& lame, const GradientParams& params) {
  return ModeBVP(grid, k, lame, build_H(params, 2)).t0();
}

std::array<cplx, 4> raw_gamma2(const DiscreteField<cplx>& u, int k, const HexadicH& h) {
  std::array<cplx, 4> out{};
  const double len = u.space().mesh().length();
  for (int edge = 0; edge < 2; ++edge) {
    const double y = edge ? len : 0.0;
    Tensor re(3, 2), im(3, 2);
    for (int c = 0; c < 2; ++c) {
      const cplx v = u.evaluate(y, c, 0), d1 = u.evaluate(y, c, 1), d2 = u.evaluate(y, c, 2);
      const cplx w00 = -double(k) * k * v, w01 = cplx(0.0, k) * d1;
      re({0, 0, c}) = w00.real();
      im({0, 0, c}) = w00.imag();
      re({0, 1, c}) = re({1, 0, c}) = w01.real();
      im({0, 1, c}) = im({1, 0, c}) = w01.imag();
      re({1, 1, c}) = d2.real();
      im({1, 1, c}) = d2.imag();
    }
    const Tensor mr = edge_stress(h, re), mi = edge_stress(h, im);
    for (int j = 0; j < 2; ++j) out[static_cast<std::size_t>(edge * 2 + j)] = cplx(mr({1, 1, j}), mi({1, 1, j}));
  }
  return out;
}

ProblemIIIResult solve_problem_III(const StripLoad& f, double g, const LameParams& lame, const StripGrid& grid) {
  if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("Problem III needs g > 0");
  grid.validate();
  check_strip_load(f, grid);
  const double s2 = 1.0 / (g * g);
  const HexadicH h = build_H(simple_gradient_params(g, lame), 2);
  const std::set<int> mode_set = f.modes();
  const std::vector<int> ks(mode_set.begin(), mode_set.end());
  std::vector<DiscreteField<cplx>> ws(ks.size()), us(ks.size());
  parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const int k = ks[static_cast<std::size_t>(i)];
    try {
      const ModeBVP op(grid, k, lame, h);
      const BoundarySymbol t0 = op.t0();
      const auto& ws_space = op.w_space();
      const JetLayout layout(2, {{2, 1}});
      const LineDiscretization disc(layout, {ws_space});
      Kernel c = zero_kernel(layout);
      add_laplace(c, layout, 0);
      add_mass(c, layout, 0, s2);
      const SpMat<cplx> a = disc.assemble_strip(c, k);
      VecX<cplx> rhs = s2 * load_vector(disc, k, [&](double y) {
        return std::array<cplx, 2>{f.mode_value(k, 0, y), f.mode_value(k, 1, y)};
      });
      const int last = ws_space->mesh().elements();
      std::vector<int> edge_rows(4);
      std::vector<int> replaced(static_cast<std::size_t>(a.rows()), -1);
      for (int edge = 0; edge < 2; ++edge)
        for (int comp = 0; comp < 2; ++comp) {
          const int d = ws_space->dof(comp, ws_space->vertex_value(edge ? last : 0));
          edge_rows[static_cast<std::size_t>(edge * 2 + comp)] = d;
          replaced[static_cast<std::size_t>(d)] = edge * 2 + comp;
        }
      std::vector<Eigen::Triplet<cplx>> trip;
      for (Eigen::Index col = 0; col < a.outerSize(); ++col)
        for (SpMat<cplx>::InnerIterator it(a, col); it; ++it)
          if (replaced[static_cast<std::size_t>(it.row())] < 0) trip.emplace_back(it.row(), it.col(), it.value());
      for (int r = 0; r < 4; ++r) {
        const int d = edge_rows[static_cast<std::size_t>(r)];
        trip.emplace_back(d, d, 1.0);
        for (Eigen::Index col = 0; col < t0.matrix.cols(); ++col)
          if (t0.matrix(r, col) != cplx(0.0)) trip.emplace_back(d, col, t0.matrix(r, col));
        rhs[d] = 0.0;
      }
      SparseSystem<cplx> sys;
      sys.matrix.resize(a.rows(), a.cols());
      sys.matrix.setFromTriplets(trip.begin(), trip.end());
      sys.rhs = rhs;
      DiscreteField<cplx> w(ws_space, solve_linear(sys));
      us[static_cast<std::size_t>(i)] = op.green(w);
      ws[static_cast<std::size_t>(i)] = std::move(w);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularSystem || e.code() == ErrorCode::Internal)
        throw SingularSystem(std::string(e.what()) + " (k=" + std::to_string(k) + ", g=" + std::to_string(g) +
                             ", n=" + std::to_string(grid.ny) + ")");
      throw;
    }
  });
  ProblemIIIResult out;
  out.w.grid = out.u.grid = grid;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out.w.modes.emplace(ks[i], ws[i]);
    out.u.modes.emplace(ks[i], us[i]);
  }
  return out;
}

ConvergenceReport convergence_study(const StripLoad& f, const std::vector<double>& g_list, const LameParams& lame,
                                    const StripGrid& grid, const std::string& case_id) {
  if (g_list.size() < 4) throw InvalidArgument("convergence study needs at least four g values");
  for (std::size_t i = 1; i < g_list.size(); ++i)
    if (!(g_list[i] < g_list[i - 1])) throw InvalidArgument("g list must be strictly decreasing");
  const StripSolution u0 = solve_strip_classical(f, lame, grid);
  ConvergenceReport report;
  for (double g : g_list) {
    const ProblemIIIResult r = solve_problem_III(f, g, lame, grid);
    for (int t = 0; t <= 2; ++t)
      report.rows.push_back({case_id, "strip", "pdo", g, grid.ny, t, strip_norm(r.u, &u0.u, t), 0.0});
  }
  report.sort_rows();
  report.fits = {report.fit(0, std::nullopt), report.fit(1, 1.4), report.fit(2, 0.45)};
  return report;
}

double probe_largest_g(const StripLoad& f, const LameParams& lame, const StripGrid& grid, double g_max, int steps) {
  auto ok = [&](double g) {
    try {
      solve_problem_III(f, g, lame, grid);
      return true;
    } catch (const SingularSystem&) {
      return false;
    }
  };
  if (ok(g_max)) return g_max;
  double hi = g_max, lo = 0.5 * g_max;
  int guard = 0;
  while (!ok(lo)) {
    hi = lo;
    lo *= 0.5;
    if (++guard > 30) throw SingularSystem("no admissible g found below g_max");
  }
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace gradelast
