#include "gradelast/assembly.hpp"

#include "gradelast/errors.hpp"
#include "gradelast/quadrature.hpp"

namespace gradelast {

template <class S>
SpMat<S> assemble_matrix(int ndofs, int elements, const ElementFn<S>& element, const Kernel& kernel, bool mirror) {
  const MatX<S> c = kernel.template cast<S>();
  std::vector<Eigen::Triplet<S>> trip;
  ElementBatch<S> batch;
  for (int e = 0; e < elements; ++e) {
    batch.dofs.clear();
    batch.points.clear();
    element(e, batch);
    const auto nloc = static_cast<Eigen::Index>(batch.dofs.size());
    MatX<S> em = MatX<S>::Zero(nloc, nloc);
    for (const auto& q : batch.points) em.noalias() += q.weight * (q.jets.conjugate() * c * q.jets.transpose());
    for (Eigen::Index a = 0; a < nloc; ++a)
      for (Eigen::Index b = 0; b < nloc; ++b) {
        const int ga = batch.dofs[static_cast<std::size_t>(a)];
        const int gb = batch.dofs[static_cast<std::size_t>(b)];
        if (em(a, b) == S(0)) continue;
        if (!mirror) {
          trip.emplace_back(ga, gb, em(a, b));
        } else if (ga <= gb) {
          trip.emplace_back(ga, gb, em(a, b));
          if (ga != gb) trip.emplace_back(gb, ga, em(a, b));
        }
      }
  }
  SpMat<S> m(ndofs, ndofs);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

template <class S>
VecX<S> assemble_vector(int ndofs, int elements, const ElementFn<S>& element, const LoadFn<S>& load) {
  VecX<S> f = VecX<S>::Zero(ndofs);
  ElementBatch<S> batch;
  VecX<S> l;
  for (int e = 0; e < elements; ++e) {
    batch.dofs.clear();
    batch.points.clear();
    element(e, batch);
    for (const auto& q : batch.points) {
      l = VecX<S>::Zero(q.jets.cols());
      load(q.x, std::span<S>(l.data(), static_cast<std::size_t>(l.size())));
      const VecX<S> contrib = q.weight * (q.jets.conjugate() * l);
      for (std::size_t a = 0; a < batch.dofs.size(); ++a) f[batch.dofs[a]] += contrib[static_cast<Eigen::Index>(a)];
    }
  }
  return f;
}

template SpMat<double> assemble_matrix(int, int, const ElementFn<double>&, const Kernel&, bool);
template SpMat<cplx> assemble_matrix(int, int, const ElementFn<cplx>&, const Kernel&, bool);
template VecX<double> assemble_vector(int, int, const ElementFn<double>&, const LoadFn<double>&);
template VecX<cplx> assemble_vector(int, int, const ElementFn<cplx>&, const LoadFn<cplx>&);

LineDiscretization::LineDiscretization(JetLayout layout, std::vector<std::shared_ptr<const FunctionSpace>> spaces,
                                       int quad)
    : layout_(std::move(layout)), spaces_(std::move(spaces)), quad_(quad) {
  if (static_cast<int>(spaces_.size()) != layout_.blocks()) throw InvalidArgument("one space per layout block");
  if (layout_.dim() > 2) throw InvalidArgument("line discretization supports dimension 1 or 2");
  for (int b = 0; b < layout_.blocks(); ++b) {
    const auto& sp = spaces_[static_cast<std::size_t>(b)];
    if (!sp) throw InvalidArgument("missing function space");
    if (sp->ncomp() != layout_.block(b).ncomp) throw InvalidArgument("space component count does not match its block");
    if (sp->mesh().elements() != spaces_.front()->mesh().elements() ||
        sp->mesh().length() != spaces_.front()->mesh().length())
      throw InvalidArgument("all blocks must share one mesh");
    offsets_.push_back(ndofs_);
    ndofs_ += sp->ndofs();
  }
}

void LineDiscretization::check_conformity(const Kernel& kernel) const {
  for (int b = 0; b < layout_.blocks(); ++b)
    if (layout_.derivative_use(kernel, b) > space(b).conformity())
      throw InvalidArgument(std::string("form needs derivatives beyond the conformity of ") +
                            to_string(space(b).family()));
}

template <class S, class JetFn>
void LineDiscretization::fill(int e, ElementBatch<S>& batch, JetFn jet) const {
  const GaussRule& rule = gauss_rule(quad_);
  const IntervalMesh& mesh = spaces_.front()->mesh();
  const double h = mesh.h();
  int nloc = 0;
  for (int b = 0; b < layout_.blocks(); ++b) nloc += space(b).local() * space(b).ncomp();
  std::array<int, 4> sd{};
  for (int b = 0; b < layout_.blocks(); ++b) {
    const FunctionSpace& sp = space(b);
    sp.element_scalar_dofs(e, std::span<int>(sd.data(), static_cast<std::size_t>(sp.local())));
    for (int c = 0; c < sp.ncomp(); ++c)
      for (int i = 0; i < sp.local(); ++i) batch.dofs.push_back(block_offset(b) + sp.dof(c, sd[static_cast<std::size_t>(i)]));
  }
  std::array<Jet1, 4> basis{};
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    QuadPoint<S> qp;
    qp.weight = rule.weights[q] * h;
    qp.x = {mesh.node(e) + rule.points[q] * h, 0.0};
    qp.jets = MatX<S>::Zero(nloc, layout_.total());
    int row = 0;
    for (int b = 0; b < layout_.blocks(); ++b) {
      const FunctionSpace& sp = space(b);
      sp.eval(e, rule.points[q], std::span<Jet1>(basis.data(), static_cast<std::size_t>(sp.local())));
      const int js = layout_.jet_size(layout_.block(b).order);
      for (int c = 0; c < sp.ncomp(); ++c)
        for (int i = 0; i < sp.local(); ++i, ++row) {
          std::array<S, 6> buf{};
          jet(layout_.block(b).order, basis[static_cast<std::size_t>(i)], std::span<S>(buf.data(), static_cast<std::size_t>(js)));
          for (int p = 0; p < js; ++p) qp.jets(row, layout_.offset(b, c) + p) = buf[static_cast<std::size_t>(p)];
        }
    }
    batch.points.push_back(std::move(qp));
  }
}

ElementFn<double> LineDiscretization::interval_elements() const {
  if (layout_.dim() != 1) throw InvalidArgument("interval assembly needs a dimension-1 layout");
  return [this](int e, ElementBatch<double>& batch) {
    fill(e, batch, [](int order, const Jet1& j, std::span<double> out) { interval_jet(order, j, out); });
  };
}

ElementFn<cplx> LineDiscretization::strip_elements(double k) const {
  if (layout_.dim() != 2) throw InvalidArgument("strip assembly needs a dimension-2 layout");
  return [this, k](int e, ElementBatch<cplx>& batch) {
    fill(e, batch, [k](int order, const Jet1& j, std::span<cplx> out) { strip_jet(order, k, j, out); });
  };
}

SpMat<double> LineDiscretization::assemble(const Kernel& kernel, bool mirror) const {
  check_conformity(kernel);
  return assemble_matrix<double>(ndofs_, elements(), interval_elements(), kernel, mirror);
}

SpMat<cplx> LineDiscretization::assemble_strip(const Kernel& kernel, double k, bool mirror) const {
  check_conformity(kernel);
  return assemble_matrix<cplx>(ndofs_, elements(), strip_elements(k), kernel, mirror);
}

RectSpace::RectSpace(RectangleMesh mesh, int degree, int ncomp) : mesh_(mesh), degree_(degree), ncomp_(ncomp) {
  mesh_.validate();
  if (degree != 1 && degree != 2) throw InvalidArgument("rectangle spaces support degree 1 or 2");
  if (ncomp < 1) throw InvalidArgument("function space needs at least one component");
}

std::array<double, 2> RectSpace::coordinate(int node) const {
  const int ix = node % nodes_x();
  const int iy = node / nodes_x();
  return {mesh_.lx * ix / (nodes_x() - 1), mesh_.ly * iy / (nodes_y() - 1)};
}

void RectSpace::basis_1d(double t, std::span<double> v, std::span<double> dv) const {
  if (degree_ == 1) {
    v[0] = 1.0 - t;
    v[1] = t;
    dv[0] = -1.0;
    dv[1] = 1.0;
  } else {
    v[0] = (1.0 - t) * (1.0 - 2.0 * t);
    v[1] = 4.0 * t * (1.0 - t);
    v[2] = t * (2.0 * t - 1.0);
    dv[0] = 4.0 * t - 3.0;
    dv[1] = 4.0 - 8.0 * t;
    dv[2] = 4.0 * t - 1.0;
  }
}

RectDiscretization::RectDiscretization(JetLayout layout, std::vector<std::shared_ptr<const RectSpace>> spaces,
                                       int quad)
    : layout_(std::move(layout)), spaces_(std::move(spaces)), quad_(quad) {
  if (layout_.dim() != 2) throw InvalidArgument("rectangle assembly needs a dimension-2 layout");
  if (static_cast<int>(spaces_.size()) != layout_.blocks()) throw InvalidArgument("one space per layout block");
  for (int b = 0; b < layout_.blocks(); ++b) {
    const auto& sp = spaces_[static_cast<std::size_t>(b)];
    if (!sp) throw InvalidArgument("missing function space");
    if (layout_.block(b).order != 1) throw InvalidArgument("rectangle Lagrange spaces are only H1-conforming");
    if (sp->ncomp() != layout_.block(b).ncomp) throw InvalidArgument("space component count does not match its block");
    if (sp->mesh().nx != spaces_.front()->mesh().nx || sp->mesh().ny != spaces_.front()->mesh().ny)
      throw InvalidArgument("all blocks must share one mesh");
    offsets_.push_back(ndofs_);
    ndofs_ += sp->ndofs();
  }
}

int RectDiscretization::side_elements(Side s) const {
  const auto& m = spaces_.front()->mesh();
  return (s == Side::Left || s == Side::Right) ? m.ny : m.nx;
}

std::array<double, 3> RectDiscretization::normal(Side s) {
  switch (s) {
    case Side::Left: return {-1.0, 0.0, 0.0};
    case Side::Right: return {1.0, 0.0, 0.0};
    case Side::Bottom: return {0.0, -1.0, 0.0};
    case Side::Top: return {0.0, 1.0, 0.0};
  }
  return {};
}

void RectDiscretization::fill(int ex, int ey, const std::vector<std::array<double, 3>>& pts,
                              ElementBatch<double>& batch) const {
  const auto& m = spaces_.front()->mesh();
  const double hx = m.lx / m.nx, hy = m.ly / m.ny;
  int nloc = 0;
  for (int b = 0; b < layout_.blocks(); ++b) {
    const RectSpace& sp = space(b);
    const int p = sp.degree();
    for (int c = 0; c < sp.ncomp(); ++c)
      for (int iy = 0; iy <= p; ++iy)
        for (int ix = 0; ix <= p; ++ix) {
          batch.dofs.push_back(block_offset(b) + sp.dof(c, sp.node(ex * p + ix, ey * p + iy)));
          ++nloc;
        }
  }
  std::array<double, 3> vx{}, dx{}, vy{}, dy{};
  for (const auto& pt : pts) {
    QuadPoint<double> qp;
    qp.weight = pt[2];
    qp.x = {(ex + pt[0]) * hx, (ey + pt[1]) * hy};
    qp.jets = MatX<double>::Zero(nloc, layout_.total());
    int row = 0;
    for (int b = 0; b < layout_.blocks(); ++b) {
      const RectSpace& sp = space(b);
      const int p = sp.degree();
      sp.basis_1d(pt[0], vx, dx);
      sp.basis_1d(pt[1], vy, dy);
      for (int c = 0; c < sp.ncomp(); ++c)
        for (int iy = 0; iy <= p; ++iy)
          for (int ix = 0; ix <= p; ++ix, ++row) {
            const int o = layout_.offset(b, c);
            qp.jets(row, o) = vx[ix] * vy[iy];
            qp.jets(row, o + 1) = dx[ix] * vy[iy] / hx;
            qp.jets(row, o + 2) = vx[ix] * dy[iy] / hy;
          }
    }
    batch.points.push_back(std::move(qp));
  }
}

ElementFn<double> RectDiscretization::volume_elements() const {
  return [this](int e, ElementBatch<double>& batch) {
    const auto& m = spaces_.front()->mesh();
    const GaussRule& rule = gauss_rule(quad_);
    const double hx = m.lx / m.nx, hy = m.ly / m.ny;
    std::vector<std::array<double, 3>> pts;
    for (std::size_t j = 0; j < rule.points.size(); ++j)
      for (std::size_t i = 0; i < rule.points.size(); ++i)
        pts.push_back({rule.points[i], rule.points[j], rule.weights[i] * rule.weights[j] * hx * hy});
    fill(e % m.nx, e / m.nx, pts, batch);
  };
}

ElementFn<double> RectDiscretization::side_elements_fn(Side s) const {
  return [this, s](int e, ElementBatch<double>& batch) {
    const auto& m = spaces_.front()->mesh();
    const GaussRule& rule = gauss_rule(quad_);
    const double hx = m.lx / m.nx, hy = m.ly / m.ny;
    std::vector<std::array<double, 3>> pts;
    int ex = 0, ey = 0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      const double t = rule.points[i], w = rule.weights[i];
      switch (s) {
        case Side::Left: pts.push_back({0.0, t, w * hy}); ex = 0; ey = e; break;
        case Side::Right: pts.push_back({1.0, t, w * hy}); ex = m.nx - 1; ey = e; break;
        case Side::Bottom: pts.push_back({t, 0.0, w * hx}); ex = e; ey = 0; break;
        case Side::Top: pts.push_back({t, 1.0, w * hx}); ex = e; ey = m.ny - 1; break;
      }
    }
    fill(ex, ey, pts, batch);
  };
}

}  // namespace gradelast
