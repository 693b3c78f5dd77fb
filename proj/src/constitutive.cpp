#include "gradelast/constitutive.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "gradelast/errors.hpp"

namespace gradelast {
namespace {

double max_abs(const Tensor& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

void require_unit(const Tensor& n) {
  if (n.rank() != 1) throw InvalidArgument("normal must be a vector");
  if (std::abs(frobenius(n) - 1.0) > 1e-12) throw InvalidArgument("normal is not a unit vector");
}

// Exact ∇∇u expressed through the strain gradient: ∂i∂j uk = ν_ijk + ν_jik − ν_kij.
Tensor hessian_from_strain_gradient(const Tensor& nu) {
  const int d = nu.dim();
  Tensor w(3, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) w({i, j, k}) = nu({i, j, k}) + nu({j, i, k}) - nu({k, i, j});
  return w;
}

// The eight index maps generated by ^{132456}, ^{123546}, ^{654321}.
std::array<std::array<int, 6>, 8> hexadic_group() {
  const std::array<int, 6> id{0, 1, 2, 3, 4, 5};
  auto compose = [](const std::array<int, 6>& p, const std::array<int, 6>& q) {
    std::array<int, 6> r{};
    for (int m = 0; m < 6; ++m) r[m] = p[q[m]];
    return r;
  };
  const std::array<int, 6> s1{0, 2, 1, 3, 4, 5};
  const std::array<int, 6> s2{0, 1, 2, 4, 3, 5};
  const std::array<int, 6> s3{5, 4, 3, 2, 1, 0};
  std::array<std::array<int, 6>, 8> g{};
  int n = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        auto p = id;
        if (a) p = compose(p, s1);
        if (b) p = compose(p, s2);
        if (c) p = compose(p, s3);
        g[n++] = p;
      }
  return g;
}

}  // namespace

void LameParams::validate() const {
  if (!std::isfinite(lambda) || !std::isfinite(mu)) throw InvalidArgument("Lamé parameters must be finite");
  if (!(mu > 0.0)) throw InvalidArgument("Lamé mu must be positive");
  if (!(3.0 * lambda + 2.0 * mu > 0.0)) throw InvalidArgument("3 lambda + 2 mu must be positive");
}

void GradientParams::validate() const {
  for (double v : a)
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("gradient parameters a1..a5 must be finite and >= 0");
}

bool GradientParams::all_zero() const noexcept {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

double GradientParams::min_nonzero() const noexcept {
  double m = 0.0;
  for (double v : a)
    if (v != 0.0 && (m == 0.0 || v < m)) m = v;
  return m;
}

double GradientParams::one_d_modulus() const noexcept { return 2.0 * (a[0] + a[1] + a[2] + a[3] + a[4]); }

GradientParams simple_gradient_params(double g, const LameParams& lame) {
  if (!(g >= 0.0)) throw InvalidArgument("g must be >= 0");
  if (lame.lambda < 0.0) throw InvalidArgument("simple gradient model needs lambda >= 0");
  GradientParams p;
  p.a[1] = 0.5 * lame.lambda * g * g;
  p.a[3] = lame.mu * g * g;
  return p;
}

GradientParams one_d_gradient_params(double g, double modulus) {
  if (!(g >= 0.0) || !(modulus > 0.0)) throw InvalidArgument("one_d_gradient_params: g >= 0 and modulus > 0 required");
  GradientParams p;
  p.a[3] = 0.5 * modulus * g * g;
  return p;
}

Tensor strain(const Tensor& grad_u) {
  if (grad_u.rank() != 2) throw InvalidArgument("strain: rank-2 gradient required");
  Tensor e = grad_u + permute(grad_u, {2, 1});
  return 0.5 * e;
}

Tensor cauchy_stress(const Tensor& e, const LameParams& lame) {
  if (e.rank() != 2) throw InvalidArgument("cauchy_stress: rank-2 strain required");
  const double scale = std::max(1.0, max_abs(e));
  if (max_abs(e - permute(e, {2, 1})) > 1e-13 * scale) throw InvalidArgument("cauchy_stress: strain is not symmetric");
  const int d = e.dim();
  double tr = 0.0;
  for (int i = 0; i < d; ++i) tr += e({i, i});
  return 2.0 * lame.mu * e + (lame.lambda * tr) * Tensor::identity(d);
}

Tensor double_stress_direct(const Tensor& w, const GradientParams& params) {
  if (w.rank() != 3) throw InvalidArgument("double_stress_direct: rank-3 ∇∇u required");
  const double scale = std::max(1.0, max_abs(w));
  if (max_abs(w - permute(w, {2, 1, 3})) > 1e-13 * scale)
    throw InvalidArgument("double_stress_direct: ∇∇u must be symmetric in its derivative slots");
  const int d = w.dim();
  Tensor lap(1, d), graddiv(1, d);
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m) {
      lap({k}) += w({m, m, k});
      graddiv({k}) += w({k, m, m});
    }
  Tensor il(3, d), ig(3, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      il({i, i, k}) = lap({k});
      ig({i, i, k}) = graddiv({k});
    }
  const PermSpec p312{3, 1, 2}, p231{2, 3, 1}, p132{1, 3, 2};
  const auto& a = params.a;
  Tensor mu = (0.5 * a[0]) * (permute(il, p312) + ig + permute(ig, p312) + permute(ig, p132));
  mu += (2.0 * a[1]) * permute(ig, p312);
  mu += (0.5 * a[2]) * (il + ig + permute(il, p132) + permute(ig, p132));
  mu += a[3] * (w + permute(w, p231));
  mu += (0.5 * a[4]) * (2.0 * permute(w, p312) + w + permute(w, p231));
  return mu;
}

HexadicH HexadicH::from_components(const GradientParams& params, Tensor components) {
  if (components.rank() != 6) throw InvalidArgument("HexadicH needs a rank-6 tensor");
  HexadicH h;
  h.h_ = std::move(components);
  h.params_ = params;
  return h;
}

double HexadicH::bilinear(const Tensor& eta, const Tensor& nu) const {
  return scalar(multidot(permute(eta, {3, 2, 1}), apply(nu), 3));
}

std::vector<double> HexadicH::reduced_form() const {
  const int d = dim();
  const int n = SymTriadic::count(d);
  std::vector<Tensor> units;
  std::vector<Tensor> images;
  for (int m = 0; m < n; ++m) {
    units.push_back((1.0 / std::sqrt(double(SymTriadic::multiplicity(d, m)))) * SymTriadic::unit(d, m));
    images.push_back(apply(units.back()));
  }
  std::vector<double> q(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      q[static_cast<std::size_t>(r * n + c)] = scalar(multidot(permute(units[r], {3, 2, 1}), images[c], 3));
  return q;
}

double HexadicH::smallest_eigenvalue() const {
  const int n = SymTriadic::count(dim());
  const auto q = reduced_form();
  Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(q.data(), n, n);
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

HexadicH build_H(const GradientParams& params, int dim) {
  params.validate();
  const int d = dim;
  const int ns = SymTriadic::count(d);
  // Five-parameter double stress of each reduced unit strain gradient.
  std::vector<Tensor> columns;
  columns.reserve(static_cast<std::size_t>(ns));
  for (int m = 0; m < ns; ++m) columns.push_back(double_stress_direct(hessian_from_strain_gradient(SymTriadic::unit(d, m)), params));

  // Raw kernel: H_{abcpqr} nu_{rqp} reproduces the direct double stress after projecting nu.
  Tensor raw(6, d);
  std::array<int, 6> idx{};
  for (std::size_t f = 0; f < raw.size(); ++f) {
    raw.unflat(f, idx);
    const int r = idx[5], q = idx[4], p = idx[3];
    const double weight = (q == p) ? 1.0 : 0.5;
    raw.data()[f] = weight * columns[static_cast<std::size_t>(SymTriadic::slot(d, r, q, p))]({idx[0], idx[1], idx[2]});
  }

  // Orbit averaging over the symmetry group; every orbit member receives the
  // identical value so the symmetries hold exactly.
  const auto group = hexadic_group();
  Tensor h(6, d);
  std::vector<char> done(raw.size(), 0);
  std::array<int, 6> img{};
  for (std::size_t f = 0; f < raw.size(); ++f) {
    if (done[f]) continue;
    raw.unflat(f, idx);
    std::set<std::size_t> orbit;
    for (const auto& g : group) {
      for (int m = 0; m < 6; ++m) img[m] = idx[g[m]];
      orbit.insert(raw.flat(img));
    }
    double sum = 0.0;
    for (std::size_t o : orbit) sum += raw.data()[o];
    const double mean = sum / double(orbit.size());
    for (std::size_t o : orbit) {
      h.data()[o] = mean;
      done[o] = 1;
    }
  }

  HexadicH out;
  out.h_ = std::move(h);
  out.params_ = params;
  if (params.a[3] + params.a[4] > 0.0) out.coercivity_ = out.smallest_eigenvalue();

  // The condensed form must reproduce the direct double stress on symmetric triadics.
  for (int m = 0; m < ns; ++m) {
    const Tensor diff = out.apply(SymTriadic::unit(d, m)) - columns[static_cast<std::size_t>(m)];
    if (max_abs(diff) > 1e-12 * std::max(1.0, max_abs(columns[static_cast<std::size_t>(m)])))
      throw InternalError("build_H: condensed form disagrees with the five-parameter double stress");
  }
  return out;
}

double symmetry_defect(const HexadicH& h) {
  const Tensor& t = h.tensor();
  double defect = 0.0;
  for (const PermSpec& s : {PermSpec{1, 3, 2, 4, 5, 6}, PermSpec{1, 2, 3, 5, 4, 6}, PermSpec{6, 5, 4, 3, 2, 1}})
    defect = std::max(defect, max_abs(permute(t, s) - t));
  return defect;
}

double coercivity_certificate(const HexadicH& h, std::uint64_t seed, int samples) {
  const auto& a = h.params().a;
  if (a[3] == 0.0 && a[4] == 0.0) throw InvalidArgument("coercivity certificate requires a4, a5 not both zero");
  const double ca = h.cached_coercivity() ? *h.cached_coercivity() : h.smallest_eigenvalue();
  if (!(ca > 0.0))
    throw CoercivityFailure("double-stress quadratic form is not positive on symmetric triadics (smallest eigenvalue " +
                            std::to_string(ca) + ")");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = h.dim();
  SymTriadic nu(d);
  for (int s = 0; s < samples; ++s) {
    for (double& v : nu.reduced()) v = normal(rng);
    Tensor full = nu.expand();
    full *= 1.0 / frobenius(full);
    if (h.bilinear(full, full) < ca - 1e-12)
      throw InternalError("coercivity certificate: sampled quadratic form below the eigenvalue bound");
  }
  return ca;
}

Tensor traction_static(const Tensor& grad_u, const Tensor& grad_mu, const BoundaryPatch& patch, const LameParams& lame) {
  if (patch.curvature != 0.0) throw Unsupported("traction_static: curved boundary patches are not supported");
  const Tensor& n = patch.normal;
  require_unit(n);
  if (grad_mu.rank() != 4) throw InvalidArgument("traction_static: grad_mu must be rank 4");
  const int d = n.dim();
  const Tensor tau = cauchy_stress(strain(grad_u), lame);
  Tensor p = multidot(n, tau, 1);

  // ∂μ/∂n and the surface gradient ∇_S μ = ∇μ − n ∂μ/∂n
  const Tensor dn_mu = multidot(n, grad_mu, 1);
  Tensor surf(4, d);
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) surf({l, i, j, k}) = grad_mu({l, i, j, k}) - n({l}) * dn_mu({i, j, k});

  for (int c = 0; c < d; ++c) {
    double nn_term = 0.0, div_term = 0.0, div213_term = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) nn_term += n({a}) * n({b}) * dn_mu({b, a, c});
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        div_term += n({j}) * surf({i, i, j, c});
        div213_term += n({j}) * surf({i, j, i, c});
      }
    p({c}) += -nn_term - div_term - div213_term;
  }
  return p;
}

Tensor double_stress_gradient(const Tensor& d3u, const HexadicH& h) {
  if (d3u.rank() != 4) throw InvalidArgument("double_stress_gradient: rank-4 third derivative required");
  const int d = d3u.dim();
  Tensor g(4, d);
  for (int l = 0; l < d; ++l) {
    Tensor w(3, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) w({i, j, k}) = d3u({l, i, j, k});
    const Tensor mu = h.apply(sym_last_two(w));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) g({l, i, j, k}) = mu({i, j, k});
  }
  return g;
}

Tensor double_stress_trace(const Tensor& mu, const Tensor& normal) {
  if (mu.rank() != 3 || normal.rank() != 1) throw InvalidArgument("double_stress_trace: rank mismatch");
  return multidot(multidot(normal, mu, 1), normal, 1);
}

Tensor navier_apply(const FieldJet& jet, const LameParams& lame) {
  const Tensor& w = jet.hess_u;
  if (w.rank() != 3) throw InvalidArgument("navier_apply: rank-3 ∇∇u required");
  const int d = w.dim();
  Tensor out(1, d);
  for (int k = 0; k < d; ++k) {
    double lap = 0.0, gd = 0.0;
    for (int m = 0; m < d; ++m) {
      lap += w({m, m, k});
      gd += w({k, m, m});
    }
    out({k}) = lame.mu * lap + (lame.lambda + lame.mu) * gd;
  }
  return out;
}

}  // namespace gradelast
