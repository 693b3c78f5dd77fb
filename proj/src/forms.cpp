#include "gradelast/forms.hpp"

#include "gradelast/errors.hpp"

namespace gradelast {

JetLayout::JetLayout(int dim, std::vector<FieldBlock> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  if (dim < 1 || dim > 3) throw InvalidArgument("jet layout dimension must be 1..3");
  for (const auto& b : blocks_) {
    if (b.ncomp < 1 || b.order < 1 || b.order > 2) throw InvalidArgument("invalid field block");
    offsets_.push_back(total_);
    total_ += b.ncomp * jet_size(b.order);
  }
}

int JetLayout::jet_size(int order) const {
  return order == 1 ? 1 + dim_ : 1 + dim_ + dim_ * (dim_ + 1) / 2;
}

int JetLayout::offset(int b, int comp) const {
  return offsets_[static_cast<std::size_t>(b)] + comp * jet_size(block(b).order);
}

int JetLayout::second(int b, int comp, int i, int j) const {
  if (block(b).order < 2) throw InvalidArgument("block carries no second derivatives");
  if (i > j) std::swap(i, j);
  return offset(b, comp) + 1 + dim_ + i * dim_ - i * (i - 1) / 2 + (j - i);
}

int JetLayout::derivative_use(const Eigen::MatrixXd& kernel, int b) const {
  int used = -1;
  const int js = jet_size(block(b).order);
  for (int c = 0; c < block(b).ncomp; ++c)
    for (int p = 0; p < js; ++p) {
      const int idx = offset(b, c) + p;
      if (kernel.row(idx).cwiseAbs().maxCoeff() == 0.0 && kernel.col(idx).cwiseAbs().maxCoeff() == 0.0) continue;
      const int ord = p == 0 ? 0 : (p <= dim_ ? 1 : 2);
      used = std::max(used, ord);
    }
  return used;
}

Kernel zero_kernel(const JetLayout& layout) { return Kernel::Zero(layout.total(), layout.total()); }

void add_elastic(Kernel& c, const JetLayout& layout, int bu, const LameParams& lame, double scale) {
  const int d = layout.dim();
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      c(layout.first(bu, l, j), layout.first(bu, l, j)) += scale * lame.mu;
      c(layout.first(bu, l, j), layout.first(bu, j, l)) += scale * lame.mu;
    }
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) c(layout.first(bu, j, j), layout.first(bu, k, k)) += scale * lame.lambda;
}

void add_fourth(Kernel& c, const JetLayout& layout, int bu, const HexadicH& h, double scale) {
  const int d = layout.dim();
  if (h.dim() != d) throw InvalidArgument("H dimension does not match the layout");
  const int n3 = d * d * d;
  Eigen::MatrixXd lmap = Eigen::MatrixXd::Zero(n3, layout.total());
  Tensor probe(3, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const auto r = static_cast<int>(probe.flat({i, j, k}));
        lmap(r, layout.second(bu, k, i, j)) += 0.5;
        lmap(r, layout.second(bu, j, i, k)) += 0.5;
      }
  Eigen::MatrixXd hm(n3, n3);
  const Tensor& t = h.tensor();
  for (int a = 0; a < n3; ++a) {
    std::array<int, 3> ia{};
    probe.unflat(static_cast<std::size_t>(a), ia);
    for (int x = 0; x < n3; ++x) {
      std::array<int, 3> ix{};
      probe.unflat(static_cast<std::size_t>(x), ix);
      hm(a, x) = t({ia[0], ia[1], ia[2], ix[2], ix[1], ix[0]});
    }
  }
  c += scale * (lmap.transpose() * hm * lmap);
}

void add_mass(Kernel& c, const JetLayout& layout, int b, double scale) {
  for (int comp = 0; comp < layout.block(b).ncomp; ++comp) c(layout.value(b, comp), layout.value(b, comp)) += scale;
}

void add_laplace(Kernel& c, const JetLayout& layout, int b, double scale) {
  for (int comp = 0; comp < layout.block(b).ncomp; ++comp)
    for (int i = 0; i < layout.dim(); ++i) c(layout.first(b, comp, i), layout.first(b, comp, i)) += scale;
}

Eigen::MatrixXd triadic_form(const HexadicH& h) {
  const int d = h.dim();
  const int n = SymTriadic::count(d);
  std::vector<Tensor> units;
  for (int m = 0; m < n; ++m) units.push_back(SymTriadic::unit(d, m));
  Eigen::MatrixXd q(n, n);
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p) q(m, p) = h.bilinear(units[static_cast<std::size_t>(m)], units[static_cast<std::size_t>(p)]);
  return q;
}

Eigen::MatrixXd triadic_stress(const HexadicH& h) {
  const int d = h.dim();
  const int n = SymTriadic::count(d);
  Eigen::MatrixXd s(d * d * d, n);
  for (int m = 0; m < n; ++m) {
    const Tensor mu = h.apply(SymTriadic::unit(d, m));
    for (int r = 0; r < d * d * d; ++r) s(r, m) = mu.data()[static_cast<std::size_t>(r)];
  }
  return s;
}

void add_mixed(Kernel& c, const JetLayout& layout, int bu, int bn, const LameParams& lame, const HexadicH& h,
               int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("mixed sign must be +1 or -1");
  const int d = layout.dim();
  const int n = SymTriadic::count(d);
  if (layout.block(bn).ncomp != n) throw InvalidArgument("ν block has the wrong component count");
  add_elastic(c, layout, bu, lame);
  const Eigen::MatrixXd q = triadic_form(h);
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p) c(layout.value(bn, m), layout.value(bn, p)) += -sign * q(m, p);
  const Eigen::MatrixXd s = triadic_stress(h);
  Tensor probe(3, d);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          const double v = s(static_cast<int>(probe.flat({i, j, k})), m);
          if (v == 0.0) continue;
          c(layout.first(bu, k, j), layout.first(bn, m, i)) += -v;
          c(layout.first(bn, m, i), layout.first(bu, k, j)) += -sign * v;
        }
}

void add_mixed_surface(Kernel& c, const JetLayout& layout, int bu, int bn, const HexadicH& h, int sign,
                       const std::array<double, 3>& normal) {
  const int d = layout.dim();
  const int n = SymTriadic::count(d);
  const Eigen::MatrixXd s = triadic_stress(h);
  Tensor probe(3, d);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          const double v = normal[static_cast<std::size_t>(i)] * s(static_cast<int>(probe.flat({i, j, k})), m);
          if (v == 0.0) continue;
          for (int l = 0; l < d; ++l) {
            const double p = (j == l ? 1.0 : 0.0) - normal[static_cast<std::size_t>(j)] * normal[static_cast<std::size_t>(l)];
            if (p == 0.0) continue;
            c(layout.first(bu, k, l), layout.value(bn, m)) += v * p;
            c(layout.value(bn, m), layout.first(bu, k, l)) += sign * v * p;
          }
        }
}

void interval_jet(int order, const Jet1& j, std::span<double> out) {
  out[0] = j[0];
  out[1] = j[1];
  if (order == 2) out[2] = j[2];
}

void strip_jet(int order, double k, const Jet1& j, std::span<std::complex<double>> out) {
  const std::complex<double> ik(0.0, k);
  out[0] = j[0];
  out[1] = ik * j[0];
  out[2] = j[1];
  if (order == 2) {
    out[3] = -k * k * j[0];
    out[4] = ik * j[1];
    out[5] = j[2];
  }
}

}  // namespace gradelast
