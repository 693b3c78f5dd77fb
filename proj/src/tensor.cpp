#include "gradelast/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gradelast/errors.hpp"

namespace gradelast {
namespace {

std::size_t ipow(int d, int r) {
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) n *= static_cast<std::size_t>(d);
  return n;
}

void require_finite(const Tensor& t, const char* op) {
  if (!t.all_finite()) throw InvalidArgument(std::string(op) + ": non-finite tensor component");
}

}  // namespace

Tensor::Tensor(int rank, int dim) : rank_(rank), dim_(dim) {
  if (rank < 0 || rank > kMaxRank) throw InvalidArgument("tensor rank out of range");
  if (dim < 1 || dim > 3) throw InvalidArgument("tensor dimension must be 1, 2 or 3");
  data_.assign(ipow(dim, rank), 0.0);
}

Tensor::Tensor(int rank, int dim, std::vector<double> components) : Tensor(rank, dim) {
  if (components.size() != data_.size()) throw InvalidArgument("component count must equal d^r");
  data_ = std::move(components);
  require_finite(*this, "Tensor");
}

Tensor Tensor::identity(int dim) {
  Tensor t(2, dim);
  for (int i = 0; i < dim; ++i) t({i, i}) = 1.0;
  return t;
}

Tensor Tensor::basis(int dim, std::initializer_list<int> indices) {
  Tensor t(static_cast<int>(indices.size()), dim);
  for (int i : indices)
    if (i < 0 || i >= dim) throw InvalidArgument("basis index out of range");
  t.at(std::span<const int>(indices.begin(), indices.size())) = 1.0;
  return t;
}

std::size_t Tensor::flat(std::span<const int> idx) const {
  std::size_t f = 0;
  for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return f;
}

void Tensor::unflat(std::size_t f, std::span<int> idx) const {
  for (int m = rank_ - 1; m >= 0; --m) {
    idx[m] = static_cast<int>(f % static_cast<std::size_t>(dim_));
    f /= static_cast<std::size_t>(dim_);
  }
}

bool Tensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (o.rank_ != rank_ || o.dim_ != dim_) throw InvalidArgument("tensor shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (o.rank_ != rank_ || o.dim_ != dim_) throw InvalidArgument("tensor shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

PermSpec::PermSpec(std::vector<int> slots) : slots_(std::move(slots)) {
  std::vector<int> sorted = slots_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i) + 1) throw InvalidArgument("PermSpec is not a permutation of 1..r");
}

PermSpec PermSpec::identity(int rank) {
  std::vector<int> s(static_cast<std::size_t>(rank));
  std::iota(s.begin(), s.end(), 1);
  return PermSpec(std::move(s));
}

PermSpec PermSpec::inverse() const {
  std::vector<int> inv(slots_.size());
  for (std::size_t m = 0; m < slots_.size(); ++m) inv[static_cast<std::size_t>(slots_[m] - 1)] = static_cast<int>(m) + 1;
  return PermSpec(std::move(inv));
}

Tensor permute(const Tensor& t, const PermSpec& sigma) {
  if (sigma.rank() != t.rank()) throw InvalidArgument("permute: permutation length differs from tensor rank");
  require_finite(t, "permute");
  Tensor out(t.rank(), t.dim());
  std::array<int, kMaxRank> in_idx{};
  std::array<int, kMaxRank> out_idx{};
  const auto r = static_cast<std::size_t>(t.rank());
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.unflat(f, std::span<int>(in_idx.data(), r));
    for (std::size_t m = 0; m < r; ++m) out_idx[m] = in_idx[static_cast<std::size_t>(sigma[static_cast<int>(m)] - 1)];
    out.at(std::span<const int>(out_idx.data(), r)) = t.data()[f];
  }
  return out;
}

Tensor multidot(const Tensor& a, const Tensor& b, int m) {
  if (a.dim() != b.dim()) throw InvalidArgument("multidot: dimension mismatch");
  if (m < 0 || m > std::min(a.rank(), b.rank())) throw InvalidArgument("multidot: contraction multiplicity too large");
  require_finite(a, "multidot");
  require_finite(b, "multidot");
  const int d = a.dim();
  const std::size_t na = ipow(d, a.rank() - m);  // free part of a
  const std::size_t nb = ipow(d, b.rank() - m);  // free part of b
  const std::size_t nc = ipow(d, m);
  // b's leading block is addressed in reversed digit order
  std::vector<std::size_t> rev(nc);
  for (std::size_t s = 0; s < nc; ++s) {
    std::size_t x = s, r = 0;
    for (int k = 0; k < m; ++k) {
      r = r * static_cast<std::size_t>(d) + x % static_cast<std::size_t>(d);
      x /= static_cast<std::size_t>(d);
    }
    rev[s] = r;
  }
  Tensor c(a.rank() + b.rank() - 2 * m, d);
  auto ad = a.data();
  auto bd = b.data();
  auto cd = c.data();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t s = 0; s < nc; ++s) {
      const double av = ad[i * nc + s];
      if (av == 0.0) continue;
      const std::size_t brow = rev[s] * nb;
      for (std::size_t j = 0; j < nb; ++j) cd[i * nb + j] += av * bd[brow + j];
    }
  }
  return c;
}

double scalar(const Tensor& t) {
  if (t.rank() != 0) throw InvalidArgument("scalar(): tensor is not rank 0");
  return t.data()[0];
}

double frobenius(const Tensor& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return std::sqrt(s);
}

SymTriadic::SymTriadic(int dim) : dim_(dim), reduced_(static_cast<std::size_t>(count(dim)), 0.0) {
  if (dim < 1 || dim > 3) throw InvalidArgument("SymTriadic dimension must be 1, 2 or 3");
}

SymTriadic::SymTriadic(int dim, std::vector<double> reduced) : SymTriadic(dim) {
  if (reduced.size() != reduced_.size()) throw InvalidArgument("SymTriadic: wrong reduced component count");
  reduced_ = std::move(reduced);
}

int SymTriadic::slot(int dim, int i, int j, int k) {
  if (j > k) std::swap(j, k);
  // pairs (j,k), j<=k, enumerated row by row
  const int pair = j * dim - j * (j - 1) / 2 + (k - j);
  return i * (dim * (dim + 1) / 2) + pair;
}

int SymTriadic::multiplicity(int dim, int m) {
  const int npair = dim * (dim + 1) / 2;
  int p = m % npair;
  for (int j = 0; j < dim; ++j) {
    const int len = dim - j;
    if (p < len) return p == 0 ? 1 : 2;
    p -= len;
  }
  return 1;
}

Tensor SymTriadic::unit(int dim, int m) {
  SymTriadic s(dim);
  s.reduced_[static_cast<std::size_t>(m)] = 1.0;
  return s.expand();
}

Tensor SymTriadic::expand() const {
  Tensor t(3, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) t({i, j, k}) = reduced_[static_cast<std::size_t>(slot(dim_, i, j, k))];
  return t;
}

SymTriadic sym_last_two(const Tensor& t) {
  if (t.rank() != 3) throw InvalidArgument("sym_last_two: rank-3 tensor required");
  const int d = t.dim();
  SymTriadic s(d);
  auto r = s.reduced();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k)
        r[static_cast<std::size_t>(SymTriadic::slot(d, i, j, k))] = 0.5 * (t({i, j, k}) + t({i, k, j}));
  return s;
}

}  // namespace gradelast
