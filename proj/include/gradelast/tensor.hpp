#pragma once

// Dense Cartesian tensors of rank 1..6 over dimension 1..3.

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

namespace gradelast {

inline constexpr int kMaxRank = 6;

class Tensor {
 public:
  Tensor() = default;
  /// Zero tensor.
  Tensor(int rank, int dim);
  Tensor(int rank, int dim, std::vector<double> components);

  static Tensor identity(int dim);
  /// Polyadic of unit vectors, e.g. basis(3, {0, 1}) is e1 e2 in 3D.
  static Tensor basis(int dim, std::initializer_list<int> indices);

  int rank() const noexcept { return rank_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::initializer_list<int> idx) const { return data_[flat(idx)]; }
  double& operator()(std::initializer_list<int> idx) { return data_[flat(idx)]; }
  double at(std::span<const int> idx) const { return data_[flat(idx)]; }
  double& at(std::span<const int> idx) { return data_[flat(idx)]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::size_t flat(std::span<const int> idx) const;
  std::size_t flat(std::initializer_list<int> idx) const {
    return flat(std::span<const int>(idx.begin(), idx.size()));
  }
  /// Inverse of flat(): writes rank() digits into idx.
  void unflat(std::size_t f, std::span<int> idx) const;

  bool all_finite() const noexcept;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }

  bool operator==(const Tensor& o) const = default;

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

/// A permutation written in superscript form, 1-based: {2,1} is ^{21}.
class PermSpec {
 public:
  explicit PermSpec(std::vector<int> slots);
  PermSpec(std::initializer_list<int> slots) : PermSpec(std::vector<int>(slots)) {}
  static PermSpec identity(int rank);

  int rank() const noexcept { return static_cast<int>(slots_.size()); }
  int operator[](int m) const { return slots_[m]; }
  PermSpec inverse() const;

 private:
  std::vector<int> slots_;
};

/// Polyadic permutation: slot m of the result is slot sigma(m) of the input,
/// so (a1 a2 a3)^{312} = a3 a1 a2 and (A^{21})_{ij} = A_{ji}.
Tensor permute(const Tensor& t, const PermSpec& sigma);

/// Nearest-index contraction: the last m indices of a meet the first m of b
/// in reversed order, so a^{321} ⋮ b = sum a_ijk b_ijk.
Tensor multidot(const Tensor& a, const Tensor& b, int m);

/// Scalar value of a rank-0 tensor.
double scalar(const Tensor& t);

double frobenius(const Tensor& t);

/// Rank-3 tensor symmetric in its last two indices, stored reduced.
class SymTriadic {
 public:
  SymTriadic() = default;
  explicit SymTriadic(int dim);
  SymTriadic(int dim, std::vector<double> reduced);

  /// d * d(d+1)/2
  static int count(int dim) { return dim * dim * (dim + 1) / 2; }
  /// Reduced slot of (i, j, k); symmetric in j, k.
  static int slot(int dim, int i, int j, int k);
  /// Multiplicity of a reduced slot in the full tensor (1 or 2).
  static int multiplicity(int dim, int m);
  /// Unit reduced component m expanded to a full tensor.
  static Tensor unit(int dim, int m);

  int dim() const noexcept { return dim_; }
  std::span<const double> reduced() const noexcept { return reduced_; }
  std::span<double> reduced() noexcept { return reduced_; }
  Tensor expand() const;

 private:
  int dim_ = 0;
  std::vector<double> reduced_;
};

/// Projection onto the triadics symmetric in the last two indices.
SymTriadic sym_last_two(const Tensor& t);

}  // namespace gradelast
