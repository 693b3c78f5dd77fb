#pragma once

#include <vector>

namespace gradelast {

/// Uniform mesh of [0, L].
class IntervalMesh {
 public:
  IntervalMesh(double length, int elements);

  double length() const noexcept { return length_; }
  int elements() const noexcept { return n_; }
  int vertices() const noexcept { return n_ + 1; }
  double h() const noexcept { return length_ / n_; }
  double node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// Element containing x (clamped to the mesh) and the local coordinate t in [0, 1].
  int locate(double x, double& t) const;

 private:
  double length_;
  int n_;
  std::vector<double> nodes_;
};

/// Flat periodic strip: tangential period 2π with modes -K..K, transverse [0, 1].
struct StripGrid {
  int modes = 1;  // K
  int ny = 8;     // transverse elements

  void validate() const;
  IntervalMesh transverse() const { return IntervalMesh(1.0, ny); }
};

/// Uniform nx x ny mesh of [0, Lx] x [0, Ly].
struct RectangleMesh {
  double lx = 1.0;
  double ly = 1.0;
  int nx = 2;
  int ny = 2;

  void validate() const;
};

}  // namespace gradelast
