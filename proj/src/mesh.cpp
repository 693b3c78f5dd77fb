#include "gradelast/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "gradelast/errors.hpp"

namespace gradelast {

IntervalMesh::IntervalMesh(double length, int elements) : length_(length), n_(elements) {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("interval length must be positive");
  if (elements < 2) throw InvalidArgument("interval mesh needs at least 2 elements");
  nodes_.resize(static_cast<std::size_t>(n_ + 1));
  for (int v = 0; v <= n_; ++v) nodes_[static_cast<std::size_t>(v)] = length_ * v / n_;
}

int IntervalMesh::locate(double x, double& t) const {
  const double s = x / h();
  int e = static_cast<int>(std::floor(s));
  e = std::clamp(e, 0, n_ - 1);
  t = (x - nodes_[static_cast<std::size_t>(e)]) / h();
  return e;
}

void StripGrid::validate() const {
  if (modes < 1) throw InvalidArgument("strip grid needs K >= 1");
  if (ny < 8) throw InvalidArgument("strip grid needs n_y >= 8");
}

void RectangleMesh::validate() const {
  if (!(lx > 0.0) || !(ly > 0.0)) throw InvalidArgument("rectangle sides must be positive");
  if (nx < 1 || ny < 1) throw InvalidArgument("rectangle mesh needs at least one element per direction");
}

}  // namespace gradelast
