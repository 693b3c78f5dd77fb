#pragma once

#include <vector>

namespace gradelast {

/// Gauss–Legendre rule on [0, 1]; exact for polynomials of degree 2n-1.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int n);

}  // namespace gradelast
