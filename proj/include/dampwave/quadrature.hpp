#pragma once

#include <vector>

namespace dampwave {

inline constexpr int kGaussOrder = 32;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order on [-1, 1].
const QuadratureRule& gauss_legendre(int order = kGaussOrder);

/// Composite Gauss-Legendre rule on [lo, hi] with equal panels.
QuadratureRule composite_rule(double lo, double hi, int panels, int order = kGaussOrder);

}  // namespace dampwave
