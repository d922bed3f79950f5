#include "dampwave/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "dampwave/errors.hpp"
#include "dampwave/params.hpp"

namespace dampwave {

namespace {

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) throw SolverError(ErrorKind::Domain, "quadrature order must be positive");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss_legendre(order)).first;
  return it->second;
}

QuadratureRule composite_rule(double lo, double hi, int panels, int order) {
  if (panels < 1) throw SolverError(ErrorKind::Domain, "need at least one panel");
  const QuadratureRule& base = gauss_legendre(order);
  QuadratureRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int k = 0; k < order; ++k) {
      out.nodes.push_back(mid + 0.5 * h * base.nodes[k]);
      out.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return out;
}

}  // namespace dampwave
