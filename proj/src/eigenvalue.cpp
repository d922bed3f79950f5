#include "dampwave/eigenvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dampwave {

void sort_by_imag(std::vector<EigenvalueRecord>& eigs) {
  std::stable_sort(eigs.begin(), eigs.end(), [](const auto& x, const auto& y) {
    if (x.lambda.imag() != y.lambda.imag()) return x.lambda.imag() < y.lambda.imag();
    return x.lambda.real() < y.lambda.real();
  });
}

void sort_for_truncation(std::vector<EigenvalueRecord>& eigs) {
  std::stable_sort(eigs.begin(), eigs.end(), [](const auto& x, const auto& y) {
    const double ax = std::abs(x.lambda.imag());
    const double ay = std::abs(y.lambda.imag());
    if (ax != ay) return ax < ay;
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    if (x.family != y.family) return x.family < y.family;
    return x.lambda.imag() < y.lambda.imag();
  });
}

int total_multiplicity(const std::vector<EigenvalueRecord>& eigs) {
  int total = 0;
  for (const auto& e : eigs) total += e.alg_multiplicity;
  return total;
}

double multiset_distance(const std::vector<EigenvalueRecord>& lhs,
                         const std::vector<EigenvalueRecord>& rhs) {
  std::vector<cplx> a;
  std::vector<cplx> b;
  for (const auto& e : lhs) a.insert(a.end(), e.alg_multiplicity, e.lambda);
  for (const auto& e : rhs) b.insert(b.end(), e.alg_multiplicity, e.lambda);
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();

  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cplx z : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace dampwave
