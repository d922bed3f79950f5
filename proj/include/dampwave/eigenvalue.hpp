#pragma once

#include <vector>

#include "dampwave/params.hpp"

namespace dampwave {

/// One point of the spectrum. For the rational and star-graph solvers,
/// family/branch follow the root ladders (family 1 is the purely imaginary
/// ladder lambda = i q n). Eigenvalues found by the contour solver carry
/// family 0 and a signed rank along the imaginary axis as branch.
struct EigenvalueRecord {
  cplx lambda;
  int family = 0;
  long branch = 0;
  int alg_multiplicity = 1;
  int geo_multiplicity = 1;
  double residual = 0.0;
};

/// Ascending imaginary part, ties by real part.
void sort_by_imag(std::vector<EigenvalueRecord>& eigs);

/// Ascending |Im|, ties by real part, then family, then sign of Im.
void sort_for_truncation(std::vector<EigenvalueRecord>& eigs);

/// Total algebraic multiplicity.
int total_multiplicity(const std::vector<EigenvalueRecord>& eigs);

/// Greedy nearest-neighbour matching of two spectra (multiplicities expanded).
/// Returns the largest matched distance, or +inf if the multisets differ in size.
double multiset_distance(const std::vector<EigenvalueRecord>& lhs,
                         const std::vector<EigenvalueRecord>& rhs);

}  // namespace dampwave
