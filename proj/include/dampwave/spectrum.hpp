#pragma once

// Solver dispatch: rational placements go through the damping polynomial,
// everything else through the argument-principle solver.

#include <vector>

#include "dampwave/eigenvalue.hpp"
#include "dampwave/polynomial.hpp"

namespace dampwave {

enum class SpectrumMethod { Rational, Contour };
const char* to_string(SpectrumMethod m);

struct SpectrumResult {
  std::vector<EigenvalueRecord> eigenvalues;  // sorted by imaginary part
  SpectralWindow window{};                    // window actually searched
  SpectrumMethod method = SpectrumMethod::Rational;
  std::vector<RootRecord> roots;    // rational path only
  std::vector<RootRecord> escaped;  // roots at zeta = 0 (rational path only)
};

SpectrumResult compute_spectrum(const DampingParams& params, const SpectralWindow& window);

/// Every eigenvalue with im_min <= Im <= im_max. The contour path widens the
/// real extent until the zero count is stable.
SpectrumResult compute_spectrum_band(const DampingParams& params, double im_min, double im_max);

/// The first `count` eigenvalues in truncation order (|Im| ascending), counted
/// with algebraic multiplicity; a double eigenvalue is never split.
std::vector<EigenvalueRecord> leading_eigenvalues(const DampingParams& params, int count);

}  // namespace dampwave
