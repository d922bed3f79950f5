#pragma once

#include <functional>
#include <vector>

#include "dampwave/eigenvalue.hpp"
#include "dampwave/polynomial.hpp"

namespace dampwave {

/// |characteristic value| at lambda; stored as the record residual.
using ResidualFn = std::function<double(cplx)>;

/// Relative tolerance on |F| for a point to count as a zero, and on |F'| for
/// it to count as a double zero. Both are relative to char_scale.
inline constexpr double kZeroTol = 1e-9;
inline constexpr double kDoubleTol = 1e-9;

/// lambda_{k,n} = -(q / 2 pi) (ln|zeta_k| + i (theta_k + 2 pi n)).
cplx ladder_eigenvalue(const RootRecord& root, int q, long branch);

/// Eigenvalues inside the window. zeta = 1 gives the imaginary ladder i q n
/// (n != 0); zeta = 0 gives nothing.
std::vector<EigenvalueRecord> roots_to_eigenvalues(const std::vector<RootRecord>& roots, int q,
                                                   const SpectralWindow& window,
                                                   const ResidualFn& residual);

/// Every ladder truncated to branches |n| <= max_branch, independent of any window.
std::vector<EigenvalueRecord> ladder_eigenvalues(const std::vector<RootRecord>& roots, int q,
                                                 long max_branch, const ResidualFn& residual);

/// Confirms multiplicities from F and F' at each eigenvalue. A point where F,
/// F' and F'' all vanish raises SolverError(Multiplicity).
std::vector<EigenvalueRecord> detect_double_eigenvalues(std::vector<EigenvalueRecord> records,
                                                        const DampingParams& params);

struct RationalSpectrum {
  DampingPolynomial polynomial;
  std::vector<RootRecord> roots;
  std::vector<RootRecord> escaped;  // roots at zeta = 0, no finite eigenvalue
  std::vector<EigenvalueRecord> eigenvalues;
};

/// Full pipeline for a rational placement: polynomial, roots, window
/// eigenvalues with confirmed multiplicities, sorted by imaginary part.
RationalSpectrum rational_spectrum(const DampingParams& params, const SpectralWindow& window);

/// Wide real extent used when only an imaginary range is of interest.
SpectralWindow imaginary_band(double im_min, double im_max);

}  // namespace dampwave
