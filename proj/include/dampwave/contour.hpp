#pragma once

// Eigenvalues for an arbitrary placement a: zeros of S are counted with the
// argument principle on rectangles, isolated by bisection and polished by
// Newton's method on F = l S.

#include <functional>
#include <vector>

#include "dampwave/eigenvalue.hpp"

namespace dampwave {

struct ContourOptions {
  double initial_step = 0.05;     // sampling step along each edge
  int max_points_per_edge = 1 << 14;
  double dilation = 1.0 + 1e-3;   // window growth after a boundary zero
  int max_dilations = 8;
  double boundary_tol = 1e-12;    // relative modulus that flags a boundary zero
};

/// Sample of a function along a contour: its value (only the phase is used)
/// and its modulus relative to the natural scale at that point.
struct PhaseSample {
  cplx value;
  double relative_modulus;
};
using PhaseFn = std::function<PhaseSample(cplx)>;

/// Winding number of f along the positively oriented boundary of the window.
/// Throws SolverError(BoundaryZero) when f nearly vanishes on the boundary or
/// the phase cannot be resolved within max_points_per_edge.
int winding_number(const SpectralWindow& window, const PhaseFn& f,
                   const ContourOptions& opts = {});

/// Phase sampler for the interval characteristic function S.
PhaseFn char_phase(const DampingParams& params);

struct ZeroCount {
  int count = 0;
  SpectralWindow window;  // window actually used (after dilations)
  int dilations = 0;
};

/// Zeros of S inside the window, counted with multiplicity. A boundary zero
/// triggers a dilation of the window and a retry.
ZeroCount count_zeros_detailed(const SpectralWindow& window, const DampingParams& params,
                               const ContourOptions& opts = {});
int count_zeros(const SpectralWindow& window, const DampingParams& params);

struct NewtonOptions {
  int max_iterations = 100;
  double max_radius = 4.0;  // iterates leaving this ball around the seed fail
  double tol = 1e-12;       // |F| <= tol * char_scale
};

struct NewtonResult {
  EigenvalueRecord record;
  int iterations = 0;
};

/// Newton iteration on F with a multiplicity-two step near double zeros.
NewtonResult newton_refine(cplx seed, const DampingParams& params,
                           const NewtonOptions& opts = {});

/// Default half-width of the strip containing every eigenvalue:
/// max(4, 2 |alpha|).
double localization_bound(cplx alpha);

/// Strip [-c, c] x [im_min, im_max] with c widened (doubling from the default
/// bound) until the zero count no longer changes.
SpectralWindow strip_window(const DampingParams& params, double im_min, double im_max);

struct SpectrumScan {
  std::vector<EigenvalueRecord> eigenvalues;  // sorted by imaginary part
  SpectralWindow window;                      // effective window
  int count = 0;                              // winding count of the window
};

SpectrumScan locate_spectrum(const SpectralWindow& window, const DampingParams& params);
std::vector<EigenvalueRecord> locate_eigenvalues(const SpectralWindow& window,
                                                 const DampingParams& params);

/// Signed rank along the imaginary axis (upper half 1, 2, ...; lower half
/// -1, -2, ...; real axis 0), written into the branch field.
void assign_imaginary_ranks(std::vector<EigenvalueRecord>& eigs);

}  // namespace dampwave
