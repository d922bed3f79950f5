#pragma once

// Damping polynomial of a rational placement a = p pi / q,
//
//   P_alpha(z) = (2 - alpha) z^q + alpha z^p + alpha z^{q-p} - (2 + alpha),
//
// whose roots zeta give the eigenvalue ladders through z = exp(-2 lambda pi / q).
// z = 1 is always a simple root.

#include <span>
#include <vector>

#include "dampwave/params.hpp"

namespace dampwave {

struct DampingPolynomial {
  std::vector<cplx> coeffs;  // ascending degree, trimmed to effective_degree
  int p = 0;
  int q = 0;
  cplx alpha;
  int effective_degree = 0;
  Regime regime = Regime::Subcritical;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// sum_j |c_j| |z|^j, the natural size of a rounding error in P(z).
  double magnitude(cplx z) const;
};

struct RootRecord {
  cplx zeta;
  double modulus = 0.0;
  double theta = 0.0;  // principal argument in (-pi, pi]
  int multiplicity = 1;

  static RootRecord make(cplx zeta, int multiplicity);
  bool is_unit() const noexcept;  // the trivial root zeta = 1
  bool is_zero() const noexcept { return zeta == cplx(0.0); }
};

/// For alpha within kCriticalSnap of +/-2 the coefficients are built from the
/// exact critical value, so the leading (or constant) terms vanish exactly.
DampingPolynomial build_polynomial(int p, int q, cplx alpha);

/// Relative clustering distance for merging two computed roots into a double root.
inline constexpr double kRootClusterTol = 1e-7;

/// All roots with multiplicity. The trivial root 1 comes first; roots at 0
/// (alpha = -2) come last; the rest are ordered by (theta, modulus).
std::vector<RootRecord> find_roots(const DampingPolynomial& poly);

/// Simultaneous (Aberth-Ehrlich) iteration for all roots of a general
/// polynomial with nonzero leading coefficient. Exposed for testing.
std::vector<cplx> aberth_roots(std::span<const cplx> coeffs, int max_sweeps = 500);

}  // namespace dampwave
