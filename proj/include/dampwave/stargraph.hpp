#pragma once

// n-edge star graph with equal edges [0, pi] (x = 0 at the central vertex)
// and damping alpha at the vertex. Its characteristic function is
// S_n(l) = sinh(l pi)/l * (n cosh(l pi) + alpha sinh(l pi)); the second factor
// corresponds to P_{n,alpha}(z) = (n - alpha) z^2 + 2 alpha z - (n + alpha)
// with z = exp(-2 l pi).

#include <vector>

#include "dampwave/eigenvalue.hpp"
#include "dampwave/polynomial.hpp"

namespace dampwave {

struct StarConfig {
  int n = 1;
  cplx alpha;

  /// Validates n >= 1 and a finite alpha.
  static StarConfig make(int n, cplx alpha);
};

/// Coefficients of P_{n,alpha}; the z^2 coefficient is dropped at alpha = n
/// (snapped within kCriticalSnap). regime is taken relative to +-n.
DampingPolynomial build_graph_polynomial(const StarConfig& cfg);

struct GraphSpectrum {
  DampingPolynomial polynomial;
  std::vector<RootRecord> roots;
  std::vector<RootRecord> escaped;  // zeta = 0 at alpha = -n: the ladder escaped to infinity
  std::vector<EigenvalueRecord> eigenvalues;
};

/// Family 1: i k (k != 0); family 2: -(1/2 pi)(ln|zeta2| + i(theta + 2 pi k)),
/// zeta2 = (alpha + n)/(alpha - n), absent at alpha = +-n. Sorted by Im.
GraphSpectrum graph_spectrum(const StarConfig& cfg, const SpectralWindow& window);
std::vector<EigenvalueRecord> graph_eigenvalues(const StarConfig& cfg, const SpectralWindow& window);

/// Edge functions u_j(x) = c_j sinh(l (pi - x)) with velocity l u_j.
struct GraphMode {
  cplx lambda;
  cplx alpha;
  std::vector<cplx> edge_weights;  // c_j

  cplx value(int edge, double x) const;
  cplx derivative(int edge, double x) const;
  /// sum_j u_j'(0) - alpha lambda u(0)
  cplx vertex_residual() const;
  /// max_j |u_j(0) - u_1(0)|
  double continuity_residual() const;
};

/// Family 2: the common profile on every edge. Family 1 (sinh(l pi) = 0): the
/// profile vanishes at the vertex, so the flux condition needs sum c_j = 0 and
/// the mode is antisymmetric on the first two edges; for n = 1 no such mode
/// exists and SolverError(NotEigenvalue) is raised.
GraphMode graph_mode(cplx lambda, const StarConfig& cfg);

}  // namespace dampwave
