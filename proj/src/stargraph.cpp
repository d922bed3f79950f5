#include "dampwave/stargraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dampwave/charfn.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/rational_spectrum.hpp"

namespace dampwave {

StarConfig StarConfig::make(int n, cplx alpha) {
  if (n < 1) throw SolverError(ErrorKind::Domain, "star graph needs n >= 1, got " + std::to_string(n));
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw SolverError(ErrorKind::Domain, "damping constant must be finite");
  }
  return StarConfig{n, alpha};
}

DampingPolynomial build_graph_polynomial(const StarConfig& cfg) {
  const StarConfig c = StarConfig::make(cfg.n, cfg.alpha);
  const double n = c.n;
  DampingPolynomial poly;
  poly.p = 1;
  poly.q = 2;
  poly.alpha = c.alpha;
  poly.regime = regime_for(c.alpha, n);
  cplx eff = c.alpha;
  if (poly.regime == Regime::CriticalPlus) eff = n;
  if (poly.regime == Regime::CriticalMinus) eff = -n;
  poly.coeffs = {-(n + eff), 2.0 * eff, n - eff};
  if (poly.regime == Regime::CriticalPlus) poly.coeffs.pop_back();
  poly.effective_degree = static_cast<int>(poly.coeffs.size()) - 1;
  return poly;
}

GraphSpectrum graph_spectrum(const StarConfig& cfg, const SpectralWindow& window) {
  GraphSpectrum out;
  out.polynomial = build_graph_polynomial(cfg);
  out.roots = find_roots(out.polynomial);
  for (const auto& r : out.roots) {
    if (r.is_zero()) out.escaped.push_back(r);
    if (r.multiplicity != 1) {
      throw SolverError(ErrorKind::Multiplicity, "graph polynomial has a repeated root");
    }
  }
  const ResidualFn residual = [&](cplx l) { return std::abs(eval_char_star(l, cfg.n, cfg.alpha)); };
  // z = exp(-2 l pi) is the interval map with q = 1.
  out.eigenvalues = roots_to_eigenvalues(out.roots, 1, window, residual);
  for (const auto& e : out.eigenvalues) {
    if (e.alg_multiplicity != 1) {
      throw SolverError(ErrorKind::Multiplicity, "graph eigenvalue of index above one");
    }
  }
  sort_by_imag(out.eigenvalues);
  return out;
}

std::vector<EigenvalueRecord> graph_eigenvalues(const StarConfig& cfg, const SpectralWindow& window) {
  return graph_spectrum(cfg, window).eigenvalues;
}

cplx GraphMode::value(int edge, double x) const {
  return edge_weights.at(static_cast<std::size_t>(edge)) * std::sinh(lambda * (kPi - x));
}

cplx GraphMode::derivative(int edge, double x) const {
  return -lambda * edge_weights.at(static_cast<std::size_t>(edge)) * std::cosh(lambda * (kPi - x));
}

cplx GraphMode::vertex_residual() const {
  cplx flux = 0.0;
  for (std::size_t j = 0; j < edge_weights.size(); ++j) flux += derivative(static_cast<int>(j), 0.0);
  return flux - alpha * lambda * value(0, 0.0);
}

double GraphMode::continuity_residual() const {
  double worst = 0.0;
  for (std::size_t j = 1; j < edge_weights.size(); ++j) {
    worst = std::max(worst, std::abs(value(static_cast<int>(j), 0.0) - value(0, 0.0)));
  }
  return worst;
}

GraphMode graph_mode(cplx lambda, const StarConfig& cfg) {
  const StarConfig c = StarConfig::make(cfg.n, cfg.alpha);
  const double scale = (1.0 + std::abs(c.alpha) + c.n) * std::exp(2.0 * std::abs(lambda.real()) * kPi);
  if (std::abs(lambda) < 1e-8 ||
      std::abs(eval_char_star(lambda, c.n, c.alpha) * lambda) > 1e-8 * scale) {
    throw SolverError(ErrorKind::NotEigenvalue, "lambda is not an eigenvalue of the star graph");
  }
  GraphMode m{lambda, c.alpha, std::vector<cplx>(static_cast<std::size_t>(c.n), 1.0)};
  const cplx sh = std::sinh(lambda * kPi);
  const cplx second = static_cast<double>(c.n) * std::cosh(lambda * kPi) + c.alpha * sh;
  const double ref = std::abs(std::cosh(lambda * kPi)) * (c.n + std::abs(c.alpha));
  if (std::abs(second) <= 1e-8 * ref) return m;  // common profile
  // Only sinh(l pi) vanishes.
  if (c.n == 1) {
    throw SolverError(ErrorKind::NotEigenvalue,
                      "single edge: sinh(l pi) = 0 admits no mode with nonzero vertex flux balance");
  }
  std::fill(m.edge_weights.begin(), m.edge_weights.end(), cplx(0.0));
  m.edge_weights[0] = 1.0;
  m.edge_weights[1] = -1.0;
  return m;
}

}  // namespace dampwave
