#include "dampwave/spectrum.hpp"

#include "dampwave/contour.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/rational_spectrum.hpp"

namespace dampwave {

const char* to_string(SpectrumMethod m) {
  return m == SpectrumMethod::Rational ? "rational" : "contour";
}

SpectrumResult compute_spectrum(const DampingParams& params, const SpectralWindow& window) {
  SpectrumResult out;
  if (params.is_rational()) {
    RationalSpectrum rs = rational_spectrum(params, window);
    out.eigenvalues = std::move(rs.eigenvalues);
    out.roots = std::move(rs.roots);
    out.escaped = std::move(rs.escaped);
    out.window = window;
    out.method = SpectrumMethod::Rational;
    return out;
  }
  SpectrumScan scan = locate_spectrum(window, params);
  out.eigenvalues = std::move(scan.eigenvalues);
  out.window = scan.window;
  out.method = SpectrumMethod::Contour;
  return out;
}

SpectrumResult compute_spectrum_band(const DampingParams& params, double im_min, double im_max) {
  if (params.is_rational()) return compute_spectrum(params, imaginary_band(im_min, im_max));
  return compute_spectrum(params, strip_window(params, im_min, im_max));
}

std::vector<EigenvalueRecord> leading_eigenvalues(const DampingParams& params, int count) {
  if (count < 1) throw SolverError(ErrorKind::Domain, "count must be positive");
  // Zeros of S have density about one per unit of Im on each side.
  double h = 0.5 * count + 2.25;
  for (int attempt = 0; attempt < 8; ++attempt, h *= 2.0) {
    std::vector<EigenvalueRecord> eigs = compute_spectrum_band(params, -h, h).eigenvalues;
    if (total_multiplicity(eigs) < count + 2) continue;
    sort_for_truncation(eigs);
    std::vector<EigenvalueRecord> out;
    int taken = 0;
    for (const auto& e : eigs) {
      if (taken >= count) break;
      out.push_back(e);
      taken += e.alg_multiplicity;
    }
    return out;
  }
  throw SolverError(ErrorKind::Coverage, "could not collect the requested number of eigenvalues");
}

}  // namespace dampwave
