#include "dampwave/rational_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dampwave/charfn.hpp"
#include "dampwave/errors.hpp"

namespace dampwave {

namespace {

// Merges records that coincide within tolerance into one record carrying the
// summed multiplicity.
std::vector<EigenvalueRecord> merge_collisions(std::vector<EigenvalueRecord> eigs) {
  sort_by_imag(eigs);
  std::vector<EigenvalueRecord> out;
  for (auto& e : eigs) {
    bool merged = false;
    for (auto& o : out) {
      if (std::abs(o.lambda - e.lambda) <= 1e-9 * std::max(1.0, std::abs(e.lambda))) {
        o.alg_multiplicity += e.alg_multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(e);
  }
  return out;
}

}  // namespace

cplx ladder_eigenvalue(const RootRecord& root, int q, long branch) {
  const double scale = -static_cast<double>(q) / (2.0 * kPi);
  return scale * cplx(std::log(root.modulus), root.theta + 2.0 * kPi * static_cast<double>(branch));
}

std::vector<EigenvalueRecord> roots_to_eigenvalues(const std::vector<RootRecord>& roots, int q,
                                                   const SpectralWindow& window,
                                                   const ResidualFn& residual) {
  std::vector<EigenvalueRecord> eigs;
  const double qd = static_cast<double>(q);
  constexpr double kSlack = 1e-12;
  int family = 1;
  for (const auto& root : roots) {
    if (root.is_zero()) continue;
    if (root.is_unit()) {
      if (window.re_min > kSlack || window.re_max < -kSlack) continue;
      const long lo = static_cast<long>(std::ceil(window.im_min / qd - kSlack));
      const long hi = static_cast<long>(std::floor(window.im_max / qd + kSlack));
      for (long n = lo; n <= hi; ++n) {
        if (n == 0) continue;
        const cplx lambda(0.0, qd * static_cast<double>(n));
        eigs.push_back({lambda, 1, n, 1, 1, residual(lambda)});
      }
      continue;
    }
    ++family;
    const double offset = root.theta / (2.0 * kPi);
    const long lo = static_cast<long>(std::ceil(-window.im_max / qd - offset - kSlack));
    const long hi = static_cast<long>(std::floor(-window.im_min / qd - offset + kSlack));
    for (long n = lo; n <= hi; ++n) {
      const cplx lambda = ladder_eigenvalue(root, q, n);
      if (!window.contains(lambda, kSlack)) continue;
      eigs.push_back({lambda, family, n, root.multiplicity, 1, residual(lambda)});
    }
  }
  return merge_collisions(std::move(eigs));
}

std::vector<EigenvalueRecord> ladder_eigenvalues(const std::vector<RootRecord>& roots, int q,
                                                 long max_branch, const ResidualFn& residual) {
  std::vector<EigenvalueRecord> eigs;
  int family = 1;
  for (const auto& root : roots) {
    if (root.is_zero()) continue;
    if (root.is_unit()) {
      for (long n = -max_branch; n <= max_branch; ++n) {
        if (n == 0) continue;
        const cplx lambda(0.0, static_cast<double>(q) * static_cast<double>(n));
        eigs.push_back({lambda, 1, n, 1, 1, residual(lambda)});
      }
      continue;
    }
    ++family;
    for (long n = -max_branch; n <= max_branch; ++n) {
      const cplx lambda = ladder_eigenvalue(root, q, n);
      eigs.push_back({lambda, family, n, root.multiplicity, 1, residual(lambda)});
    }
  }
  return eigs;
}

std::vector<EigenvalueRecord> detect_double_eigenvalues(std::vector<EigenvalueRecord> records,
                                                        const DampingParams& params) {
  for (auto& rec : records) {
    const CharValue cv = eval_char_derivatives(rec.lambda, params);
    const double scale = char_scale(rec.lambda, params.alpha());
    const bool f_zero = std::abs(cv.f) <= kZeroTol * scale;
    const bool f1_zero = std::abs(cv.f1) <= kDoubleTol * scale;
    const bool f2_zero = std::abs(cv.f2) <= kDoubleTol * scale;
    if (!f_zero) {
      throw SolverError(ErrorKind::NotEigenvalue,
                        "record is not a zero of the characteristic function (|F| / scale = " +
                            std::to_string(std::abs(cv.f) / scale) + ")");
    }
    if (f1_zero && f2_zero) {
      throw SolverError(ErrorKind::Multiplicity,
                        "F, F' and F'' vanish together: apparent triple eigenvalue");
    }
    const int alg = f1_zero ? 2 : 1;
    if (alg != rec.alg_multiplicity) {
      throw SolverError(ErrorKind::Multiplicity,
                        "root multiplicity " + std::to_string(rec.alg_multiplicity) +
                            " disagrees with derivative test " + std::to_string(alg));
    }
    rec.geo_multiplicity = 1;
  }
  return records;
}

SpectralWindow imaginary_band(double im_min, double im_max) {
  return SpectralWindow::make(-1e6, 1e6, im_min, im_max);
}

RationalSpectrum rational_spectrum(const DampingParams& params, const SpectralWindow& window) {
  if (!params.is_rational()) {
    throw SolverError(ErrorKind::Domain, "rational spectrum needs a rational placement");
  }
  const auto [p, q] = *params.ratio();
  RationalSpectrum out;
  out.polynomial = build_polynomial(p, q, params.alpha());
  out.roots = find_roots(out.polynomial);
  for (const auto& r : out.roots) {
    if (r.is_zero()) out.escaped.push_back(r);
  }
  const ResidualFn residual = [&](cplx l) { return std::abs(eval_char(l, params)); };
  out.eigenvalues = detect_double_eigenvalues(roots_to_eigenvalues(out.roots, q, window, residual),
                                              params);
  sort_by_imag(out.eigenvalues);
  return out;
}

}  // namespace dampwave
