#include "dampwave/params.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dampwave/errors.hpp"

namespace dampwave {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::BoundaryZero: return "boundary_zero";
    case ErrorKind::Multiplicity: return "multiplicity";
    case ErrorKind::NotEigenvalue: return "not_eigenvalue";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::SingularGram: return "singular_gram";
    case ErrorKind::IdentityViolation: return "identity_violation";
  }
  return "unknown";
}

namespace {

void check_alpha(cplx alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw SolverError(ErrorKind::Domain, "damping constant must be finite");
  }
}

}  // namespace

DampingParams DampingParams::at(double a, cplx alpha) {
  if (!(a > 0.0 && a < kPi)) {
    throw SolverError(ErrorKind::Domain, "placement a must lie strictly inside (0, pi), got " +
                                             std::to_string(a));
  }
  check_alpha(alpha);
  return DampingParams(a, alpha, std::nullopt);
}

DampingParams DampingParams::rational(int p, int q, cplx alpha) {
  if (p <= 0 || q <= p) {
    throw SolverError(ErrorKind::Domain, "rational placement needs 0 < p < q, got " +
                                             std::to_string(p) + "/" + std::to_string(q));
  }
  if (gcd_int(p, q) != 1) {
    throw SolverError(ErrorKind::Domain, "rational placement needs coprime p and q, got " +
                                             std::to_string(p) + "/" + std::to_string(q));
  }
  check_alpha(alpha);
  return DampingParams(p * kPi / q, alpha, std::make_pair(p, q));
}

DampingParams DampingParams::with_alpha(cplx alpha) const {
  check_alpha(alpha);
  return DampingParams(a_, alpha, ratio_);
}

SpectralWindow SpectralWindow::make(double re_min, double re_max, double im_min, double im_max) {
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) ||
      !std::isfinite(im_max)) {
    throw SolverError(ErrorKind::Domain, "spectral window bounds must be finite");
  }
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw SolverError(ErrorKind::Domain, "spectral window must have positive extent");
  }
  return SpectralWindow{re_min, re_max, im_min, im_max};
}

SpectralWindow SpectralWindow::strip(double re_half, double im_min, double im_max) {
  return make(-re_half, re_half, im_min, im_max);
}

SpectralWindow SpectralWindow::dilated(double factor) const {
  const cplx c = center();
  const double hw = 0.5 * width() * factor;
  const double hh = 0.5 * height() * factor;
  return make(c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh);
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

Regime regime_for(cplx alpha, double critical_value) {
  if (std::abs(alpha - critical_value) < kCriticalSnap) return Regime::CriticalPlus;
  if (std::abs(alpha + critical_value) < kCriticalSnap) return Regime::CriticalMinus;
  return Regime::Subcritical;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::CriticalPlus: return "critical_plus";
    case Regime::CriticalMinus: return "critical_minus";
  }
  return "unknown";
}

}  // namespace dampwave
