#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <utility>

namespace dampwave {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Damping placement a in (0, pi) and complex damping constant alpha for the
/// interval model. A rational placement a = p*pi/q is stored as (p, q) and the
/// real placement is always derived from it.
class DampingParams {
 public:
  static DampingParams at(double a, cplx alpha);
  static DampingParams rational(int p, int q, cplx alpha);

  double a() const noexcept { return a_; }
  double b() const noexcept { return kPi - a_; }  // pi - a
  cplx alpha() const noexcept { return alpha_; }
  const std::optional<std::pair<int, int>>& ratio() const noexcept { return ratio_; }
  bool is_rational() const noexcept { return ratio_.has_value(); }

  /// Same placement, different damping.
  DampingParams with_alpha(cplx alpha) const;
  /// Parameters of the operator whose negative is the adjoint: alpha -> -conj(alpha).
  DampingParams adjoint_partner() const { return with_alpha(-std::conj(alpha_)); }

 private:
  DampingParams(double a, cplx alpha, std::optional<std::pair<int, int>> ratio)
      : a_(a), alpha_(alpha), ratio_(std::move(ratio)) {}

  double a_;
  cplx alpha_;
  std::optional<std::pair<int, int>> ratio_;
};

/// Axis-aligned rectangle in the lambda plane.
struct SpectralWindow {
  double re_min;
  double re_max;
  double im_min;
  double im_max;

  static SpectralWindow make(double re_min, double re_max, double im_min, double im_max);
  /// Symmetric strip [-re_half, re_half] x [im_min, im_max].
  static SpectralWindow strip(double re_half, double im_min, double im_max);

  bool contains(cplx z, double slack = 0.0) const noexcept {
    return z.real() >= re_min - slack && z.real() <= re_max + slack &&
           z.imag() >= im_min - slack && z.imag() <= im_max + slack;
  }
  cplx center() const noexcept {
    return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)};
  }
  double width() const noexcept { return re_max - re_min; }
  double height() const noexcept { return im_max - im_min; }
  /// Scales both half-extents about the center.
  SpectralWindow dilated(double factor) const;
};

int gcd_int(int a, int b);

/// Damping regime flag; |alpha -/+ 2| below this counts as critical.
inline constexpr double kCriticalSnap = 1e-9;

enum class Regime { Subcritical, CriticalPlus, CriticalMinus };

Regime regime_for(cplx alpha, double critical_value = 2.0);
const char* to_string(Regime regime);

}  // namespace dampwave
