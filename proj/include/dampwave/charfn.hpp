#pragma once

// Characteristic functions of the Dirac-damped wave operator.
//
//   S(l)  = (sinh(l pi) + alpha sinh(l a) sinh(l (pi - a))) / l
//   F(l)  = l S(l) = sinh(l pi) + alpha/2 cosh(l pi) - alpha/2 cosh(l (pi - 2a))
//   S_n(l) = sinh(l pi)/l * (n cosh(l pi) + alpha sinh(l pi))      (n-edge star)
//
// Zeros of S (resp. S_n) are the eigenvalues, counted with algebraic
// multiplicity. S and S_n are entire; the removable singularity at l = 0 is
// evaluated from the power series.

#include "dampwave/params.hpp"

namespace dampwave {

/// Radius below which the power series replaces the closed form.
inline constexpr double kSeriesRadius = 1e-2;
/// |Re l| * pi above which the scaled evaluation path is used.
inline constexpr double kScaledThreshold = 700.0;

/// Value mantissa * exp(log_scale).
struct ScaledValue {
  cplx mantissa;
  double log_scale;

  /// Throws SolverError(Overflow) when the value does not fit a double.
  cplx value() const;
};

struct CharValue {
  cplx s;   // S
  cplx f;   // F = l S
  cplx f1;  // F'
  cplx f2;  // F''
};

cplx eval_char(cplx lambda, const DampingParams& params);
ScaledValue eval_char_scaled(cplx lambda, const DampingParams& params);

/// F, F', F'' from the hard-coded derivative formulas (and S alongside).
CharValue eval_char_derivatives(cplx lambda, const DampingParams& params);

/// Magnitude of the terms making up F at lambda; tolerances on F, F', F''
/// are taken relative to this.
double char_scale(cplx lambda, cplx alpha);

cplx eval_char_star(cplx lambda, int n, cplx alpha);

/// sinh(lambda t) / lambda, continuous through lambda = 0 (value t).
cplx sinh_over(cplx lambda, double t);

/// S via the damping polynomial, for a = p pi / q:
///   S = -(1 / 4l) e^{l pi} P_alpha(e^{-2 l pi / q}).
cplx eval_char_polynomial(cplx lambda, int p, int q, cplx alpha);

}  // namespace dampwave
