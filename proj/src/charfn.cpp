#include "dampwave/charfn.hpp"

#include <cmath>
#include <limits>

#include "dampwave/errors.hpp"

namespace dampwave {

namespace {

constexpr int kSeriesTerms = 10;

void require_finite(cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw SolverError(ErrorKind::Domain, "spectral parameter must be finite");
  }
}

// sinh(z) e^{-shift}, cosh(z) e^{-shift}; shift >= |Re z| keeps both exponents
// non-positive.
cplx sinh_shifted(cplx z, double shift) { return 0.5 * (std::exp(z - shift) - std::exp(-z - shift)); }
cplx cosh_shifted(cplx z, double shift) { return 0.5 * (std::exp(z - shift) + std::exp(-z - shift)); }

// Series of S around 0. sinh(l pi)/l contributes the even part and
// alpha sinh(l a) sinh(l b)/l = alpha (cosh(l pi) - cosh(l d)) / (2 l) the odd part.
cplx char_series(cplx lambda, double a, cplx alpha) {
  const double d = kPi - 2.0 * a;
  const cplx l2 = lambda * lambda;
  cplx even = 0.0;
  cplx odd = 0.0;
  cplx lpow = 1.0;       // l^{2k}
  cplx lodd = lambda;    // l^{2k-1}, k >= 1
  double pi_pow = kPi;   // pi^{2k+1}
  double pi_even = 1.0;  // pi^{2k}
  double d_even = 1.0;   // d^{2k}
  double fact_odd = 1.0;   // (2k+1)!
  double fact_even = 1.0;  // (2k)!
  for (int k = 0; k < kSeriesTerms; ++k) {
    even += pi_pow / fact_odd * lpow;
    if (k > 0) {
      odd += (pi_even - d_even) / (2.0 * fact_even) * lodd;
      lodd *= l2;
    }
    lpow *= l2;
    pi_pow *= kPi * kPi;
    pi_even *= kPi * kPi;
    d_even *= d * d;
    fact_even = fact_odd * (2 * k + 2);
    fact_odd = fact_even * (2 * k + 3);
  }
  return even + alpha * odd;
}

}  // namespace

cplx sinh_over(cplx lambda, double t) {
  const cplx w = lambda * t;
  if (std::abs(w) < kSeriesRadius) {
    const cplx w2 = w * w;
    // sinh(w)/w = 1 + w^2/6 + w^4/120 + w^6/5040 + ...
    return t * (1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0 * (1.0 + w2 / 72.0))));
  }
  return std::sinh(w) / lambda;
}

cplx ScaledValue::value() const {
  const double mag = std::abs(mantissa);
  if (mag == 0.0) return 0.0;
  if (std::log(mag) + log_scale > std::log(std::numeric_limits<double>::max())) {
    throw SolverError(ErrorKind::Overflow, "characteristic value exceeds double range");
  }
  return mantissa * std::exp(log_scale);
}

ScaledValue eval_char_scaled(cplx lambda, const DampingParams& params) {
  require_finite(lambda);
  if (std::abs(lambda) < kSeriesRadius) {
    return {char_series(lambda, params.a(), params.alpha()), 0.0};
  }
  const double shift = std::abs(lambda.real()) * kPi;
  const double d = kPi - 2.0 * params.a();
  const cplx alpha = params.alpha();
  const cplx num = sinh_shifted(lambda * kPi, shift) +
                   0.5 * alpha * (cosh_shifted(lambda * kPi, shift) - cosh_shifted(lambda * d, shift));
  return {num / lambda, shift};
}

cplx eval_char(cplx lambda, const DampingParams& params) {
  require_finite(lambda);
  if (std::abs(lambda) < kSeriesRadius) {
    return char_series(lambda, params.a(), params.alpha());
  }
  if (std::abs(lambda.real()) * kPi > kScaledThreshold) {
    return eval_char_scaled(lambda, params).value();
  }
  const cplx alpha = params.alpha();
  return (std::sinh(lambda * kPi) +
          alpha * std::sinh(lambda * params.a()) * std::sinh(lambda * params.b())) /
         lambda;
}

CharValue eval_char_derivatives(cplx lambda, const DampingParams& params) {
  require_finite(lambda);
  const cplx alpha = params.alpha();
  const double a = params.a();
  const double d = kPi - 2.0 * a;
  const cplx sh = std::sinh(lambda * kPi);
  const cplx ch = std::cosh(lambda * kPi);
  const cplx shd = std::sinh(lambda * d);
  const cplx chd = std::cosh(lambda * d);

  CharValue out;
  out.s = eval_char(lambda, params);
  // alpha/2 (cosh(l pi) - cosh(l d)) rewritten as a product to avoid cancellation near 0.
  out.f = sh + alpha * std::sinh(lambda * a) * std::sinh(lambda * params.b());
  out.f1 = kPi * ch + kPi * 0.5 * alpha * sh - d * 0.5 * alpha * shd;
  out.f2 = kPi * kPi * sh + kPi * kPi * 0.5 * alpha * ch - d * d * 0.5 * alpha * chd;
  for (const cplx v : {out.f, out.f1, out.f2}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw SolverError(ErrorKind::Overflow, "derivative evaluation overflowed");
    }
  }
  return out;
}

double char_scale(cplx lambda, cplx alpha) {
  return (1.0 + std::abs(alpha)) * std::exp(std::abs(lambda.real()) * kPi);
}

cplx eval_char_star(cplx lambda, int n, cplx alpha) {
  require_finite(lambda);
  if (n < 1) throw SolverError(ErrorKind::Domain, "star graph needs at least one edge");
  const cplx sh = std::sinh(lambda * kPi);
  const cplx ch = std::cosh(lambda * kPi);
  const cplx v = sinh_over(lambda, kPi) * (static_cast<double>(n) * ch + alpha * sh);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw SolverError(ErrorKind::Overflow, "star characteristic value overflowed");
  }
  return v;
}

cplx eval_char_polynomial(cplx lambda, int p, int q, cplx alpha) {
  require_finite(lambda);
  const auto params = DampingParams::rational(p, q, alpha);
  if (std::abs(lambda) < kSeriesRadius) return eval_char(lambda, params);

  const cplx z = std::exp(-2.0 * lambda * kPi / static_cast<double>(q));
  cplx zp = 1.0;
  cplx zqp = 1.0;
  cplx zq = 1.0;
  for (int k = 1; k <= q; ++k) {
    zq *= z;
    if (k == p) zp = zq;
    if (k == q - p) zqp = zq;
  }
  const cplx poly = (2.0 - alpha) * zq + alpha * zp + alpha * zqp - (2.0 + alpha);
  return -std::exp(lambda * kPi) * poly / (4.0 * lambda);
}

}  // namespace dampwave
