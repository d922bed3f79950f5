#pragma once

// Both sides of the Livsic comparison: the trace of Re A^{-1} against the sum
// of Re(1/lambda) over the spectrum, plus the critical-damping correction.

#include <optional>
#include <string>
#include <vector>

#include "dampwave/eigenvalue.hpp"
#include "dampwave/polynomial.hpp"

namespace dampwave {

/// -Re(alpha) a (pi - a) / pi.
double trace_re_inverse(const DampingParams& params);
/// -pi Re(alpha) / n for the n-edge star.
double trace_re_inverse_graph(int n, cplx alpha);

struct PoissonParams {
  double beta;
  double gamma;
};

/// sum_n 1 / ((n + gamma)^2 + beta^2) in closed form.
double poisson_sum(const PoissonParams& p);

/// sum over nontrivial roots of multiplicity * (pi/q) Re((zeta + 1)/(1 - zeta)).
/// Roots at zeta = 1 or zeta = 0 are rejected.
double spectral_sum_closed(const std::vector<RootRecord>& roots, int q);

struct TruncatedSum {
  double value = 0.0;
  double tail_bound = 0.0;
  double c1 = 0.0;  // 2 * max |Re lambda|
  double c2 = 0.0;  // 2 * max |Im lambda + q n|
};

/// Sum of Re(1/lambda) with multiplicity over ladder eigenvalues with branches
/// |n| <= N, and a bound for the omitted branches. Every ladder other than the
/// imaginary one must list all branches -N..N (else SolverError(Coverage));
/// `families` is the expected number of such ladders (-1: don't check).
TruncatedSum spectral_sum_truncated(const std::vector<EigenvalueRecord>& eigs, int q, long N,
                                    int families = -1);

/// +-pi (q - r)/q with r = max(p, q - p).
double critical_correction(int p, int q, int sign);

enum class VerdictBasis { ClosedForm, RuleBased };
const char* to_string(VerdictBasis b);

struct TraceReport {
  std::string model;  // "interval" or "star"
  double trace_re_inverse = 0.0;
  std::optional<double> spectral_sum_closed;
  double spectral_sum_truncated = 0.0;
  double tail_bound = 0.0;
  double gap = 0.0;  // closed sum (truncated sum if no closed form) minus trace
  double critical_correction = 0.0;
  Regime regime = Regime::Subcritical;
  bool riesz_verdict = true;
  int r = 0;
  long truncation = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double tolerance = 0.0;
  VerdictBasis basis = VerdictBasis::ClosedForm;
  std::vector<std::string> violations;  // failed consistency checks
};

/// max(1e-8, 1e-6 |trace|)
double verdict_tolerance(double trace);

/// Interval report. Rational placements use the closed spectral sum; other
/// placements sum contour eigenvalues with |Im| <= N and take the verdict from
/// the rule alpha != +-2. With enforce set, any violated check throws
/// SolverError(IdentityViolation). A positive `tolerance` replaces the default
/// verdict tolerance.
TraceReport livsic_report(const DampingParams& params, long N, bool enforce = true,
                          double tolerance = 0.0);

TraceReport livsic_report_graph(int n, cplx alpha, long N, bool enforce = true,
                                double tolerance = 0.0);

}  // namespace dampwave
