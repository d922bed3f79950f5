#include "dampwave/trace.hpp"

#include <algorithm>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "dampwave/errors.hpp"
#include "dampwave/rational_spectrum.hpp"
#include "dampwave/spectrum.hpp"
#include "dampwave/stargraph.hpp"

namespace dampwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_{|n| > N} c1 / (q n - c2)^2 for one ladder.
double ladder_tail(double c1, double c2, int q, long N) {
  if (c1 == 0.0) return 0.0;
  const double shift = static_cast<double>(N) + 1.0 - c2 / q;
  if (shift <= 0.0) return kInf;
  return 2.0 * c1 * boost::math::trigamma(shift) / (static_cast<double>(q) * q);
}

void check_direction(TraceReport& rep, cplx alpha) {
  if (alpha.real() >= 0.0 && rep.gap < -rep.tolerance) {
    rep.violations.push_back("Re alpha >= 0 but spectral sum < trace");
  }
  if (alpha.real() <= 0.0 && rep.gap > rep.tolerance) {
    rep.violations.push_back("Re alpha <= 0 but spectral sum > trace");
  }
}

// Shared tail of the closed-form reports (interval with rational a, star graph).
void finish_closed(TraceReport& rep, const std::vector<RootRecord>& roots, int q, cplx alpha,
                   double correction) {
  std::vector<RootRecord> nontrivial;
  int families = 0;
  for (const auto& r : roots) {
    if (r.is_unit() || r.is_zero()) continue;
    nontrivial.push_back(r);
    ++families;
  }
  rep.spectral_sum_closed = spectral_sum_closed(nontrivial, q);
  const std::vector<EigenvalueRecord> ladders =
      ladder_eigenvalues(nontrivial, q, rep.truncation, [](cplx) { return 0.0; });
  const TruncatedSum ts = spectral_sum_truncated(ladders, q, rep.truncation, families);
  rep.spectral_sum_truncated = ts.value;
  rep.tail_bound = ts.tail_bound;
  rep.c1 = ts.c1;
  rep.c2 = ts.c2;
  rep.gap = *rep.spectral_sum_closed - rep.trace_re_inverse;
  rep.riesz_verdict = std::abs(rep.gap) <= rep.tolerance;
  rep.critical_correction = correction;
  rep.basis = VerdictBasis::ClosedForm;

  const bool rule = rep.regime == Regime::Subcritical;
  if (rep.riesz_verdict != rule) {
    rep.violations.push_back("verdict disagrees with the analytic rule (gap " + std::to_string(rep.gap) +
                             ")");
  }
  if (std::abs(rep.gap - correction) > rep.tolerance) {
    rep.violations.push_back("gap differs from the critical correction " + std::to_string(correction));
  }
  if (std::abs(ts.value - *rep.spectral_sum_closed) > ts.tail_bound + rep.tolerance) {
    rep.violations.push_back("truncated sum is outside the tail bound of the closed sum");
  }
  check_direction(rep, alpha);
}

void enforce_report(const TraceReport& rep) {
  if (rep.violations.empty()) return;
  std::string msg = "identity check failed:";
  for (const auto& v : rep.violations) msg += " [" + v + "]";
  throw SolverError(ErrorKind::IdentityViolation, msg);
}

}  // namespace

double trace_re_inverse(const DampingParams& params) {
  const double a = params.a();
  return -params.alpha().real() * (kPi - a) * a / kPi;
}

double trace_re_inverse_graph(int n, cplx alpha) {
  if (n < 1) throw SolverError(ErrorKind::Domain, "star graph needs n >= 1");
  return -kPi * alpha.real() / n;
}

double poisson_sum(const PoissonParams& p) {
  if (p.beta == 0.0 || !std::isfinite(p.beta) || !std::isfinite(p.gamma)) {
    throw SolverError(ErrorKind::Domain, "Poisson series needs a finite nonzero beta");
  }
  const double b = std::abs(p.beta);
  // (pi / 2b) sinh(2 pi b) / (cosh^2(pi b) - cos^2(pi g)); for large b the
  // ratio tends to 2 and the hyperbolic functions overflow.
  if (kPi * b > 350.0) return kPi / b;
  const double num = std::sinh(2.0 * kPi * b);
  const double den = std::sinh(kPi * b) * std::sinh(kPi * b) + std::sin(kPi * p.gamma) * std::sin(kPi * p.gamma);
  return kPi / (2.0 * b) * num / den;
}

double spectral_sum_closed(const std::vector<RootRecord>& roots, int q) {
  double sum = 0.0;
  for (const auto& r : roots) {
    if (r.is_unit()) throw SolverError(ErrorKind::Domain, "the root 1 is excluded from the spectral sum");
    if (r.is_zero()) throw SolverError(ErrorKind::Domain, "the root 0 carries no eigenvalues");
    sum += r.multiplicity * (kPi / q) * ((r.zeta + 1.0) / (1.0 - r.zeta)).real();
  }
  return sum;
}

TruncatedSum spectral_sum_truncated(const std::vector<EigenvalueRecord>& eigs, int q, long N,
                                    int families) {
  if (N < 1 || q < 1) throw SolverError(ErrorKind::Domain, "truncation and q must be positive");
  TruncatedSum out;
  std::map<int, std::set<long>> seen;
  std::map<int, int> mult;
  double max_re = 0.0;
  double max_offset = 0.0;
  for (const auto& e : eigs) {
    out.value += e.alg_multiplicity * (1.0 / e.lambda).real();
    if (e.family == 1) continue;
    seen[e.family].insert(e.branch);
    mult[e.family] = std::max(mult[e.family], e.alg_multiplicity);
    max_re = std::max(max_re, std::abs(e.lambda.real()));
    max_offset = std::max(max_offset, std::abs(e.lambda.imag() + static_cast<double>(q) * e.branch));
  }
  if (families >= 0 && static_cast<int>(seen.size()) != families) {
    throw SolverError(ErrorKind::Coverage, "expected " + std::to_string(families) + " ladders, got " +
                                               std::to_string(seen.size()));
  }
  for (const auto& [family, branches] : seen) {
    for (long n = -N; n <= N; ++n) {
      if (!branches.count(n)) {
        throw SolverError(ErrorKind::Coverage, "ladder " + std::to_string(family) + " misses branch " +
                                                   std::to_string(n));
      }
    }
  }
  out.c1 = 2.0 * max_re;
  out.c2 = 2.0 * max_offset;
  for (const auto& [family, m] : mult) out.tail_bound += m * ladder_tail(out.c1, out.c2, q, N);
  return out;
}

double critical_correction(int p, int q, int sign) {
  if (p <= 0 || q <= p || gcd_int(p, q) != 1) throw SolverError(ErrorKind::Domain, "need coprime 0 < p < q");
  if (sign != 1 && sign != -1) throw SolverError(ErrorKind::Domain, "sign must be +1 or -1");
  const int r = std::max(p, q - p);
  return sign * kPi * (q - r) / q;
}

const char* to_string(VerdictBasis b) { return b == VerdictBasis::ClosedForm ? "closed-form" : "rule-based"; }

double verdict_tolerance(double trace) { return std::max(1e-8, 1e-6 * std::abs(trace)); }

TraceReport livsic_report(const DampingParams& params, long N, bool enforce, double tolerance) {
  if (N < 1) throw SolverError(ErrorKind::Domain, "truncation must be positive");
  TraceReport rep;
  rep.model = "interval";
  rep.truncation = N;
  rep.trace_re_inverse = trace_re_inverse(params);
  rep.tolerance = tolerance > 0.0 ? tolerance : verdict_tolerance(rep.trace_re_inverse);
  rep.regime = regime_for(params.alpha());

  if (params.is_rational()) {
    const auto [p, q] = *params.ratio();
    rep.r = std::max(p, q - p);
    const DampingPolynomial poly = build_polynomial(p, q, params.alpha());
    const std::vector<RootRecord> roots = find_roots(poly);
    double correction = 0.0;
    if (rep.regime == Regime::CriticalPlus) correction = critical_correction(p, q, 1);
    if (rep.regime == Regime::CriticalMinus) correction = critical_correction(p, q, -1);
    finish_closed(rep, roots, q, params.alpha(), correction);
  } else {
    // No closed form: sum the located eigenvalues with |Im| <= N.
    const double h = static_cast<double>(N);
    const SpectrumResult sr = compute_spectrum_band(params, -h, h);
    double max_re = 0.0;
    double max_offset = 0.0;
    long up = 0;
    long down = 0;
    for (const auto& e : sr.eigenvalues) {
      rep.spectral_sum_truncated += e.alg_multiplicity * (1.0 / e.lambda).real();
      max_re = std::max(max_re, std::abs(e.lambda.real()));
      max_offset = std::max(max_offset, std::abs(e.lambda.imag() - static_cast<double>(e.branch)));
      if (e.branch > 0) up = std::max(up, e.branch);
      if (e.branch < 0) down = std::max(down, -e.branch);
    }
    rep.c1 = 2.0 * max_re;
    rep.c2 = 2.0 * max_offset;
    // Ranked eigenvalues beyond the computed ones sit at |Im| >= rank - c2.
    rep.tail_bound = 0.5 * (ladder_tail(rep.c1, rep.c2, 1, up) + ladder_tail(rep.c1, rep.c2, 1, down));
    rep.gap = rep.spectral_sum_truncated - rep.trace_re_inverse;
    rep.riesz_verdict = rep.regime == Regime::Subcritical;
    rep.basis = VerdictBasis::RuleBased;
    check_direction(rep, params.alpha());
  }
  if (enforce) enforce_report(rep);
  return rep;
}

TraceReport livsic_report_graph(int n, cplx alpha, long N, bool enforce, double tolerance) {
  if (N < 1) throw SolverError(ErrorKind::Domain, "truncation must be positive");
  const StarConfig cfg = StarConfig::make(n, alpha);
  TraceReport rep;
  rep.model = "star";
  rep.truncation = N;
  rep.trace_re_inverse = trace_re_inverse_graph(n, alpha);
  rep.tolerance = tolerance > 0.0 ? tolerance : verdict_tolerance(rep.trace_re_inverse);
  const DampingPolynomial poly = build_graph_polynomial(cfg);
  rep.regime = poly.regime;
  rep.r = poly.effective_degree;
  double correction = 0.0;
  // At alpha = +-n the spectral sum is 0, so the gap is minus the trace.
  if (rep.regime == Regime::CriticalPlus) correction = kPi;
  if (rep.regime == Regime::CriticalMinus) correction = -kPi;
  finish_closed(rep, find_roots(poly), 1, alpha, correction);
  if (enforce) enforce_report(rep);
  return rep;
}

}  // namespace dampwave
