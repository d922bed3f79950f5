#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "dampwave/errors.hpp"
#include "dampwave/polynomial.hpp"
#include "dampwave/rational_spectrum.hpp"
#include "dampwave/trace.hpp"
#include "oracles.hpp"

using namespace dampwave;

namespace {

double brute_poisson(double beta, double gamma, long m = 2000000) {
  double s = 0.0;
  for (long n = -m; n <= m; ++n) s += 1.0 / ((n + gamma) * (n + gamma) + beta * beta);
  return s + 2.0 / (m + 0.5);  // integral tail on both sides
}

// Roots of (2 - alpha) z^q + alpha z^p + alpha z^(q-p) - (2 + alpha) other than z = 1.
std::vector<cplx> nontrivial_roots(int p, int q, cplx alpha) {
  std::vector<cplx> c(q + 1, 0.0);
  c[q] += 2.0 - alpha;
  c[p] += alpha;
  c[q - p] += alpha;
  c[0] -= 2.0 + alpha;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
  for (int i = 1; i < q; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < q; ++i) m(i, q - 1) = -c[i] / c[q];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<cplx> out;
  int best = 0;
  for (int i = 1; i < q; ++i) {
    if (std::abs(es.eigenvalues()[i] - 1.0) < std::abs(es.eigenvalues()[best] - 1.0)) best = i;
  }
  for (int i = 0; i < q; ++i) {
    if (i != best) out.push_back(es.eigenvalues()[i]);
  }
  return out;
}

// Sum of Re(1/lambda) along the ladder of zeta, by direct summation.
double ladder_sum_oracle(cplx zeta, int q) {
  const double L = std::log(std::abs(zeta));
  const double g = std::arg(zeta) / (2.0 * kPi);
  const double b = L / (2.0 * kPi);
  return -(2.0 * kPi / q) * L / (4.0 * kPi * kPi) * brute_poisson(b, g, 200000);
}

}  // namespace

TEST(Trace, Examples) {
  EXPECT_NEAR(trace_re_inverse(DampingParams::rational(1, 3, 1.0)), -2.0 * kPi / 9.0, 1e-15);
  EXPECT_NEAR(trace_re_inverse(DampingParams::rational(1, 2, cplx(2.0, 5.0))), -kPi / 2.0, 1e-15);
  EXPECT_EQ(trace_re_inverse(DampingParams::at(1.0, cplx(0.0, 3.0))), 0.0);
  EXPECT_NEAR(trace_re_inverse_graph(3, 3.0), -kPi, 1e-15);
  EXPECT_THROW(trace_re_inverse_graph(0, 1.0), SolverError);
}

TEST(Poisson, MatchesDirectSum) {
  for (double beta : {0.05, 0.3, 1.0, 2.5}) {
    for (double gamma : {0.0, 0.17, 0.5, -0.8}) {
      const double ref = brute_poisson(beta, gamma);
      EXPECT_NEAR(poisson_sum({beta, gamma}), ref, 1e-9 * ref) << beta << " " << gamma;
    }
  }
  EXPECT_NEAR(poisson_sum({200.0, 0.3}), kPi / 200.0, 1e-15);
  EXPECT_THROW(poisson_sum({0.0, 0.1}), SolverError);
}

TEST(SpectralSum, ClosedMatchesLadderSummation) {
  for (const auto& c : oracle::rational_suite(7, 10, 6, 6.0)) {
    double ref = 0.0;
    for (cplx z : nontrivial_roots(c.p, c.q, c.alpha)) ref += ladder_sum_oracle(z, c.q);
    const auto roots = find_roots(build_polynomial(c.p, c.q, c.alpha));
    std::vector<RootRecord> nt;
    for (const auto& r : roots) {
      if (!r.is_unit()) nt.push_back(r);
    }
    EXPECT_NEAR(spectral_sum_closed(nt, c.q), ref, 1e-6 * std::max(1.0, std::abs(ref)))
        << c.p << "/" << c.q << " " << c.alpha;
  }
}

TEST(SpectralSum, RejectsTrivialRoots) {
  EXPECT_THROW(spectral_sum_closed({RootRecord::make(1.0, 1)}, 3), SolverError);
  EXPECT_THROW(spectral_sum_closed({RootRecord::make(0.0, 1)}, 3), SolverError);
}

TEST(Livsic, SubcriticalIdentityHolds) {
  int n = 0;
  for (const auto& c : oracle::rational_suite(2024, 50)) {
    const DampingParams p = DampingParams::rational(c.p, c.q, c.alpha);
    const TraceReport rep = livsic_report(p, 200);
    ASSERT_TRUE(rep.spectral_sum_closed.has_value());
    EXPECT_NEAR(*rep.spectral_sum_closed, rep.trace_re_inverse, verdict_tolerance(rep.trace_re_inverse))
        << c.p << "/" << c.q << " " << c.alpha;
    EXPECT_TRUE(rep.riesz_verdict);
    EXPECT_TRUE(rep.violations.empty());
    ++n;
  }
  EXPECT_EQ(n, 50);
}

TEST(Livsic, CriticalGapsForAllPlacements) {
  for (int q = 2; q <= 9; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (int sign : {1, -1}) {
        const DampingParams params = DampingParams::rational(p, q, 2.0 * sign);
        const TraceReport rep = livsic_report(params, 100);
        const int r = std::max(p, q - p);
        EXPECT_NEAR(rep.gap, sign * kPi * (q - r) / q, 1e-8) << p << "/" << q << " " << sign;
        EXPECT_FALSE(rep.riesz_verdict);
        EXPECT_EQ(rep.r, r);
      }
    }
  }
}

TEST(Livsic, CriticalCorrectionValues) {
  EXPECT_NEAR(critical_correction(1, 3, 1), kPi / 3.0, 1e-15);
  EXPECT_NEAR(critical_correction(2, 5, -1), -2.0 * kPi / 5.0, 1e-15);
  EXPECT_NEAR(critical_correction(1, 2, 1), kPi / 2.0, 1e-15);
  EXPECT_THROW(critical_correction(2, 4, 1), SolverError);
  EXPECT_THROW(critical_correction(1, 3, 0), SolverError);
}

TEST(Livsic, TruncationErrorWithinTailAndFirstOrder) {
  const DampingParams p = DampingParams::rational(2, 5, cplx(1.0, 0.7));
  double prev = 0.0;
  for (long N : {50L, 100L, 200L, 400L}) {
    const TraceReport rep = livsic_report(p, N);
    const double err = std::abs(rep.spectral_sum_truncated - *rep.spectral_sum_closed);
    EXPECT_LE(err, rep.tail_bound);
    EXPECT_GT(err, 0.0);
    if (prev > 0.0) EXPECT_NEAR(err / prev, 0.5, 0.05) << N;
    prev = err;
  }
}

TEST(Livsic, DirectionOfDeviation) {
  for (const auto& c : oracle::rational_suite(55, 30, 9, 8.0, 0.0)) {
    const TraceReport rep = livsic_report(DampingParams::rational(c.p, c.q, c.alpha), 50, false);
    if (c.alpha.real() > 0) EXPECT_GE(rep.gap, -rep.tolerance);
    if (c.alpha.real() < 0) EXPECT_LE(rep.gap, rep.tolerance);
    EXPECT_TRUE(rep.violations.empty());
  }
}

TEST(Livsic, ContinuousInPlacement) {
  // Irrational placements: the truncated sum approaches the trace as N grows.
  for (double a : {1.0, 1.3, 2.0}) {
    const DampingParams p = DampingParams::at(a, cplx(1.0, 0.5));
    const TraceReport r20 = livsic_report(p, 20);
    const TraceReport r40 = livsic_report(p, 40);
    EXPECT_EQ(r40.basis, VerdictBasis::RuleBased);
    EXPECT_LT(std::abs(r40.gap), std::abs(r20.gap) + 1e-12);
    EXPECT_LT(std::abs(r40.gap), 0.05) << a;
  }
  // ... and agrees with the closed sum at a nearby rational placement, up to its tail bound.
  const TraceReport rat = livsic_report(DampingParams::rational(1, 3, cplx(1.0, 0.5)), 40);
  const TraceReport irr = livsic_report(DampingParams::at(kPi / 3.0 + 1e-9, cplx(1.0, 0.5)), 40);
  EXPECT_LE(std::abs(irr.spectral_sum_truncated - *rat.spectral_sum_closed), irr.tail_bound + 1e-6);
  EXPECT_GT(irr.tail_bound, 0.0);
}

TEST(Livsic, EnforcementRaises) {
  // A tolerance wider than the critical gap flips the verdict against the rule.
  EXPECT_THROW(
      {
        try {
          livsic_report(DampingParams::rational(1, 3, 2.0), 50, true, 10.0);
        } catch (const SolverError& e) {
          EXPECT_EQ(e.kind(), ErrorKind::IdentityViolation);
          throw;
        }
      },
      SolverError);
  const TraceReport rep = livsic_report(DampingParams::rational(1, 3, 2.0), 50, false, 10.0);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(TruncatedSum, CoverageChecked) {
  const DampingParams p = DampingParams::rational(1, 3, 1.0);
  const auto roots = find_roots(build_polynomial(1, 3, 1.0));
  std::vector<RootRecord> nt;
  for (const auto& r : roots) {
    if (!r.is_unit()) nt.push_back(r);
  }
  auto ladders = ladder_eigenvalues(nt, 3, 10, [](cplx) { return 0.0; });
  EXPECT_NO_THROW(spectral_sum_truncated(ladders, 3, 10, static_cast<int>(nt.size())));
  EXPECT_THROW(spectral_sum_truncated(ladders, 3, 10, static_cast<int>(nt.size()) + 1), SolverError);
  ladders.erase(ladders.begin() + 3);
  EXPECT_THROW(
      {
        try {
          spectral_sum_truncated(ladders, 3, 10);
        } catch (const SolverError& e) {
          EXPECT_EQ(e.kind(), ErrorKind::Coverage);
          throw;
        }
      },
      SolverError);
  (void)p;
}

TEST(LivsicGraph, SubcriticalAndCritical) {
  const TraceReport sub = livsic_report_graph(3, cplx(1.0, 1.0), 100);
  EXPECT_NEAR(sub.gap, 0.0, sub.tolerance);
  EXPECT_TRUE(sub.riesz_verdict);
  const TraceReport plus = livsic_report_graph(3, 3.0, 100);
  EXPECT_NEAR(plus.gap, kPi, 1e-10);
  EXPECT_FALSE(plus.riesz_verdict);
  const TraceReport minus = livsic_report_graph(2, -2.0, 100);
  EXPECT_NEAR(minus.gap, -kPi, 1e-10);
  for (int n = 1; n <= 5; ++n) {
    const TraceReport r = livsic_report_graph(n, cplx(0.5 * n, -1.0), 100);
    EXPECT_NEAR(*r.spectral_sum_closed, -kPi * 0.5, 1e-8) << n;
  }
}
