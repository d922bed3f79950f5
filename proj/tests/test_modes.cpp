#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "dampwave/charfn.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/modes.hpp"
#include "dampwave/quadrature.hpp"
#include "dampwave/rational_spectrum.hpp"
#include "dampwave/spectrum.hpp"
#include "oracles.hpp"

using namespace dampwave;

namespace {

std::vector<EigenvalueRecord> spectrum_of(const DampingParams& p, double h) {
  return compute_spectrum_band(p, -h, h).eigenvalues;
}

double fn_scale(const PiecewiseSinhFn& f, double a) {
  double m = 0.0;
  for (int k = 0; k <= 64; ++k) {
    const double x = kPi * k / 64.0;
    m = std::max(m, std::abs(x <= a ? f.left(x) : f.right(x)));
  }
  return m;
}

// max over a 64-point interior grid of |f'' - l^2 f - rhs| via second differences.
template <class Rhs>
double ode_residual(const PiecewiseSinhFn& f, cplx lambda, double a, Rhs rhs) {
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 1; k < 64; ++k) {
    const double x = kPi * k / 64.0;
    if (std::abs(x - a) < 4 * h) continue;
    const auto side = [&](double t) { return x < a ? f.left(t) : f.right(t); };
    const cplx d2 = (side(x + h) - 2.0 * side(x) + side(x - h)) / (h * h);
    worst = std::max(worst, std::abs(d2 - lambda * lambda * side(x) - rhs(x)));
  }
  return worst;
}

// int |du|^2 + |v|^2 with composite Gauss panels split at the breakpoint a.
double split_energy(const std::function<cplx(double)>& du, const std::function<cplx(double)>& v, double a) {
  double s = 0.0;
  for (const auto& [lo, hi] : {std::pair{0.0, a}, std::pair{a, kPi}}) {
    const QuadratureRule r = composite_rule(lo, hi, 64, 16);
    for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * (std::norm(du(r.nodes[k])) + std::norm(v(r.nodes[k])));
  }
  return s;
}

// int_0^pi k(x, y) g(y) dy split at y = x and y = a.
template <class K, class G>
cplx split_integral(K k, G g, double x, double a) {
  std::vector<double> cuts{0.0, std::min(x, a), std::max(x, a), kPi};
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15) continue;
    const QuadratureRule r = composite_rule(cuts[i], cuts[i + 1], 16, 16);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * k(x, r.nodes[j]) * g(r.nodes[j]);
  }
  return s;
}

}  // namespace

TEST(Basis, Orthonormal) {
  for (int n = -8; n <= 8; ++n) {
    if (n == 0) continue;
    for (int m = -8; m <= 8; ++m) {
      if (m == 0) continue;
      const cplx ip = energy_inner_product(basis_mode(n), basis_mode(m));
      EXPECT_LT(std::abs(ip - (n == m ? 1.0 : 0.0)), 1e-12) << n << " " << m;
    }
  }
}

TEST(Eigenfunction, UndampedIsSine) {
  const DampingParams p = DampingParams::at(1.0, 0.0);
  for (int n : {1, 2, 5}) {
    const ModePair m = eigenfunction(cplx(0.0, n), p);
    const cplx ref = m.first(0.3) / std::sin(n * 0.3);
    for (double x : {0.7, 1.4, 2.2, 2.9}) EXPECT_LT(std::abs(m.first(x) - ref * std::sin(n * x)), 1e-12 * std::abs(ref));
    EXPECT_LT(std::abs(jump_defect(m, p)), 1e-12);
  }
}

TEST(Eigenfunction, CentralCriticalJump) {
  const DampingParams p = DampingParams::rational(1, 2, 2.0);
  const ModePair m = eigenfunction(cplx(0.0, 2.0), p);
  EXPECT_LE(std::abs(jump_defect(m, p)), 1e-10);
  EXPECT_GT(energy_norm(m), 0.1);
}

TEST(Eigenfunction, RandomSuiteInvariants) {
  for (const auto& c : oracle::rational_suite(91, 12, 7, 6.0)) {
    const DampingParams p = DampingParams::rational(c.p, c.q, c.alpha);
    for (const auto& e : spectrum_of(p, 8.0)) {
      const ModePair m = eigenfunction(e.lambda, p);
      const double a = p.a();
      const double s = fn_scale(m.first, a);
      const PiecewiseSinhFn d = m.first.derivative();
      const double jump_scale = std::abs(d.left(a)) + std::abs(d.right(a)) + std::abs(c.alpha * e.lambda * m.first(a));
      EXPECT_LE(std::abs(jump_defect(m, p)), 1e-9 * jump_scale);
      EXPECT_LE(std::abs(m.first.left(a) - m.first.right(a)), 1e-12 * s);
      EXPECT_LE(std::abs(m.first.left(0.0)), 1e-14 * s);
      EXPECT_LE(std::abs(m.first.right(kPi)), 1e-14 * s);
      EXPECT_LE(std::abs(m.second(1.234) - e.lambda * m.first(1.234)), 1e-13 * s * std::abs(e.lambda));
      const double res = ode_residual(m.first, e.lambda, a, [](double) { return cplx(0.0); });
      EXPECT_LE(res, 1e-6 * s * std::max(1.0, std::norm(e.lambda)));
    }
  }
}

TEST(Eigenfunction, RejectsNonEigenvalue) {
  EXPECT_THROW(eigenfunction(cplx(0.2, 1.3), DampingParams::at(1.0, 1.0)), SolverError);
}

TEST(GeneralizedEigenfunction, Sqrt3DoubleEigenvalue) {
  const DampingParams p = DampingParams::rational(1, 3, std::sqrt(3.0));
  int checked = 0;
  for (const auto& e : rational_spectrum(p, imaginary_band(-8, 8)).eigenvalues) {
    if (e.alg_multiplicity != 2) continue;
    const ModePair g = generalized_eigenfunction(e.lambda, p);
    const ModePair u = eigenfunction(e.lambda, p);
    const double a = p.a();
    const double s = fn_scale(g.first, a);
    // (A - l) psi~ = psi: u~'' - l^2 u~ = 2 l u off a.
    const double res = ode_residual(g.first, e.lambda, a, [&](double x) { return 2.0 * e.lambda * u.first(x); });
    EXPECT_LE(res, 1e-6 * s * std::max(1.0, std::norm(e.lambda)));
    // Jump condition with velocity u + l u~, continuity, Dirichlet.
    const PiecewiseSinhFn d = g.first.derivative();
    EXPECT_LE(std::abs(jump_defect(g, p)), 1e-8 * (std::abs(d.left(a)) + std::abs(d.right(a))));
    EXPECT_LE(std::abs(g.first.left(a) - g.first.right(a)), 1e-12 * s);
    EXPECT_LE(std::abs(g.second.left(a) - g.second.right(a)), 1e-12 * fn_scale(g.second, a));
    EXPECT_LE(std::abs(g.first.left(0.0)), 1e-14 * s);
    EXPECT_LE(std::abs(g.first.right(kPi)), 1e-13 * s);
    ++checked;
  }
  EXPECT_GE(checked, 4);
}

TEST(GeneralizedEigenfunction, SimpleEigenvalueRejected) {
  EXPECT_THROW(generalized_eigenfunction(cplx(0.0, 3.0), DampingParams::rational(1, 3, 1.0)), SolverError);
}

TEST(AdjointEigenfunction, UndampedCoincidesWithMode) {
  const DampingParams p = DampingParams::at(1.2, 0.0);
  const ModePair psi = normalized(eigenfunction(cplx(0.0, 3.0), p));
  const ModePair phi = normalized(adjoint_eigenfunction(cplx(0.0, 3.0), p));
  EXPECT_NEAR(std::abs(energy_inner_product(phi, psi)), 1.0, 1e-12);
  EXPECT_EQ(phi.lambda, std::conj(cplx(0.0, 3.0)));
}

TEST(AdjointEigenfunction, PairingNonDegenerate) {
  const DampingParams p = DampingParams::rational(1, 3, 1.0);
  for (const auto& e : spectrum_of(p, 6.0)) {
    const ModePair psi = normalized(eigenfunction(e.lambda, p));
    const ModePair phi = normalized(adjoint_eigenfunction(e.lambda, p));
    EXPECT_GT(std::abs(energy_inner_product(phi, psi)), 1e-3);
  }
}

TEST(AdjointEigenfunction, Biorthogonality) {
  const DampingParams p = DampingParams::rational(1, 3, 1.0);
  auto eigs = spectrum_of(p, 5.5);
  const Eigen::MatrixXcd b = biorthogonality_matrix(eigs, p);
  ASSERT_GE(b.rows(), 10);
  const Eigen::MatrixXcd defect = b - Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  EXPECT_LT(defect.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(InnerProduct, QuadratureConverged) {
  const DampingParams p = DampingParams::rational(2, 5, cplx(1.5, -0.5));
  const auto eigs = spectrum_of(p, 12.0);
  for (std::size_t i = 0; i + 1 < eigs.size(); i += 3) {
    const ModePair x = normalized(eigenfunction(eigs[i].lambda, p));
    const ModePair y = normalized(eigenfunction(eigs[i + 1].lambda, p));
    EXPECT_LT(std::abs(energy_inner_product(x, y, 1) - energy_inner_product(x, y, 2)), 1e-10);
    EXPECT_GT(energy_inner_product(x, x).real(), 0.0);
  }
}

TEST(Green, ZeroLambdaKernel) {
  const GreenKernel g = green_kernel(0.0, DampingParams::at(1.0, cplx(2.0, 1.0)));
  EXPECT_NEAR(std::abs(g(kPi / 2, kPi / 2) - (-kPi / 4)), 0.0, 1e-15);
  for (double x : {0.2, 1.1, 2.5}) {
    for (double y : {0.4, 1.7, 3.0}) {
      const double lo = std::min(x, y);
      const double hi = std::max(x, y);
      EXPECT_LT(std::abs(g(x, y) - (-lo * (kPi - hi) / kPi)), 1e-14);
    }
  }
}

TEST(Green, SValueMatchesCharacteristicFunction) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double a = 1.5 + 1.4 * u(rng);
    const cplx alpha(4.0 * u(rng), 4.0 * u(rng));
    const cplx l(2.0 * u(rng), 10.0 * u(rng));
    const GreenKernel g = green_kernel(l, DampingParams::at(a, alpha));
    const cplx s = oracle::S(l, a, alpha);
    EXPECT_LT(std::abs(g.s_value - s), 1e-12 * std::max(1.0, std::abs(s)) * (1.0 + std::abs(alpha)) *
                                           std::exp(std::abs(l.real()) * kPi) / std::max(1.0, std::abs(s)));
  }
}

TEST(Green, ShootingInitialData) {
  const GreenKernel g = green_kernel(cplx(0.4, 2.3), DampingParams::at(0.8, cplx(1.0, -1.0)));
  EXPECT_LT(std::abs(g.u1(0.0)), 1e-15);
  EXPECT_LT(std::abs(g.u1.derivative().left(0.0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(g.u2.right(kPi)), 1e-15);
  EXPECT_LT(std::abs(g.u2.derivative().right(kPi) + 1.0), 1e-15);
}

TEST(Green, Symmetric) {
  const GreenKernel g = green_kernel(cplx(-0.3, 4.1), DampingParams::at(2.0, cplx(3.0, 0.5)));
  for (double x : {0.3, 1.9, 2.7}) {
    for (double y : {0.1, 2.1, 3.0}) EXPECT_EQ(g(x, y), g(y, x));
  }
}

TEST(Green, ReproducesSourceAtZero) {
  // w(x) = int G0(x, y) g(y) dy with g supported away from a: w'' = g.
  const double a = 2.4;
  const GreenKernel g0 = green_kernel(0.0, DampingParams::at(a, 1.0));
  const auto src = [](double y) { return (y > 0.5 && y < 1.5) ? std::pow(std::sin(kPi * (y - 0.5)), 4) : 0.0; };
  const auto w = [&](double x) {
    const int m = 4000;
    cplx s = 0.0;
    for (int k = 0; k < m; ++k) {
      const double y = 0.5 + (k + 0.5) / m;
      s += g0(x, y) * src(y);
    }
    return s / static_cast<double>(m);
  };
  const double h = 1e-3;
  for (double x : {0.3, 0.8, 1.1, 1.4, 2.0}) {
    const cplx d2 = (w(x + h) - 2.0 * w(x) + w(x - h)) / (h * h);
    EXPECT_LT(std::abs(d2 - src(x)), 1e-4) << x;
  }
}

TEST(Green, ResolventEquationAwayFromSpectrum) {
  // u(x) = int G(x, y) g(y) dy solves u'' - l^2 u = g off a with the damped jump.
  const double a = 1.0;
  const cplx alpha(1.5, 0.5);
  const cplx l(0.3, 1.7);
  const DampingParams p = DampingParams::at(a, alpha);
  const GreenKernel gk = green_kernel(l, p);
  const auto src = [](double y) { return std::exp(-y) * y * (kPi - y); };
  const auto w = [&](double x) { return split_integral(gk, src, x, a); };
  const double h = 1e-3;
  for (double x : {0.5, 2.0, 2.8}) {
    const cplx d2 = (w(x + h) - 2.0 * w(x) + w(x - h)) / (h * h);
    EXPECT_LT(std::abs(d2 - l * l * w(x) - src(x)), 1e-5) << x;
  }
  const double e = 1e-4;
  const cplx jump = (w(a + 2 * e) - w(a + e)) / e - (w(a - e) - w(a - 2 * e)) / e;
  EXPECT_LT(std::abs(jump - alpha * l * w(a)), 1e-3);
}

TEST(Green, PoleAtEigenvalue) {
  const DampingParams p = DampingParams::rational(1, 3, 1.0);
  const auto eigs = spectrum_of(p, 5.0);
  ASSERT_FALSE(eigs.empty());
  EXPECT_THROW(
      {
        try {
          green_kernel(eigs.front().lambda, p);
        } catch (const SolverError& e) {
          EXPECT_EQ(e.kind(), ErrorKind::Pole);
          throw;
        }
      },
      SolverError);
}

TEST(HsNorm, UndampedClosedForm) {
  const HsNorm h = hs_norm(DampingParams::at(1.0, 0.0), 200);
  EXPECT_NEAR(h.closed_bound, kPi * kPi / 3.0, 1e-14);
  EXPECT_NEAR(h.closed_bound, 3.2899, 1e-4);
  EXPECT_LT(std::abs(h.truncated_sum - h.closed_bound), 1e-2);
}

TEST(HsNorm, CentralCritical) {
  const HsNorm h = hs_norm(DampingParams::rational(1, 2, 2.0), 2000);
  EXPECT_NEAR(h.closed_bound, 7.0 * kPi * kPi / 12.0, 1e-13);
  EXPECT_NEAR(h.closed_bound, h.a_independent_bound, 1e-13);
  EXPECT_LT(h.closed_bound - h.truncated_sum, 5e-3);
  EXPECT_GT(h.closed_bound, h.truncated_sum);
}

TEST(HsNorm, TermMatchesImageOfBasisMode) {
  // A^{-1}(f, g) = (alpha f(a) G0(., a) + int G0 g, f); for omega_n this is
  // (alpha sin(na)/(n sqrt pi) G0(x, a) - i sin(nx)/(n^2 sqrt pi), sin(nx)/(n sqrt pi)).
  const double a = 1.1;
  for (cplx alpha : {cplx(2.0, 0.0), cplx(1.0, 3.0)}) {
    const DampingParams p = DampingParams::at(a, alpha);
    for (int n : {-3, 1, 2, 7}) {
      const double c = 1.0 / (n * std::sqrt(kPi));
      // each side of a continued analytically, so differences never straddle the kink
      const auto u = [&](double x, bool left) {
        const double g0 = left ? -x * (kPi - a) / kPi : -a * (kPi - x) / kPi;
        return alpha * std::sin(n * a) * c * g0 - cplx(0.0, 1.0) * std::sin(n * x) * c / static_cast<double>(n);
      };
      const double h = 1e-5;
      const auto du = [&](double x) { return (u(x + h, x < a) - u(x - h, x < a)) / (2.0 * h); };
      const auto v = [&](double x) { return cplx(std::sin(n * x) * c); };
      const double ref = split_energy(du, v, a);
      EXPECT_NEAR(hs_term(p, n), ref, 1e-6 * ref) << alpha << " " << n;
    }
  }
}

TEST(HsNorm, ComplexAlphaBelowBound) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const DampingParams p = DampingParams::at(1.5 + 1.4 * u(rng), cplx(3.0 * u(rng), 3.0 * u(rng)));
    const HsNorm h = hs_norm(p, 500);
    EXPECT_LE(h.truncated_sum, h.closed_bound);
    EXPECT_LE(h.closed_bound, h.a_independent_bound + 1e-12);
  }
}

TEST(Gram, UndampedIsIdentity) {
  const GramReport g = gram_report(spectrum_of(DampingParams::at(1.0, 0.0), 8.5), DampingParams::at(1.0, 0.0));
  EXPECT_NEAR(g.condition, 1.0, 1e-9);
}

TEST(Gram, CentralCriticalModesAreOrthogonal) {
  // At a = pi/2, alpha = 2 the spectrum is {2ik} and every root vector is
  // sin(2kx)(1, 2ik): an orthogonal family, so the Gram matrix is the identity.
  for (int size : {8, 16, 32}) EXPECT_NEAR(gram_report_truncated(DampingParams::rational(1, 2, 2.0), size).condition, 1.0, 1e-9);
}

TEST(Gram, SubcriticalSaturates) {
  // Riesz basis away from the critical value: the truncated condition numbers
  // increase but with shrinking increments.
  const DampingParams p = DampingParams::rational(1, 2, 1.0);
  const double c32 = gram_report_truncated(p, 32).condition;
  const double c64 = gram_report_truncated(p, 64).condition;
  const double c128 = gram_report_truncated(p, 128).condition;
  EXPECT_GT(c32, 1.0);
  EXPECT_LT(c128 - c64, c64 - c32);
  EXPECT_LT(c128, 1.5 * c32);
}

TEST(Gram, AdjointSymmetry) {
  const cplx alpha(1.2, 0.8);
  const double x = gram_report_truncated(DampingParams::rational(1, 3, alpha), 24).condition;
  const double y = gram_report_truncated(DampingParams::rational(1, 3, -std::conj(alpha)), 24).condition;
  EXPECT_NEAR(x, y, 1e-8 * x);
}

TEST(Gram, DoubleEigenvaluesUseGeneralizedVectors) {
  const DampingParams p = DampingParams::rational(1, 3, std::sqrt(3.0));
  const auto eigs = spectrum_of(p, 6.0);
  const GramReport g = gram_report(eigs, p);
  EXPECT_EQ(g.size, total_multiplicity(eigs));
  EXPECT_GT(g.condition, 1.0);
}

TEST(Gram, SingularReported) {
  const DampingParams p = DampingParams::rational(1, 3, 1.0);
  auto eigs = spectrum_of(p, 4.0);
  eigs.push_back(eigs.front());
  EXPECT_THROW(
      {
        try {
          gram_report(eigs, p);
        } catch (const SolverError& e) {
          EXPECT_EQ(e.kind(), ErrorKind::SingularGram);
          throw;
        }
      },
      SolverError);
}
