#pragma once

// Closed-form root vectors, Green kernels and energy-space diagnostics.
//
// Functions on [0, pi] are represented piecewise (split at the damping point a)
// as finite sums of terms  c * x^k * K(lambda (x - x0))  with k in {0, 1} and
// K one of sinh, cosh, sinh(.)/lambda. The class is closed under d/dx, so all
// derivatives used below are exact.

#include <Eigen/Dense>
#include <vector>

#include "dampwave/eigenvalue.hpp"

namespace dampwave {

enum class Kernel { Sinh, Cosh, SinhOverLambda };

struct Term {
  cplx coef;
  int power = 0;  // 0 or 1
  Kernel kernel = Kernel::Sinh;
  double origin = 0.0;
};

struct Piece {
  std::vector<Term> terms;

  cplx value(double x, cplx lambda) const;
  Piece derivative(cplx lambda) const;
};

class PiecewiseSinhFn {
 public:
  PiecewiseSinhFn() = default;
  PiecewiseSinhFn(double breakpoint, cplx lambda, Piece left, Piece right)
      : breakpoint_(breakpoint), lambda_(lambda), left_(std::move(left)), right_(std::move(right)) {}

  /// Same piece on both sides of the breakpoint.
  static PiecewiseSinhFn uniform(double breakpoint, cplx lambda, const Piece& piece) {
    return {breakpoint, lambda, piece, piece};
  }

  cplx operator()(double x) const { return x <= breakpoint_ ? left(x) : right(x); }
  cplx left(double x) const { return left_.value(x, lambda_); }
  cplx right(double x) const { return right_.value(x, lambda_); }

  PiecewiseSinhFn derivative() const;
  PiecewiseSinhFn scaled(cplx factor) const;
  PiecewiseSinhFn plus(const PiecewiseSinhFn& other) const;

  double breakpoint() const noexcept { return breakpoint_; }
  cplx lambda() const noexcept { return lambda_; }
  const Piece& left_piece() const noexcept { return left_; }
  const Piece& right_piece() const noexcept { return right_; }

 private:
  double breakpoint_ = 0.0;
  cplx lambda_;
  Piece left_;
  Piece right_;
};

enum class ModeKind { Eigen, Generalized, Adjoint, Basis };

/// State (displacement, velocity) in the energy space.
struct ModePair {
  PiecewiseSinhFn first;
  PiecewiseSinhFn second;
  cplx lambda;
  ModeKind kind = ModeKind::Eigen;

  ModePair scaled(cplx factor) const;
};

/// Eigenvector (u, lambda u) at an eigenvalue. u(x) = sinh(l(pi-a)) sinh(l x)
/// left of a and sinh(l a) sinh(l(pi-x)) right of a; on the purely imaginary
/// ladder where both prefactors vanish, u(x) = sinh(l x).
ModePair eigenfunction(cplx lambda, const DampingParams& params);

/// Generalized eigenvector at a double eigenvalue: (u~, u + lambda u~) with
/// u~'' - lambda^2 u~ = 2 lambda u off the breakpoint, Dirichlet ends, and the
/// inhomogeneous jump condition at a.
ModePair generalized_eigenfunction(cplx lambda, const DampingParams& params);

/// Eigenvector of the adjoint at conj(lambda), built as the eigenvector of
/// A(a, -conj alpha) at -conj(lambda). Its lambda field is conj(lambda).
ModePair adjoint_eigenfunction(cplx lambda, const DampingParams& params);

/// Normalized undamped mode (1/(n sqrt(pi))) sin(n x) (1, i n), n != 0.
ModePair basis_mode(int n, double breakpoint = 0.5 * kPi);

/// u1'(a+) - u1'(a-) - alpha u2(a), the domain (jump) condition defect.
cplx jump_defect(const ModePair& mode, const DampingParams& params);

/// <x, y> = int x1' conj(y1') + int x2 conj(y2): linear in the first slot.
/// Composite Gauss-Legendre, split at the breakpoint, panel count scaled with
/// |lambda|; panel_factor multiplies the panel count.
cplx energy_inner_product(const ModePair& x, const ModePair& y, int panel_factor = 1);
double energy_norm(const ModePair& x);
ModePair normalized(const ModePair& x);

struct BiorthogonalPair {
  ModePair psi;  // unit energy norm
  ModePair phi;  // adjoint mode with <phi, psi> = 1
  cplx phi_scale;
};
BiorthogonalPair biorthogonal_pair(cplx lambda, const DampingParams& params);

struct GreenKernel {
  cplx lambda;
  PiecewiseSinhFn u1;  // u1(0) = 0, u1'(0) = 1
  PiecewiseSinhFn u2;  // u2(pi) = 0, u2'(pi) = -1
  cplx s_value;        // u1(pi)

  cplx operator()(double x, double y) const;
};

/// Green kernel of u'' - lambda (lambda + alpha delta_a) u with Dirichlet ends.
/// u1 and u2 are obtained by shooting across the jump at a.
GreenKernel green_kernel(cplx lambda, const DampingParams& params);

struct HsNorm {
  double closed_bound;
  double truncated_sum;
  double a_independent_bound;
};

/// ||A^{-1} omega_n||^2 from the explicit image of the undamped mode.
double hs_term(const DampingParams& params, int n);
HsNorm hs_norm(const DampingParams& params, int truncation);

struct GramReport {
  double condition = 1.0;
  double min_eigenvalue = 1.0;
  double max_eigenvalue = 1.0;
  int size = 0;
};

/// Root vectors (eigenvectors plus generalized ones at double eigenvalues) of
/// the given eigenvalues, each normalized to unit energy norm, in truncation order.
std::vector<ModePair> root_vectors(std::vector<EigenvalueRecord> eigs, const DampingParams& params);

/// Gram matrix G_ij = <v_j, v_i>, evaluated on one shared quadrature grid.
Eigen::MatrixXcd gram_matrix(const std::vector<ModePair>& modes);

GramReport gram_report(const std::vector<EigenvalueRecord>& eigs, const DampingParams& params);
/// Gram report for the first `count` eigenvalues in truncation order.
GramReport gram_report_truncated(const DampingParams& params, int count);
/// 2-norm condition number of the Gram matrix of the root vectors in the window.
double gram_condition(const DampingParams& params, const SpectralWindow& window);

/// B_mn = <phi_m, psi_n> for the normalized biorthogonal pairs of simple eigenvalues.
Eigen::MatrixXcd biorthogonality_matrix(const std::vector<EigenvalueRecord>& eigs,
                                        const DampingParams& params);

}  // namespace dampwave
