#include "dampwave/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dampwave/charfn.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/quadrature.hpp"
#include "dampwave/spectrum.hpp"

namespace dampwave {

namespace {

cplx kernel_value(Kernel k, cplx lambda, double t) {
  switch (k) {
    case Kernel::Sinh:
      return std::sinh(lambda * t);
    case Kernel::Cosh:
      return std::cosh(lambda * t);
    case Kernel::SinhOverLambda:
      return sinh_over(lambda, t);
  }
  return {};
}

Piece scaled_piece(const Piece& p, cplx factor) {
  Piece out = p;
  for (auto& t : out.terms) t.coef *= factor;
  return out;
}

Piece sum_piece(const Piece& a, const Piece& b) {
  Piece out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

Term term(cplx coef, Kernel k, double origin, int power = 0) { return Term{coef, power, k, origin}; }

// Panels per unit length so that 32-point rules resolve oscillation and growth.
int panels_for(double length, double rate, int factor) {
  return factor * (1 + static_cast<int>(std::ceil(length * rate / 20.0)));
}

constexpr double kEigenTol = 1e-8;

void require_eigenvalue(cplx lambda, const DampingParams& params) {
  const CharValue cv = eval_char_derivatives(lambda, params);
  if (std::abs(cv.f) > kEigenTol * char_scale(lambda, params.alpha()) || std::abs(lambda) < 1e-8) {
    throw SolverError(ErrorKind::NotEigenvalue, "lambda is not an eigenvalue of the damped operator");
  }
}

struct Sampled {
  std::vector<double> weights;
  std::vector<double> nodes;
  std::size_t left_count = 0;
};

Sampled shared_grid(double a, double rate, int factor) {
  const QuadratureRule l = composite_rule(0.0, a, panels_for(a, rate, factor));
  const QuadratureRule r = composite_rule(a, kPi, panels_for(kPi - a, rate, factor));
  Sampled s;
  s.nodes = l.nodes;
  s.weights = l.weights;
  s.left_count = l.nodes.size();
  s.nodes.insert(s.nodes.end(), r.nodes.begin(), r.nodes.end());
  s.weights.insert(s.weights.end(), r.weights.begin(), r.weights.end());
  return s;
}

// Columns (u', v) of a mode on the grid; left nodes use the left piece.
void sample_into(const ModePair& m, const Sampled& g, Eigen::Ref<Eigen::VectorXcd> du,
                 Eigen::Ref<Eigen::VectorXcd> v) {
  const PiecewiseSinhFn d = m.first.derivative();
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double x = g.nodes[k];
    const bool left = k < g.left_count;
    du(static_cast<Eigen::Index>(k)) = left ? d.left(x) : d.right(x);
    v(static_cast<Eigen::Index>(k)) = left ? m.second.left(x) : m.second.right(x);
  }
}

}  // namespace

cplx Piece::value(double x, cplx lambda) const {
  cplx sum = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coef * kernel_value(t.kernel, lambda, x - t.origin);
    if (t.power == 1) v *= x;
    sum += v;
  }
  return sum;
}

Piece Piece::derivative(cplx lambda) const {
  Piece out;
  for (const auto& t : terms) {
    Term d = t;
    switch (t.kernel) {
      case Kernel::Sinh:
        d.kernel = Kernel::Cosh;
        d.coef *= lambda;
        break;
      case Kernel::Cosh:
        d.kernel = Kernel::Sinh;
        d.coef *= lambda;
        break;
      case Kernel::SinhOverLambda:
        d.kernel = Kernel::Cosh;
        break;
    }
    out.terms.push_back(d);
    if (t.power == 1) {
      Term lower = t;
      lower.power = 0;
      out.terms.push_back(lower);
    }
  }
  return out;
}

PiecewiseSinhFn PiecewiseSinhFn::derivative() const {
  return {breakpoint_, lambda_, left_.derivative(lambda_), right_.derivative(lambda_)};
}

PiecewiseSinhFn PiecewiseSinhFn::scaled(cplx factor) const {
  return {breakpoint_, lambda_, scaled_piece(left_, factor), scaled_piece(right_, factor)};
}

PiecewiseSinhFn PiecewiseSinhFn::plus(const PiecewiseSinhFn& other) const {
  if (other.breakpoint_ != breakpoint_ || other.lambda_ != lambda_) {
    throw SolverError(ErrorKind::Domain, "cannot add functions with different breakpoint or lambda");
  }
  return {breakpoint_, lambda_, sum_piece(left_, other.left_), sum_piece(right_, other.right_)};
}

ModePair ModePair::scaled(cplx factor) const {
  return {first.scaled(factor), second.scaled(factor), lambda, kind};
}

ModePair eigenfunction(cplx lambda, const DampingParams& params) {
  require_eigenvalue(lambda, params);
  const double a = params.a();
  const cplx sa = std::sinh(lambda * a);
  const cplx sb = std::sinh(lambda * params.b());
  const double ref = std::abs(std::cosh(lambda * a)) + std::abs(std::cosh(lambda * params.b()));
  PiecewiseSinhFn u;
  if (std::abs(sa) + std::abs(sb) <= 1e-8 * ref) {
    // Imaginary ladder: sinh(l x) already satisfies the jump (u(a) = 0, u' continuous).
    u = PiecewiseSinhFn::uniform(a, lambda, Piece{{term(1.0, Kernel::Sinh, 0.0)}});
  } else {
    // sinh(l(pi - x)) = -sinh(l(x - pi))
    u = PiecewiseSinhFn(a, lambda, Piece{{term(sb, Kernel::Sinh, 0.0)}},
                        Piece{{term(-sa, Kernel::Sinh, kPi)}});
  }
  return {u, u.scaled(lambda), lambda, ModeKind::Eigen};
}

ModePair generalized_eigenfunction(cplx lambda, const DampingParams& params) {
  require_eigenvalue(lambda, params);
  const CharValue cv = eval_char_derivatives(lambda, params);
  const double scale = char_scale(lambda, params.alpha());
  if (std::abs(cv.f1) > 1e-6 * scale) {
    throw SolverError(ErrorKind::Multiplicity, "eigenvalue is simple; no generalized eigenvector");
  }
  const double a = params.a();
  const double b = params.b();
  const cplx sa = std::sinh(lambda * a);
  const cplx sb = std::sinh(lambda * b);
  const cplx ca = std::cosh(lambda * a);
  const cplx cb = std::cosh(lambda * b);

  // Left:  x sinh(l b) cosh(l x) + cL sinh(l x)
  // Right: (pi - x) sinh(l a) cosh(l(pi - x)) + cR sinh(l(pi - x))
  // One free constant is gauged away; the other enforces continuity at a.
  cplx cl = 0.0;
  cplx cr = 0.0;
  if (std::abs(sa) >= std::abs(sb)) {
    cl = (b * sa * cb - a * sb * ca) / sa;
  } else {
    cr = (a * sb * ca - b * sa * cb) / sb;
  }
  const Piece left{{term(sb, Kernel::Cosh, 0.0, 1), term(cl, Kernel::Sinh, 0.0)}};
  const Piece right{{term(kPi * sa, Kernel::Cosh, kPi), term(-sa, Kernel::Cosh, kPi, 1),
                     term(-cr, Kernel::Sinh, kPi)}};
  const PiecewiseSinhFn ut(a, lambda, left, right);
  const ModePair eig = eigenfunction(lambda, params);
  ModePair out{ut, eig.first.plus(ut.scaled(lambda)), lambda, ModeKind::Generalized};

  // The jump condition holds exactly when F'(lambda) = 0.
  const PiecewiseSinhFn d = ut.derivative();
  const cplx defect = jump_defect(out, params);
  const double size = std::abs(d.right(a)) + std::abs(d.left(a)) +
                      std::abs(params.alpha()) * std::abs(out.second.left(a));
  if (std::abs(defect) > 1e-8 * std::max(size, 1e-300)) {
    throw SolverError(ErrorKind::Multiplicity,
                      "generalized eigenvector violates the jump condition (eigenvalue not double)");
  }
  return out;
}

ModePair adjoint_eigenfunction(cplx lambda, const DampingParams& params) {
  ModePair m = eigenfunction(-std::conj(lambda), params.adjoint_partner());
  m.lambda = std::conj(lambda);
  m.kind = ModeKind::Adjoint;
  return m;
}

ModePair basis_mode(int n, double breakpoint) {
  if (n == 0) throw SolverError(ErrorKind::Domain, "basis index must be nonzero");
  // sin(n x) = sinh(i n x) / i
  const cplx lambda(0.0, n);
  const double c = 1.0 / (n * std::sqrt(kPi));
  const Piece p{{term(cplx(0.0, -c), Kernel::Sinh, 0.0)}};
  const PiecewiseSinhFn u = PiecewiseSinhFn::uniform(breakpoint, lambda, p);
  return {u, u.scaled(cplx(0.0, n)), lambda, ModeKind::Basis};
}

cplx jump_defect(const ModePair& mode, const DampingParams& params) {
  const double a = params.a();
  const PiecewiseSinhFn d = mode.first.derivative();
  return d.right(a) - d.left(a) - params.alpha() * mode.second.left(a);
}

cplx energy_inner_product(const ModePair& x, const ModePair& y, int panel_factor) {
  const double a = x.first.breakpoint();
  const double rate = std::abs(x.lambda) + std::abs(y.lambda);
  const Sampled g = shared_grid(a, rate, panel_factor);
  const PiecewiseSinhFn dx = x.first.derivative();
  const PiecewiseSinhFn dy = y.first.derivative();
  cplx sum = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double t = g.nodes[k];
    const bool left = k < g.left_count;
    const cplx ux = left ? dx.left(t) : dx.right(t);
    const cplx uy = left ? dy.left(t) : dy.right(t);
    const cplx vx = left ? x.second.left(t) : x.second.right(t);
    const cplx vy = left ? y.second.left(t) : y.second.right(t);
    sum += g.weights[k] * (ux * std::conj(uy) + vx * std::conj(vy));
  }
  return sum;
}

double energy_norm(const ModePair& x) { return std::sqrt(std::max(0.0, energy_inner_product(x, x).real())); }

ModePair normalized(const ModePair& x) {
  const double n = energy_norm(x);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw SolverError(ErrorKind::Domain, "cannot normalize a zero or non-finite mode");
  }
  return x.scaled(1.0 / n);
}

BiorthogonalPair biorthogonal_pair(cplx lambda, const DampingParams& params) {
  const ModePair psi = normalized(eigenfunction(lambda, params));
  const ModePair phi0 = normalized(adjoint_eigenfunction(lambda, params));
  const cplx pairing = energy_inner_product(phi0, psi);
  if (std::abs(pairing) < 1e-10) {
    throw SolverError(ErrorKind::Multiplicity,
                      "eigenvector is orthogonal to the adjoint eigenvector (non-simple eigenvalue)");
  }
  const cplx c = 1.0 / pairing;
  return {psi, phi0.scaled(c), c};
}

cplx GreenKernel::operator()(double x, double y) const {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return -u1(lo) * u2(hi) / s_value;
}

GreenKernel green_kernel(cplx lambda, const DampingParams& params) {
  const double a = params.a();
  const cplx al = params.alpha() * lambda;

  // u1: sinh(l x)/l up to a, then restart with value v and slope d- + alpha l v.
  const cplx v = sinh_over(lambda, a);
  const cplx dplus = std::cosh(lambda * a) + al * v;
  const PiecewiseSinhFn u1(a, lambda, Piece{{term(1.0, Kernel::SinhOverLambda, 0.0)}},
                           Piece{{term(v, Kernel::Cosh, a), term(dplus, Kernel::SinhOverLambda, a)}});

  // u2: sinh(l(pi - x))/l from pi back to a, then slope d+ - alpha l w on the left.
  const cplx w = sinh_over(lambda, kPi - a);
  const cplx dminus = -std::cosh(lambda * (kPi - a)) - al * w;
  const PiecewiseSinhFn u2(a, lambda,
                           Piece{{term(w, Kernel::Cosh, a), term(dminus, Kernel::SinhOverLambda, a)}},
                           Piece{{term(-1.0, Kernel::SinhOverLambda, kPi)}});

  const cplx s = u1.right(kPi);
  const double scale = char_scale(lambda, params.alpha()) / std::max(1.0, std::abs(lambda));
  if (!(std::abs(s) > 1e-10 * scale)) {
    throw SolverError(ErrorKind::Pole, "lambda is an eigenvalue; the resolvent has a pole there");
  }
  return {lambda, u1, u2, s};
}

double hs_term(const DampingParams& params, int n) {
  if (n == 0) throw SolverError(ErrorKind::Domain, "basis index must be nonzero");
  const double a = params.a();
  const cplx alpha = params.alpha();
  const double s2 = std::pow(std::sin(n * a), 2);
  const double nn = static_cast<double>(n);
  return (std::norm(alpha) * s2 * a * (kPi - a) / kPi + 2.0 * alpha.imag() * s2 / nn + kPi) /
         (kPi * nn * nn);
}

HsNorm hs_norm(const DampingParams& params, int truncation) {
  if (truncation < 1) throw SolverError(ErrorKind::Domain, "truncation must be positive");
  const double a = params.a();
  const double m = std::abs(params.alpha());
  HsNorm out{};
  out.closed_bound = std::pow(m * a * (kPi - a) / kPi, 2) + kPi * kPi / 3.0;
  out.a_independent_bound = kPi * kPi * (m * m / 16.0 + 1.0 / 3.0);
  double sum = 0.0;
  for (int n = truncation; n >= 1; --n) sum += hs_term(params, n) + hs_term(params, -n);
  out.truncated_sum = sum;
  return out;
}

std::vector<ModePair> root_vectors(std::vector<EigenvalueRecord> eigs, const DampingParams& params) {
  sort_for_truncation(eigs);
  std::vector<ModePair> out;
  for (const auto& e : eigs) {
    out.push_back(normalized(eigenfunction(e.lambda, params)));
    if (e.alg_multiplicity == 2) out.push_back(normalized(generalized_eigenfunction(e.lambda, params)));
    if (e.alg_multiplicity > 2) throw SolverError(ErrorKind::Multiplicity, "multiplicity above two");
  }
  return out;
}

Eigen::MatrixXcd gram_matrix(const std::vector<ModePair>& modes) {
  if (modes.empty()) return {};
  double rate = 0.0;
  for (const auto& m : modes) rate = std::max(rate, 2.0 * std::abs(m.lambda));
  const Sampled g = shared_grid(modes.front().first.breakpoint(), rate, 1);
  const auto rows = static_cast<Eigen::Index>(g.nodes.size());
  const auto cols = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd du(rows, cols);
  Eigen::MatrixXcd v(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) sample_into(modes[static_cast<std::size_t>(j)], g, du.col(j), v.col(j));
  const Eigen::Map<const Eigen::VectorXd> w(g.weights.data(), rows);
  const Eigen::VectorXcd wc = w.cast<cplx>();
  return du.adjoint() * wc.asDiagonal() * du + v.adjoint() * wc.asDiagonal() * v;
}

GramReport gram_report(const std::vector<EigenvalueRecord>& eigs, const DampingParams& params) {
  const std::vector<ModePair> modes = root_vectors(eigs, params);
  GramReport r;
  r.size = static_cast<int>(modes.size());
  if (modes.empty()) return r;
  const Eigen::MatrixXcd g = gram_matrix(modes);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.max_eigenvalue = es.eigenvalues().maxCoeff();
  if (!(r.min_eigenvalue > 1e-14 * r.max_eigenvalue)) {
    Eigen::Index bi = 0;
    Eigen::Index bj = 1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < g.cols(); ++j) {
        if (std::abs(g(i, j)) > best) {
          best = std::abs(g(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    throw SolverError(ErrorKind::SingularGram, "Gram matrix is numerically singular; most aligned modes " +
                                                   std::to_string(bi) + " and " + std::to_string(bj));
  }
  r.condition = r.max_eigenvalue / r.min_eigenvalue;
  return r;
}

GramReport gram_report_truncated(const DampingParams& params, int count) {
  return gram_report(leading_eigenvalues(params, count), params);
}

double gram_condition(const DampingParams& params, const SpectralWindow& window) {
  const SpectrumResult sr = compute_spectrum(params, window);
  return gram_report(sr.eigenvalues, params).condition;
}

Eigen::MatrixXcd biorthogonality_matrix(const std::vector<EigenvalueRecord>& eigs,
                                        const DampingParams& params) {
  std::vector<EigenvalueRecord> sorted = eigs;
  sort_for_truncation(sorted);
  std::vector<BiorthogonalPair> pairs;
  for (const auto& e : sorted) {
    if (e.alg_multiplicity != 1) continue;
    pairs.push_back(biorthogonal_pair(e.lambda, params));
  }
  const auto n = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      b(m, k) = energy_inner_product(pairs[static_cast<std::size_t>(m)].phi,
                                     pairs[static_cast<std::size_t>(k)].psi);
    }
  }
  return b;
}

}  // namespace dampwave
