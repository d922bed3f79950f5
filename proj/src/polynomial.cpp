#include "dampwave/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dampwave/errors.hpp"

namespace dampwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

cplx horner(std::span<const cplx> c, cplx z) {
  cplx v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

cplx horner_derivative(std::span<const cplx> c, cplx z) {
  cplx v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * z + static_cast<double>(k) * c[k];
  return v;
}

double horner_magnitude(std::span<const cplx> c, cplx z) {
  const double r = std::abs(z);
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + std::abs(*it);
  return v;
}

// Newton on P' from z; converges to a double root of P quadratically.
cplx polish_double(std::span<const cplx> c, cplx z) {
  std::vector<cplx> dc(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) dc[k - 1] = static_cast<double>(k) * c[k];
  for (int it = 0; it < 50; ++it) {
    const cplx d1 = horner(dc, z);
    const cplx d2 = horner_derivative(dc, z);
    if (d2 == cplx(0.0)) break;
    const cplx step = d1 / d2;
    z -= step;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

cplx polish_simple(std::span<const cplx> c, cplx z) {
  const cplx d = horner_derivative(c, z);
  if (d == cplx(0.0)) return z;
  return z - horner(c, z) / d;
}

}  // namespace

cplx DampingPolynomial::operator()(cplx z) const { return horner(coeffs, z); }
cplx DampingPolynomial::derivative(cplx z) const { return horner_derivative(coeffs, z); }
double DampingPolynomial::magnitude(cplx z) const { return horner_magnitude(coeffs, z); }

RootRecord RootRecord::make(cplx zeta, int multiplicity) {
  RootRecord r;
  r.zeta = zeta;
  r.modulus = std::abs(zeta);
  r.theta = std::arg(zeta);
  if (r.theta <= -kPi) r.theta = kPi;  // keep the principal branch (-pi, pi]
  r.multiplicity = multiplicity;
  return r;
}

bool RootRecord::is_unit() const noexcept { return zeta == cplx(1.0); }

DampingPolynomial build_polynomial(int p, int q, cplx alpha) {
  if (p <= 0 || q <= p || gcd_int(p, q) != 1) {
    throw SolverError(ErrorKind::Domain, "damping polynomial needs coprime 0 < p < q, got " +
                                             std::to_string(p) + "/" + std::to_string(q));
  }
  DampingPolynomial poly;
  poly.p = p;
  poly.q = q;
  poly.alpha = alpha;
  poly.regime = regime_for(alpha);
  cplx eff = alpha;
  if (poly.regime == Regime::CriticalPlus) eff = 2.0;
  if (poly.regime == Regime::CriticalMinus) eff = -2.0;

  std::vector<cplx> c(q + 1, 0.0);
  c[q] += 2.0 - eff;
  c[p] += eff;
  c[q - p] += eff;
  c[0] -= 2.0 + eff;
  while (c.size() > 1 && c.back() == cplx(0.0)) c.pop_back();
  poly.coeffs = std::move(c);
  poly.effective_degree = static_cast<int>(poly.coeffs.size()) - 1;
  return poly;
}

std::vector<cplx> aberth_roots(std::span<const cplx> coeffs, int max_sweeps) {
  const int m = static_cast<int>(coeffs.size()) - 1;
  if (m < 1 || coeffs.back() == cplx(0.0)) {
    throw SolverError(ErrorKind::Domain, "root finder needs a polynomial of degree >= 1");
  }
  if (m == 1) return {-coeffs[0] / coeffs[1]};

  // Fujiwara-type radius for the initial circle.
  double radius = 0.0;
  for (int j = 0; j < m; ++j) {
    const double ratio = std::abs(coeffs[j] / coeffs[m]);
    if (ratio > 0.0) radius = std::max(radius, std::pow(ratio, 1.0 / (m - j)));
  }
  if (radius == 0.0) radius = 1.0;

  std::vector<cplx> z(m);
  for (int k = 0; k < m; ++k) {
    z[k] = std::polar(radius, 2.0 * kPi * k / m + 0.4);
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (int k = 0; k < m; ++k) {
      const cplx value = horner(coeffs, z[k]);
      if (std::abs(value) <= 8.0 * kEps * horner_magnitude(coeffs, z[k])) continue;
      converged = false;
      const cplx deriv = horner_derivative(coeffs, z[k]);
      const cplx w = value / deriv;
      cplx repulsion = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const cplx step = w / (1.0 - w * repulsion);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[k] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[k])) continue;
    }
    if (converged) return z;
  }
  // Double roots converge linearly and may stall just above the residual test;
  // accept if every residual is within a loose backward-error bound.
  for (const cplx zk : z) {
    if (std::abs(horner(coeffs, zk)) > 1e-10 * horner_magnitude(coeffs, zk)) {
      throw SolverError(ErrorKind::NonConvergence,
                        "simultaneous root iteration did not converge in " +
                            std::to_string(max_sweeps) + " sweeps");
    }
  }
  return z;
}

std::vector<RootRecord> find_roots(const DampingPolynomial& poly) {
  if (poly.effective_degree < 1) {
    throw SolverError(ErrorKind::Domain, "damping polynomial has no roots");
  }
  std::vector<cplx> c = poly.coeffs;

  // Exact roots at zero (constant term vanishes at alpha = -2).
  int zero_mult = 0;
  while (zero_mult < static_cast<int>(c.size()) - 1 && c[zero_mult] == cplx(0.0)) ++zero_mult;
  c.erase(c.begin(), c.begin() + zero_mult);

  // Synthetic division by (z - 1).
  const int m = static_cast<int>(c.size()) - 1;
  std::vector<cplx> deflated(m);
  cplx carry = 0.0;
  for (int k = m; k >= 1; --k) {
    carry = c[k] + carry;
    deflated[k - 1] = carry;
  }
  const cplx remainder = c[0] + carry;
  if (std::abs(remainder) > 1e-12 * horner_magnitude(c, 1.0)) {
    throw SolverError(ErrorKind::Domain, "polynomial does not vanish at z = 1");
  }

  std::vector<RootRecord> out;
  out.push_back(RootRecord::make(1.0, 1));

  std::vector<RootRecord> rest;
  if (m >= 2) {
    std::vector<cplx> z = aberth_roots(deflated);
    std::vector<bool> used(z.size(), false);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (used[i]) continue;
      int mult = 1;
      cplx root = z[i];
      for (std::size_t j = i + 1; j < z.size() && mult == 1; ++j) {
        if (used[j]) continue;
        const double sep = std::abs(z[i] - z[j]);
        const double scale = std::max(1.0, std::abs(z[i]));
        if (sep > 1e-4 * scale) continue;
        const cplx candidate = polish_double(deflated, 0.5 * (z[i] + z[j]));
        const bool close = sep <= kRootClusterTol * scale;
        const bool shared = std::abs(horner(deflated, candidate)) <=
                            64.0 * kEps * horner_magnitude(deflated, candidate);
        if (close || shared) {
          used[j] = true;
          mult = 2;
          root = candidate;
        }
      }
      used[i] = true;
      if (mult == 1) root = polish_simple(c, root);
      rest.push_back(RootRecord::make(root, mult));
    }
    for (const auto& r : rest) {
      if (r.multiplicity > 2) {
        throw SolverError(ErrorKind::Multiplicity, "root of multiplicity above two");
      }
    }
    std::sort(rest.begin(), rest.end(), [](const RootRecord& x, const RootRecord& y) {
      if (x.theta != y.theta) return x.theta < y.theta;
      return x.modulus < y.modulus;
    });
  }
  out.insert(out.end(), rest.begin(), rest.end());
  if (zero_mult > 0) out.push_back(RootRecord::make(0.0, zero_mult));
  return out;
}

}  // namespace dampwave
