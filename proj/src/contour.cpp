#include "dampwave/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dampwave/charfn.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/rational_spectrum.hpp"

namespace dampwave {

namespace {

class PhaseTracker {
 public:
  PhaseTracker(const PhaseFn& f, const ContourOptions& opts) : f_(f), opts_(opts) {}

  PhaseSample sample(cplx z) const {
    PhaseSample s = f_(z);
    if (!(s.relative_modulus >= opts_.boundary_tol)) {
      throw SolverError(ErrorKind::BoundaryZero, "characteristic function vanishes on the contour");
    }
    return s;
  }

  // Total change of argument along the segment z0 -> z1.
  double edge(cplx z0, cplx z1) const {
    const double len = std::abs(z1 - z0);
    const int n = std::max(4, static_cast<int>(std::ceil(len / opts_.initial_step)));
    const double min_len = len / opts_.max_points_per_edge;
    double total = 0.0;
    PhaseSample prev = sample(z0);
    cplx zprev = z0;
    for (int k = 1; k <= n; ++k) {
      const cplx z = z0 + (z1 - z0) * (static_cast<double>(k) / n);
      const PhaseSample cur = sample(z);
      total += track(zprev, prev, z, cur, min_len);
      prev = cur;
      zprev = z;
    }
    return total;
  }

 private:
  double track(cplx z0, const PhaseSample& s0, cplx z1, const PhaseSample& s1, double min_len) const {
    constexpr double kMaxStep = 0.5 * kPi;
    const double d = std::arg(s1.value / s0.value);
    const cplx zm = 0.5 * (z0 + z1);
    const PhaseSample sm = sample(zm);
    const double d1 = std::arg(sm.value / s0.value);
    const double d2 = std::arg(s1.value / sm.value);
    if (std::abs(d) < kMaxStep && std::abs(d1) < kMaxStep && std::abs(d2) < kMaxStep) {
      return d1 + d2;
    }
    if (0.5 * std::abs(z1 - z0) < min_len) {
      throw SolverError(ErrorKind::BoundaryZero, "phase step could not be resolved on the contour");
    }
    return track(z0, s0, zm, sm, min_len) + track(zm, sm, z1, s1, min_len);
  }

  const PhaseFn& f_;
  const ContourOptions& opts_;
};

bool in_cell(cplx z, const SpectralWindow& cell) {
  const double slack = 1e-9 * std::max(cell.width(), cell.height());
  return cell.contains(z, slack);
}

struct Locator {
  const DampingParams& params;
  ContourOptions opts;
  PhaseFn phase;
  std::vector<EigenvalueRecord> found;

  int raw_count(const SpectralWindow& cell) const { return winding_number(cell, phase, opts); }

  bool try_newton(const SpectralWindow& cell, int count) {
    const cplx c = cell.center();
    const double hw = 0.5 * cell.width();
    const double hh = 0.5 * cell.height();
    const std::array<cplx, 5> seeds = {c, c + cplx(0.3 * hw, 0.2 * hh), c - cplx(0.2 * hw, 0.3 * hh),
                                       c + cplx(-0.3 * hw, 0.25 * hh), c + cplx(0.25 * hw, -0.3 * hh)};
    NewtonOptions nopts;
    nopts.max_radius = 2.0 * std::max(cell.width(), cell.height()) + 0.5;
    for (const cplx seed : seeds) {
      try {
        const NewtonResult r = newton_refine(seed, params, nopts);
        if (!in_cell(r.record.lambda, cell)) continue;
        if (r.record.alg_multiplicity != count) continue;
        found.push_back(r.record);
        return true;
      } catch (const SolverError& e) {
        if (e.kind() == ErrorKind::Multiplicity) throw;
      }
    }
    return false;
  }

  void process(const SpectralWindow& cell, int count, int depth) {
    if (count == 0) return;
    if (count < 0) throw SolverError(ErrorKind::NonConvergence, "negative zero count in a cell");
    if (count <= 2 && try_newton(cell, count)) return;
    if (depth > 60 || std::max(cell.width(), cell.height()) < 1e-10) {
      if (count > 2) {
        throw SolverError(ErrorKind::Multiplicity, "zero of multiplicity above two");
      }
      throw SolverError(ErrorKind::NonConvergence, "Newton could not isolate a zero in a cell");
    }
    static constexpr std::array<double, 7> kSplits = {0.5, 0.47, 0.53, 0.44, 0.56, 0.41, 0.59};
    const bool split_re = cell.width() >= cell.height();
    for (const double s : kSplits) {
      SpectralWindow lo = cell;
      SpectralWindow hi = cell;
      if (split_re) {
        const double x = cell.re_min + s * cell.width();
        lo.re_max = x;
        hi.re_min = x;
      } else {
        const double y = cell.im_min + s * cell.height();
        lo.im_max = y;
        hi.im_min = y;
      }
      int c_lo = 0;
      int c_hi = 0;
      try {
        c_lo = raw_count(lo);
        c_hi = raw_count(hi);
      } catch (const SolverError& e) {
        if (e.kind() == ErrorKind::BoundaryZero) continue;
        throw;
      }
      if (c_lo + c_hi != count) continue;
      process(lo, c_lo, depth + 1);
      process(hi, c_hi, depth + 1);
      return;
    }
    throw SolverError(ErrorKind::NonConvergence, "no admissible split of a cell");
  }
};

}  // namespace

int winding_number(const SpectralWindow& w, const PhaseFn& f, const ContourOptions& opts) {
  const PhaseTracker tracker(f, opts);
  const cplx c00(w.re_min, w.im_min);
  const cplx c10(w.re_max, w.im_min);
  const cplx c11(w.re_max, w.im_max);
  const cplx c01(w.re_min, w.im_max);
  const double total =
      tracker.edge(c00, c10) + tracker.edge(c10, c11) + tracker.edge(c11, c01) + tracker.edge(c01, c00);
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-3) {
    throw SolverError(ErrorKind::NonConvergence,
                      "winding number is not an integer: " + std::to_string(turns));
  }
  return static_cast<int>(rounded);
}

PhaseFn char_phase(const DampingParams& params) {
  return [params](cplx z) {
    const ScaledValue s = eval_char_scaled(z, params);
    const double rel = std::abs(s.mantissa) * std::max(1.0, std::abs(z)) / (1.0 + std::abs(params.alpha()));
    return PhaseSample{s.mantissa, rel};
  };
}

ZeroCount count_zeros_detailed(const SpectralWindow& window, const DampingParams& params,
                               const ContourOptions& opts) {
  const PhaseFn phase = char_phase(params);
  SpectralWindow w = window;
  for (int attempt = 0; attempt <= opts.max_dilations; ++attempt) {
    try {
      return ZeroCount{winding_number(w, phase, opts), w, attempt};
    } catch (const SolverError& e) {
      if (e.kind() != ErrorKind::BoundaryZero) throw;
      w = w.dilated(opts.dilation);
    }
  }
  throw SolverError(ErrorKind::BoundaryZero,
                    "zero on the window boundary persists after " +
                        std::to_string(opts.max_dilations) + " dilations");
}

int count_zeros(const SpectralWindow& window, const DampingParams& params) {
  return count_zeros_detailed(window, params).count;
}

NewtonResult newton_refine(cplx seed, const DampingParams& params, const NewtonOptions& opts) {
  cplx lambda = seed;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const CharValue cv = eval_char_derivatives(lambda, params);
    const double scale = char_scale(lambda, params.alpha());
    if (std::abs(cv.f) <= opts.tol * scale) {
      if (std::abs(lambda) < 1e-6) {
        throw SolverError(ErrorKind::NonConvergence, "Newton converged to the removable zero at 0");
      }
      int mult = 1;
      // Near a double zero |F| drops below tolerance while still ~sqrt(tol)
      // away; a double zero of F is a simple zero of F', so polish there.
      if (std::abs(cv.f1) <= 1e-4 * scale) {
        cplx z = lambda;
        for (int k = 0; k < 8; ++k) {
          const CharValue c2 = eval_char_derivatives(z, params);
          if (c2.f2 == cplx(0.0)) break;
          const cplx step = c2.f1 / c2.f2;
          z -= step;
          if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        const CharValue cz = eval_char_derivatives(z, params);
        const double sz = char_scale(z, params.alpha());
        if (std::abs(cz.f) <= opts.tol * sz && std::abs(cz.f1) <= kDoubleTol * sz) {
          lambda = z;
          mult = 2;
        }
      }
      EigenvalueRecord rec;
      rec.lambda = lambda;
      rec.alg_multiplicity = mult;
      rec.residual = std::abs(eval_char(lambda, params));
      return NewtonResult{rec, it};
    }
    if (cv.f1 == cplx(0.0)) {
      throw SolverError(ErrorKind::NonConvergence, "Newton hit a critical point of F");
    }
    // |F'|^2 ~ 2 |F F''| near a double zero, much larger near a simple one.
    const double m = (std::norm(cv.f1) < 4.0 * std::abs(cv.f) * std::abs(cv.f2)) ? 2.0 : 1.0;
    lambda -= m * cv.f / cv.f1;
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) ||
        std::abs(lambda - seed) > opts.max_radius) {
      throw SolverError(ErrorKind::NonConvergence, "Newton iterate escaped from its seed region");
    }
  }
  throw SolverError(ErrorKind::NonConvergence,
                    "Newton did not converge in " + std::to_string(opts.max_iterations) + " iterations");
}

double localization_bound(cplx alpha) { return std::max(4.0, 2.0 * std::abs(alpha)); }

SpectralWindow strip_window(const DampingParams& params, double im_min, double im_max) {
  double c = localization_bound(params.alpha());
  ZeroCount current = count_zeros_detailed(SpectralWindow::strip(c, im_min, im_max), params);
  for (int k = 0; k < 6; ++k) {
    const ZeroCount wider = count_zeros_detailed(SpectralWindow::strip(2.0 * c, im_min, im_max), params);
    if (wider.count == current.count) return current.window;
    c *= 2.0;
    current = wider;
  }
  throw SolverError(ErrorKind::NonConvergence, "eigenvalue strip did not stabilise");
}

void assign_imaginary_ranks(std::vector<EigenvalueRecord>& eigs) {
  sort_by_imag(eigs);
  constexpr double kAxisTol = 1e-12;
  long up = 0;
  for (auto& e : eigs) {
    if (e.lambda.imag() > kAxisTol) e.branch = ++up;
  }
  long down = 0;
  for (auto it = eigs.rbegin(); it != eigs.rend(); ++it) {
    if (it->lambda.imag() < -kAxisTol) it->branch = -(++down);
  }
  for (auto& e : eigs) {
    if (std::abs(e.lambda.imag()) <= kAxisTol) e.branch = 0;
  }
}

SpectrumScan locate_spectrum(const SpectralWindow& window, const DampingParams& params) {
  const ZeroCount zc = count_zeros_detailed(window, params);
  Locator loc{params, ContourOptions{}, char_phase(params), {}};
  loc.process(zc.window, zc.count, 0);

  SpectrumScan scan;
  scan.window = zc.window;
  scan.count = zc.count;
  scan.eigenvalues = detect_double_eigenvalues(std::move(loc.found), params);
  for (auto& e : scan.eigenvalues) e.family = 0;
  assign_imaginary_ranks(scan.eigenvalues);
  if (total_multiplicity(scan.eigenvalues) != zc.count) {
    throw SolverError(ErrorKind::NonConvergence, "located multiplicity differs from the zero count");
  }
  return scan;
}

std::vector<EigenvalueRecord> locate_eigenvalues(const SpectralWindow& window,
                                                 const DampingParams& params) {
  return locate_spectrum(window, params).eigenvalues;
}

}  // namespace dampwave
