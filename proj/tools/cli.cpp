#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dampwave/errors.hpp"
#include "dampwave/modes.hpp"
#include "dampwave/rational_spectrum.hpp"
#include "dampwave/spectrum.hpp"
#include "dampwave/stargraph.hpp"
#include "dampwave/trace.hpp"

namespace dampwave::cli {

namespace {

using nlohmann::json;

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json window_json(const SpectralWindow& w) {
  return json{{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min}, {"im_max", w.im_max}};
}

json roots_json(const std::vector<RootRecord>& roots) {
  json arr = json::array();
  for (const auto& r : roots) {
    arr.push_back({{"re", r.zeta.real()},
                   {"im", r.zeta.imag()},
                   {"modulus", r.modulus},
                   {"theta", r.theta},
                   {"multiplicity", r.multiplicity}});
  }
  return arr;
}

json config_json(const RunConfig& cfg) {
  json j{{"command", cfg.command},
         {"model", cfg.model == Model::Interval ? "interval" : "star"},
         {"alpha", complex_json(cfg.alpha)},
         {"im_max", cfg.im_max},
         {"trunc", cfg.trunc}};
  if (cfg.pq) j["pq"] = {cfg.pq->first, cfg.pq->second};
  if (cfg.a) j["a"] = *cfg.a;
  if (cfg.n) j["n"] = *cfg.n;
  j["re_max"] = cfg.re_max ? json(*cfg.re_max) : json(nullptr);
  if (cfg.tol > 0.0) j["tol"] = cfg.tol;
  return j;
}

json base_document(const RunConfig& cfg) { return json{{"schema_version", kSchemaVersion}, {"config", config_json(cfg)}}; }

void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
  if (cfg.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw SolverError(ErrorKind::Domain, "cannot open output file " + cfg.out);
  f << text;
}

void emit_json(const RunConfig& cfg, std::ostream& out, const json& doc) { emit(cfg, out, doc.dump(2) + "\n"); }

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

DampingParams interval_params(const RunConfig& cfg) {
  if (cfg.pq && cfg.a) throw SolverError(ErrorKind::Domain, "give either --pq or --a, not both");
  if (cfg.pq) return DampingParams::rational(cfg.pq->first, cfg.pq->second, cfg.alpha);
  if (cfg.a) return DampingParams::at(*cfg.a, cfg.alpha);
  throw SolverError(ErrorKind::Domain, "interval model needs --pq P/Q or --a REAL");
}

StarConfig star_config(const RunConfig& cfg) {
  if (!cfg.n) throw SolverError(ErrorKind::Domain, "star model needs --n INT");
  return StarConfig::make(*cfg.n, cfg.alpha);
}

json eigen_json(const std::vector<EigenvalueRecord>& eigs) {
  json arr = json::array();
  for (const auto& e : eigs) {
    arr.push_back({{"re", e.lambda.real()},
                   {"im", e.lambda.imag()},
                   {"family", e.family},
                   {"branch", e.branch},
                   {"alg_multiplicity", e.alg_multiplicity},
                   {"geo_multiplicity", e.geo_multiplicity},
                   {"residual", e.residual}});
  }
  return arr;
}

std::string eigen_csv(const std::vector<EigenvalueRecord>& eigs) {
  std::string s = "re,im,family,branch,alg_multiplicity,residual\n";
  for (const auto& e : eigs) {
    s += csv_number(e.lambda.real()) + "," + csv_number(e.lambda.imag()) + "," + std::to_string(e.family) + "," +
         std::to_string(e.branch) + "," + std::to_string(e.alg_multiplicity) + "," + csv_number(e.residual) + "\n";
  }
  return s;
}

json report_json(const TraceReport& r) {
  return json{{"model", r.model},
              {"trace_re_inverse", r.trace_re_inverse},
              {"spectral_sum_closed", r.spectral_sum_closed ? json(*r.spectral_sum_closed) : json(nullptr)},
              {"spectral_sum_truncated", r.spectral_sum_truncated},
              {"tail_bound", std::isfinite(r.tail_bound) ? json(r.tail_bound) : json(nullptr)},
              {"gap", r.gap},
              {"critical_correction", r.critical_correction},
              {"regime", to_string(r.regime)},
              {"riesz_verdict", r.riesz_verdict},
              {"verdict_basis", to_string(r.basis)},
              {"r", r.r},
              {"truncation", r.truncation},
              {"c1", r.c1},
              {"c2", r.c2},
              {"tolerance", r.tolerance},
              {"violations", r.violations}};
}

std::vector<int> size_ladder(int trunc) {
  std::vector<int> sizes;
  for (int s = 8; s <= trunc; s *= 2) sizes.push_back(s);
  if (sizes.empty()) sizes.push_back(std::max(trunc, 1));
  return sizes;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw SolverError(ErrorKind::Domain, "empty complex literal");
  auto to_double = [&](const std::string& part, double if_bare) {
    if (part.empty() || part == "+") return if_bare;
    if (part == "-") return -if_bare;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw SolverError(ErrorKind::Domain, "malformed complex literal '" + text + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {to_double(s, 0.0), 0.0};
  s.pop_back();
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s, 1.0)};
  const std::string re = s.substr(0, split);
  if (re.empty()) throw SolverError(ErrorKind::Domain, "malformed complex literal '" + text + "'");
  return {to_double(re, 0.0), to_double(s.substr(split), 1.0)};
}

std::pair<int, int> parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw SolverError(ErrorKind::Domain, "ratio must look like P/Q");
  try {
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    const std::string ps = text.substr(0, slash);
    const std::string qs = text.substr(slash + 1);
    const int p = std::stoi(ps, &u1);
    const int q = std::stoi(qs, &u2);
    if (u1 != ps.size() || u2 != qs.size()) throw std::invalid_argument("trailing");
    return {p, q};
  } catch (const std::exception&) {
    throw SolverError(ErrorKind::Domain, "ratio must look like P/Q, got '" + text + "'");
  }
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  json doc = base_document(cfg);
  json diag;
  std::vector<EigenvalueRecord> eigs;
  if (cfg.model == Model::Star) {
    const StarConfig star = star_config(cfg);
    const SpectralWindow w = cfg.re_max ? SpectralWindow::strip(*cfg.re_max, -cfg.im_max, cfg.im_max)
                                        : imaginary_band(-cfg.im_max, cfg.im_max);
    GraphSpectrum gs = graph_spectrum(star, w);
    eigs = std::move(gs.eigenvalues);
    diag["method"] = "graph-polynomial";
    diag["window"] = window_json(w);
    diag["regime"] = to_string(gs.polynomial.regime);
    diag["roots"] = roots_json(gs.roots);
    diag["escaped"] = roots_json(gs.escaped);
  } else {
    const DampingParams params = interval_params(cfg);
    SpectrumResult sr = cfg.re_max ? compute_spectrum(params, SpectralWindow::strip(*cfg.re_max, -cfg.im_max, cfg.im_max))
                                   : compute_spectrum_band(params, -cfg.im_max, cfg.im_max);
    eigs = std::move(sr.eigenvalues);
    diag["method"] = to_string(sr.method);
    diag["window"] = window_json(sr.window);
    diag["regime"] = to_string(regime_for(params.alpha()));
    if (sr.method == SpectrumMethod::Rational) {
      diag["roots"] = roots_json(sr.roots);
      diag["escaped"] = roots_json(sr.escaped);
    }
  }
  sort_by_imag(eigs);
  double worst = 0.0;
  for (const auto& e : eigs) worst = std::max(worst, e.residual);
  diag["count"] = total_multiplicity(eigs);
  diag["max_residual"] = worst;
  if (cfg.format == Format::Csv) {
    emit(cfg, out, eigen_csv(eigs));
    return kExitOk;
  }
  doc["eigenvalues"] = eigen_json(eigs);
  doc["diagnostics"] = diag;
  emit_json(cfg, out, doc);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  TraceReport rep;
  if (cfg.model == Model::Star) {
    const StarConfig star = star_config(cfg);
    rep = livsic_report_graph(star.n, star.alpha, cfg.trunc, false, cfg.tol);
  } else {
    rep = livsic_report(interval_params(cfg), cfg.trunc, false, cfg.tol);
  }
  const int status = rep.violations.empty() ? kExitOk : kExitIdentity;
  if (cfg.format == Format::Csv) {
    std::string s = "key,value\n";
    const json j = report_json(rep);
    for (const auto& [k, v] : j.items()) {
      if (k == "violations") continue;
      s += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    s += "violations," + std::to_string(rep.violations.size()) + "\n";
    emit(cfg, out, s);
    return status;
  }
  json doc = base_document(cfg);
  doc["eigenvalues"] = json::array();
  doc["trace_report"] = report_json(rep);
  doc["diagnostics"] = {{"consistent", rep.violations.empty()}};
  emit_json(cfg, out, doc);
  return status;
}

int cmd_basis(const RunConfig& cfg, std::ostream& out) {
  if (cfg.model != Model::Interval) {
    throw SolverError(ErrorKind::Domain, "basis diagnostics are available for the interval model only");
  }
  const DampingParams params = interval_params(cfg);
  json ladder = json::array();
  std::string csv = "size,modes,condition,min_eigenvalue,max_eigenvalue\n";
  for (const int size : size_ladder(cfg.trunc)) {
    const GramReport g = gram_report_truncated(params, size);
    ladder.push_back({{"size", size},
                      {"modes", g.size},
                      {"condition", g.condition},
                      {"min_eigenvalue", g.min_eigenvalue},
                      {"max_eigenvalue", g.max_eigenvalue}});
    csv += std::to_string(size) + "," + std::to_string(g.size) + "," + csv_number(g.condition) + "," +
           csv_number(g.min_eigenvalue) + "," + csv_number(g.max_eigenvalue) + "\n";
  }
  const int pairs = std::min(cfg.trunc, 10);
  const Eigen::MatrixXcd b = biorthogonality_matrix(leading_eigenvalues(params, pairs), params);
  const Eigen::MatrixXcd defect = b - Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  const double frob = defect.norm();
  const double maxabs = defect.size() ? defect.cwiseAbs().maxCoeff() : 0.0;
  if (cfg.format == Format::Csv) {
    csv += "# biorthogonality_residual_frobenius," + csv_number(frob) + "\n";
    emit(cfg, out, csv);
    return kExitOk;
  }
  json doc = base_document(cfg);
  doc["eigenvalues"] = json::array();
  doc["diagnostics"] = {{"gram", ladder},
                        {"biorthogonality",
                         {{"pairs", b.rows()}, {"residual_frobenius", frob}, {"residual_max", maxabs}}}};
  emit_json(cfg, out, doc);
  return kExitOk;
}

int cmd_green(const RunConfig& cfg, std::ostream& out) {
  if (cfg.model != Model::Interval) throw SolverError(ErrorKind::Domain, "green needs the interval model");
  if (cfg.grid < 2) throw SolverError(ErrorKind::Domain, "--grid must be at least 2");
  const DampingParams params = interval_params(cfg);
  const GreenKernel g = green_kernel(cfg.lambda, params);
  json values = json::array();
  std::string csv = "x,y,re,im\n";
  for (int i = 0; i < cfg.grid; ++i) {
    const double x = kPi * i / (cfg.grid - 1);
    for (int j = 0; j < cfg.grid; ++j) {
      const double y = kPi * j / (cfg.grid - 1);
      const cplx v = g(x, y);
      values.push_back({x, y, v.real(), v.imag()});
      csv += csv_number(x) + "," + csv_number(y) + "," + csv_number(v.real()) + "," + csv_number(v.imag()) + "\n";
    }
  }
  if (cfg.format == Format::Csv) {
    emit(cfg, out, csv);
    return kExitOk;
  }
  json doc = base_document(cfg);
  doc["config"]["lambda"] = complex_json(cfg.lambda);
  doc["eigenvalues"] = json::array();
  doc["diagnostics"] = {{"s_value", complex_json(g.s_value)}, {"columns", {"x", "y", "re", "im"}}, {"values", values}};
  emit_json(cfg, out, doc);
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and trace identities of the Dirac-damped wave operator"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string model = "interval";
  std::string pq;
  std::string alpha = "0";
  std::string lambda = "0";
  std::string format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", model, "interval | star")->check(CLI::IsMember({"interval", "star"}));
    sub->add_option("--pq", pq, "rational placement a = P pi / Q, as P/Q");
    sub->add_option("--a", cfg.a, "real placement a in (0, pi)");
    sub->add_option("--n", cfg.n, "edge count of the star graph");
    sub->add_option("--alpha", alpha, "damping constant, e.g. 1+2i");
    sub->add_option("--im-max", cfg.im_max, "window half-height in Im lambda");
    sub->add_option("--re-max", cfg.re_max, "window half-width in Re lambda");
    sub->add_option("--trunc", cfg.trunc, "truncation N")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output path (default: standard output)");
    sub->add_option("--tol", cfg.tol, "verdict tolerance override");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue table sorted by Im lambda");
  CLI::App* graph = app.add_subcommand("graph-spectrum", "spectrum with --model star");
  CLI::App* verify = app.add_subcommand("verify", "trace identities and Riesz-basis verdict");
  CLI::App* basis = app.add_subcommand("basis", "Gram conditioning and biorthogonality");
  CLI::App* green = app.add_subcommand("green", "Green kernel on a grid");
  for (CLI::App* sub : {spectrum, graph, verify, basis, green}) add_common(sub);
  green->add_option("--lambda", lambda, "spectral parameter");
  green->add_option("--grid", cfg.grid, "grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.model = model == "star" ? Model::Star : Model::Interval;
    if (graph->parsed()) cfg.model = Model::Star;
    cfg.format = format == "csv" ? Format::Csv : Format::Json;
    cfg.alpha = parse_complex(alpha);
    cfg.lambda = parse_complex(lambda);
    if (!pq.empty()) cfg.pq = parse_ratio(pq);
    if (!(cfg.im_max > 0.0)) throw SolverError(ErrorKind::Domain, "--im-max must be positive");
    if (cfg.re_max && !(*cfg.re_max > 0.0)) throw SolverError(ErrorKind::Domain, "--re-max must be positive");

    if (spectrum->parsed() || graph->parsed()) {
      cfg.command = spectrum->parsed() ? "spectrum" : "graph-spectrum";
      return cmd_spectrum(cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      const int status = cmd_verify(cfg, out);
      if (status == kExitIdentity) err << "error (identity violation): consistency checks failed\n";
      return status;
    }
    if (basis->parsed()) {
      cfg.command = "basis";
      return cmd_basis(cfg, out);
    }
    cfg.command = "green";
    return cmd_green(cfg, out);
  } catch (const SolverError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    if (e.kind() == ErrorKind::IdentityViolation) return kExitIdentity;
    return e.kind() == ErrorKind::Domain ? kExitUsage : kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace dampwave::cli
