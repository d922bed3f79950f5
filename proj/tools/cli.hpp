#pragma once

// Batch front end: spectrum | verify | basis | graph-spectrum | green.
//
// Exit codes: 0 success, 1 usage error, 2 solver failure, 3 identity violation.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dampwave/params.hpp"

namespace dampwave::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitIdentity = 3;

enum class Model { Interval, Star };
enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  Model model = Model::Interval;
  std::optional<std::pair<int, int>> pq;
  std::optional<double> a;
  std::optional<int> n;
  cplx alpha{0.0, 0.0};
  double im_max = 10.0;
  std::optional<double> re_max;
  int trunc = 64;
  Format format = Format::Json;
  std::string out;  // empty: standard output
  double tol = 0.0;  // 0: library default
  cplx lambda{0.0, 0.0};  // green
  int grid = 16;          // green
};

/// "a", "bi", "a+bi", "a-bi", "i", "-i" with optional exponents.
cplx parse_complex(const std::string& text);
/// "P/Q" with coprimality checked later by the solver.
std::pair<int, int> parse_ratio(const std::string& text);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_basis(const RunConfig& cfg, std::ostream& out);
int cmd_green(const RunConfig& cfg, std::ostream& out);

/// Parses argv, dispatches, and maps solver errors to exit codes. Diagnostics
/// go to err; the report goes to --out or out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dampwave::cli
