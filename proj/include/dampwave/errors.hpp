#pragma once

#include <stdexcept>
#include <string>

namespace dampwave {

enum class ErrorKind {
  Domain,           // invalid parameters or arguments
  Overflow,         // value beyond the scaled double range
  NonConvergence,   // iterative solver gave up
  BoundaryZero,     // zero of the characteristic function on a contour
  Multiplicity,     // triple root or inconsistent multiplicity
  NotEigenvalue,    // mode requested at a point outside the spectrum
  Pole,             // resolvent requested at a point of the spectrum
  Coverage,         // truncated sum with missing branches
  SingularGram,
  IdentityViolation,
};

const char* to_string(ErrorKind kind);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dampwave
