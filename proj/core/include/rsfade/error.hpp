#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsfade {

/// Failure categories raised by the library. Each maps to a distinct
/// precondition or runtime condition so callers can branch on it.
enum class ErrorKind {
  OrderDomain,       // fractional order outside (0,1) U (1,2]
  Argument,          // bad size, step, or truncation count
  Shape,             // dimension mismatch between operands
  DegenerateMatrix,  // tridiagonal Toeplitz with zero off-diagonal
  ComplexSpectrum,   // tridiagonal Toeplitz with c/a < 0
  ProblemSpec,       // inconsistent problem definition
  Singularity,       // factorization failed
  Divergence,        // non-finite values produced by a stepper
  OracleCapacity,    // dense oracle asked to handle too many unknowns
  Configuration,     // inconsistent run configuration (e.g. step count)
  Domain,            // function evaluated outside its domain
  ScalePole,         // Riesz scale evaluated at gamma = 1
  DegenerateRate,    // convergence rate from non-positive data
  Parse,             // malformed configuration file
  Usage,             // bad command-line usage
  UnknownProblem,    // catalog lookup failed
  Io,                // file system failure
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rsfade
