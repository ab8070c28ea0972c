#include "rsfade/error.hpp"

namespace rsfade {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OrderDomain: return "order-domain";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::DegenerateMatrix: return "degenerate-matrix";
    case ErrorKind::ComplexSpectrum: return "complex-spectrum";
    case ErrorKind::ProblemSpec: return "problem-spec";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::OracleCapacity: return "oracle-capacity";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::ScalePole: return "scale-pole";
    case ErrorKind::DegenerateRate: return "degenerate-rate";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::UnknownProblem: return "unknown-problem";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
      kind_(kind) {}

}  // namespace rsfade
