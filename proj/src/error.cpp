#include "hisp/error.hpp"

#include <cstdio>

namespace hisp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InterlacingViolation: return "InterlacingViolation";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::ZeroMuInInfiniteMode: return "ZeroMuInInfiniteMode";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::BadDecayParameters: return "BadDecayParameters";
    case ErrorKind::DegenerateGap: return "DegenerateGap";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::DivisionDegenerate: return "DivisionDegenerate";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::EigenvalueMismatch: return "EigenvalueMismatch";
    case ErrorKind::TailNotCertified: return "TailNotCertified";
    case ErrorKind::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LengthMismatch:
    case ErrorKind::InterlacingViolation:
    case ErrorKind::ZeroLambda:
    case ErrorKind::ZeroMuInInfiniteMode:
    case ErrorKind::NonFiniteInput:
    case ErrorKind::EmptyInput:
    case ErrorKind::BadDecayParameters:
    case ErrorKind::MalformedInput:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), index_(index) {}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace hisp
