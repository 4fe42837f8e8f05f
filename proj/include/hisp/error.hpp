#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hisp {

enum class ErrorKind {
  // spectrum validation
  LengthMismatch,
  InterlacingViolation,
  ZeroLambda,
  ZeroMuInInfiniteMode,
  NonFiniteInput,
  EmptyInput,
  BadDecayParameters,
  // analytic evaluation
  DegenerateGap,
  PoleEvaluation,
  DivisionDegenerate,
  // linear algebra
  NotSymmetric,
  ConvergenceFailure,
  EigenvalueMismatch,
  // hankel synthesis
  TailNotCertified,
  InsufficientCoefficients,
  TooSmall,
  // plumbing
  MalformedInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds caused by bad user input rather than a numerical failure.
bool is_validation_error(ErrorKind kind) noexcept;

/// %.6g rendering for error messages.
std::string format_real(double x);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// 1-based position of the offending entry, when the error has one.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace hisp
