#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hisp/hankel.hpp"
#include "hisp/spectra.hpp"

namespace hisp {

struct ForwardSpectrum {
  std::vector<double> lambdas;  ///< top eigenvalues of the m x m block of Gamma, by magnitude
  std::vector<double> mus;      ///< top eigenvalues of the (m-1) x (m-1) block of Gamma S
  std::size_t m = 0;
};

/// Eigenvalues of the leading blocks of Gamma and Gamma S. Requires
/// 2m <= L + 1 (InsufficientCoefficients) and n_wanted <= m - 1 (TooSmall).
ForwardSpectrum forward_spectrum(const HankelModel& model, std::size_t m, std::size_t n_wanted);

/// Number of eigenvalues of the m x m block above `threshold` times the
/// largest magnitude; used when the caller does not know the rank.
std::size_t numerical_rank(const HankelModel& model, std::size_t m, double threshold);

struct VerifyConfig {
  HankelOptions coefficients;
  /// Fixed truncation; adaptive doubling from 2N when empty.
  std::optional<std::size_t> truncation;
  std::size_t max_truncation = 4096;
  double eigen_tol = 1e-8;      ///< relative, per eigenvalue
  double structure_tol = 1e-8;  ///< Hankel residual of V R V^T
  double isometry_tol = 1e-8;   ///< ||V^T V - I||_F at the certified row count
  double parseval_tol = 1e-10;
  double defect_tol = 1e-10;
  double norm_slack = 1e-10;  ///< ||Sigma^*|| <= 1 + slack
  std::uint64_t seed = 20240601;
};

struct StageFailure {
  std::string stage;
  std::string kind;
  std::string message;
};

struct VerificationReport {
  std::vector<double> input_lambdas;
  std::vector<double> input_mus;
  std::vector<double> recovered_lambdas;
  std::vector<double> recovered_mus;
  std::vector<double> lambda_errors;  ///< relative
  std::vector<double> mu_errors;      ///< relative; absolute where mu_k = 0
  double structure_residual = 0.0;
  double isometry_residual = 0.0;
  double parseval_residual = 0.0;
  double defect_residual = 0.0;
  double operator_norm = 0.0;
  double intertwining_residual = 0.0;
  std::size_t truncation_m = 0;
  std::size_t coefficient_count = 0;
  std::size_t certified_length = 0;
  double tail_bound = 0.0;
  bool tail_certified = false;
  bool recovered_interlaced = false;
  bool signs_preserved = false;
  bool passed = false;
  std::optional<StageFailure> failure;
  std::string source_hash;
};

/// weights -> triple -> Sigma^* -> coefficients -> forward spectra, with every
/// certificate collected. Stage errors are caught and recorded in `failure`.
VerificationReport round_trip(const InterlacedSpectrum& spectrum, const VerifyConfig& config = {});

}  // namespace hisp
