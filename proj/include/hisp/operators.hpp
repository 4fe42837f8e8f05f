#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hisp/borg.hpp"
#include "hisp/spectra.hpp"

namespace hisp {

/// The operators W = R^2, W_1 = R_1^2 = W - p p^T and p, written in the
/// orthonormal eigenbasis of W in which p has coordinates sqrt(a_k).
struct OperatorTriple {
  Eigen::VectorXd w_diagonal;  ///< lambda_k^2, descending
  Eigen::VectorXd p;           ///< sqrt(a_k)
  Eigen::MatrixXd W1;          ///< W - p p^T
  Eigen::VectorXd r_diagonal;  ///< signed lambda_k
  Eigen::MatrixXd R1;          ///< V diag(mu) V^T
  /// Computed eigenpairs of W1, descending; eigen_pairing[k] is the index of
  /// the mu paired with the k-th eigenvalue.
  Eigen::VectorXd w1_eigenvalues;
  Eigen::MatrixXd w1_eigenvectors;
  std::vector<std::size_t> eigen_pairing;
  /// max_k |theta_k - mu_k^2|
  double eigen_mismatch = 0.0;
  std::string source_hash;

  std::size_t size() const noexcept { return static_cast<std::size_t>(p.size()); }
  Eigen::MatrixXd W() const { return w_diagonal.asDiagonal(); }
  Eigen::MatrixXd R() const { return r_diagonal.asDiagonal(); }
  double lambda_max() const noexcept { return std::abs(r_diagonal(0)); }
};

struct AssembleOptions {
  /// EigenvalueMismatch fires above this multiple of lambda_1^2.
  double mismatch_tolerance = 1e-8;
};

/// Builds the triple for a spectrum and its measure. The eigenvalues of W1
/// are computed from (W, p) alone and then paired in descending order with
/// mu_k^2. Once they agree, R1 takes the signed mu_k on the eigenvectors
/// (W - mu_k^2)^-1 p.
OperatorTriple assemble_pair(const SpectralMeasure& measure, const InterlacedSpectrum& spectrum,
                             const AssembleOptions& options = {});

struct ContractionData {
  Eigen::MatrixXd sigma_star;  ///< R1 R^-1
  Eigen::VectorXd q;           ///< R^-1 p
  double operator_norm = 0.0;
  /// ||(I - Sigma Sigma^*) - q q^T||_F
  double defect_residual = 0.0;
  /// ||R1 - Sigma^* R||_F
  double intertwining_residual = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(q.size()); }
};

ContractionData build_sigma_star(const OperatorTriple& triple);

/// Largest singular value via the eigenvalues of M^T M.
double operator_norm(const Eigen::MatrixXd& m);

struct StabilityProfile {
  /// norms[n-1] = ||(Sigma^*)^n probe||, n = 1..steps
  std::vector<double> norms;
  /// | ||x||^2 - sum_{k<steps} ((Sigma^*)^k x, q)^2 - ||(Sigma^*)^steps x||^2 |
  double parseval_residual = 0.0;
};

StabilityProfile stability_profile(const ContractionData& data, const Eigen::VectorXd& probe, std::size_t steps);

/// Unit vector with normally distributed direction, reproducible from the seed.
Eigen::VectorXd random_probe(std::size_t size, std::uint64_t seed);

}  // namespace hisp
