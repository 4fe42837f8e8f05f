#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hisp/operators.hpp"

namespace hisp {

/// Coefficients gamma_0..gamma_{L-1} of the Hankel operator, entry (j,k) = gamma_{j+k}.
struct HankelModel {
  std::vector<double> coefficients;
  /// Upper bound on sum_{j >= L} gamma_j^2.
  double tail_bound = 0.0;
  /// Smallest length at which the tail was certified below tol^2.
  std::size_t certified_length = 0;
  /// max of ||w_{j+1}|| / ||w_j|| over the certification window.
  double decay_ratio = 0.0;
  std::string source_hash;

  std::size_t length() const noexcept { return coefficients.size(); }
  bool certified() const noexcept { return certified_length > 0; }
};

struct HankelOptions {
  double tol = 1e-10;
  std::size_t max_coeffs = 100000;
  /// Keep generating past certification until at least this many coefficients exist.
  std::size_t min_coeffs = 0;
  /// Number of trailing norm ratios that must all be below one.
  std::size_t ratio_window = 10;
  /// Return the max_coeffs prefix with certified_length = 0 instead of throwing.
  bool allow_uncertified = false;
};

/// gamma_j = ((Sigma^*)^j p, q), generated by w_{j+1} = Sigma^* w_j from w_0 = p.
///
/// Telescoping ||x||^2 - ||Sigma^* x||^2 = (x, q)^2 along the orbit gives
/// sum_{j >= L} gamma_j^2 <= ||w_L||^2, so the tail bound is 2 ||w_L||^2. The
/// tail is certified once that bound is below tol^2 and the last
/// `ratio_window` ratios ||w_{j+1}|| / ||w_j|| are all below one (or w_L is
/// exactly zero). Throws TailNotCertified if max_coeffs is reached first,
/// unless allow_uncertified is set.
HankelModel hankel_coefficients(const ContractionData& data, const OperatorTriple& triple,
                                const HankelOptions& options = {});

/// HankelModel holding just the given coefficients (tail unknown, set to 0).
HankelModel model_from_coefficients(std::vector<double> coefficients);

/// m x m block with entries gamma_{j+k}; needs 2m-1 coefficients.
Eigen::MatrixXd build_hankel_matrix(const HankelModel& model, std::size_t m);

/// Rows 1..m-1 of an m x m Hankel block, i.e. the (m-1) x m block of S^* Gamma = Gamma S.
Eigen::MatrixXd apply_shift(const Eigen::MatrixXd& block);

/// (m-1) x (m-1) block with entries gamma_{j+k+1}; needs 2m-2 coefficients.
Eigen::MatrixXd build_shifted_block(const HankelModel& model, std::size_t m);

struct IsometryBlock {
  /// rows x N, row k = q^T (Sigma^*)^k
  Eigen::MatrixXd matrix;
  /// ||V^T V - I_N||_F at this row count
  double orthonormality_residual = 0.0;
};

IsometryBlock isometry_matrix(const ContractionData& data, std::size_t rows);

/// max |(V R V^T)(j,k) - gamma_{j+k}| over j + k <= rows/2.
double hankel_structure_residual(const IsometryBlock& iso, const OperatorTriple& triple, const HankelModel& model);

/// ||V Sigma^* - (V shifted up one row)||_F over the first rows-1 rows.
double isometry_intertwining_residual(const IsometryBlock& iso, const ContractionData& data);

}  // namespace hisp
