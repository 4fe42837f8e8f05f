#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace hisp {

/// Eigenpairs with values in descending order; column i of `vectors` belongs
/// to values(i) and has its largest-magnitude component positive.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Cyclic two-sided Jacobi. A rotation is applied whenever
/// |a_pq| > eps sqrt(|a_pp a_qq|), which keeps small eigenvalues of graded
/// positive definite matrices accurate to high relative precision.
/// Throws NotSymmetric when |m - m^T| exceeds 1e-13 max|m|, and
/// ConvergenceFailure when `max_sweeps` sweeps do not settle.
SymmetricEigen symmetric_eigendecomposition(const Eigen::MatrixXd& m, int max_sweeps = 80);

/// Eigenpairs of diag(l_k^2) - p p^T with p_k = sqrt(a_k), for
/// l_1 > l_2 > ... > l_N > 0 and a_k > 0.
///
/// Each eigenvalue is the root of 1 - sum_k a_k / (l_k^2 - x) in its
/// interlacing interval, located by bisection on the double grid in a
/// variable measured from the nearest pole, so small roots keep their
/// relative accuracy. Eigenvectors come from the explicit formula
/// v_k ~ sqrt(a_k) / (l_k^2 - x).
SymmetricEigen downdate_eigensystem(std::span<const double> abs_lambdas, std::span<const double> weights);

/// Unit eigenvectors (diag(l^2) - x)^{-1} p of diag(l^2) - p p^T for known eigenvalues
/// x = r_j^2, differences formed as (l - r)(l + r). With weights that were
/// computed from the same r these stay orthogonal to working precision,
/// which vectors from bisected roots do not.
Eigen::MatrixXd lowner_eigenvectors(std::span<const double> abs_lambdas, std::span<const double> weights,
                                    std::span<const double> abs_roots);

/// Block operator action: writes A * X into Y (both size x columns).
using BlockOperator = std::function<void(const Eigen::MatrixXd& X, Eigen::MatrixXd& Y)>;

struct DominantOptions {
  std::size_t oversample = 8;
  std::size_t max_iterations = 300;
  /// Accept when every wanted Ritz residual is below tol * |theta_1|.
  double residual_tol = 1e-12;
  /// At or below this size the operator is materialised and solved densely.
  std::size_t dense_threshold = 96;
  std::uint64_t seed = 0x5eed;
};

struct DominantEigen {
  /// Signed eigenvalues ordered by decreasing magnitude.
  Eigen::VectorXd values;
  double max_residual = 0.0;
  std::size_t iterations = 0;
};

/// `count` eigenvalues of largest magnitude of a symmetric operator of the
/// given size, by subspace iteration with Rayleigh-Ritz projection.
DominantEigen dominant_eigenvalues(const BlockOperator& apply, std::size_t size, std::size_t count,
                                   const DominantOptions& options = {});

}  // namespace hisp
