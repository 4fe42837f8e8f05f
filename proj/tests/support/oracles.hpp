#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hisp::testing {

// Weights from the interpolation conditions 1 - sum_k a_k / (l_k^2 - m_j^2) = 0
// for every j, solved as a dense Cauchy system in long double.
// A vanishing m_N is handled by the same equation at z = 0.
inline std::vector<double> cauchy_system_weights(const std::vector<double>& lambdas, const std::vector<double>& mus) {
  const std::size_t n = lambdas.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    const long double z = static_cast<long double>(mus[j]) * mus[j];
    for (std::size_t k = 0; k < n; ++k) a[j][k] = 1.0L / (static_cast<long double>(lambdas[k]) * lambdas[k] - z);
    a[j][n] = 1.0L;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    std::swap(a[c], a[pivot]);
    if (a[c][c] == 0.0L) throw std::runtime_error("singular Cauchy system");
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<double>(a[k][n] / a[k][k]);
  return w;
}

// Weights of the two-pair case written out by hand.
inline std::vector<double> two_pair_weights(double l1, double l2, double m1, double m2) {
  const double L1 = l1 * l1, L2 = l2 * l2, M1 = m1 * m1, M2 = m2 * m2;
  return {(L1 - M1) * (L1 - M2) / (L1 - L2), (L2 - M2) * (L2 - M1) / (L2 - L1)};
}

// gamma_j for a single pair: q = sqrt(a)/l, Sigma^* = m/l, so gamma_j = (a/l)(m/l)^j.
inline double single_pair_gamma(double l, double m, std::size_t j) {
  const double a = l * l - m * m;
  return a / l * std::pow(m / l, static_cast<double>(j));
}

// Largest eigenvalue of the m x m block of a single-pair Hankel operator.
// The block is g0 u u^T with u_j = t^j, so the eigenvalue is g0 sum_{j<m} t^{2j}.
inline double rank_one_block_eigenvalue(double g0, double t, std::size_t m) {
  long double sum = 0.0L;
  long double power = 1.0L;
  for (std::size_t j = 0; j < m; ++j) {
    sum += power;
    power *= static_cast<long double>(t) * t;
  }
  return static_cast<double>(g0 * sum);
}

// Eigenvalues of a symmetric 2x2 matrix by the quadratic formula, descending.
inline std::pair<double, double> symmetric_2x2_eigenvalues(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean + radius, mean - radius};
}

inline double relative_difference(double x, double y) {
  const double scale = std::max(std::fabs(x), std::fabs(y));
  return scale == 0.0 ? 0.0 : std::fabs(x - y) / scale;
}

}  // namespace hisp::testing
