#include "hisp/symmetric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hisp/error.hpp"

namespace hisp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void normalize_sign(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

SymmetricEigen sorted_descending(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  SymmetricEigen out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values(static_cast<Eigen::Index>(i)) = values(order[i]);
    out.vectors.col(static_cast<Eigen::Index>(i)) = vectors.col(order[i]);
  }
  normalize_sign(out.vectors);
  return out;
}

// Total order on doubles as signed integers; -0 and +0 share key 0.
std::int64_t ordered_key(double x) {
  const auto bits = std::bit_cast<std::int64_t>(x);
  return bits < 0 ? -(bits & std::numeric_limits<std::int64_t>::max()) : bits;
}

double from_ordered_key(std::int64_t key) {
  if (key >= 0) return std::bit_cast<double>(key);
  return std::bit_cast<double>((-key) | std::numeric_limits<std::int64_t>::min());
}

// Secular function of the downdate, with the variable tau measured from an
// origin; deltas[k] = l_k^2 - origin.
double secular(std::span<const double> deltas, std::span<const double> weights, double tau) {
  double sum = 0.0;
  for (std::size_t k = deltas.size(); k-- > 0;) sum += weights[k] / (deltas[k] - tau);
  return 1.0 - sum;
}

// Largest-to-smallest bisection over the doubles strictly between lo and hi,
// for a function positive left of its single root and negative right of it.
double bisect_root(std::span<const double> deltas, std::span<const double> weights, double lo, double hi) {
  std::int64_t klo = ordered_key(lo);
  std::int64_t khi = ordered_key(hi);
  double flo = std::numeric_limits<double>::infinity();
  double fhi = -std::numeric_limits<double>::infinity();
  while (static_cast<std::uint64_t>(khi) - static_cast<std::uint64_t>(klo) > 1) {
    const std::int64_t kmid =
        klo + static_cast<std::int64_t>((static_cast<std::uint64_t>(khi) - static_cast<std::uint64_t>(klo)) / 2);
    const double value = secular(deltas, weights, from_ordered_key(kmid));
    if (value > 0.0) {
      klo = kmid;
      flo = value;
    } else {
      khi = kmid;
      fhi = value;
      if (value == 0.0) break;
    }
  }
  return std::abs(flo) < std::abs(fhi) ? from_ordered_key(klo) : from_ordered_key(khi);
}

}  // namespace

SymmetricEigen symmetric_eigendecomposition(const Eigen::MatrixXd& m, int max_sweeps) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = n > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  if (n > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale) {
    throw Error(ErrorKind::NotSymmetric, "asymmetry exceeds 1e-13 relative");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double tiny = std::numeric_limits<double>::min() / kEps;

  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double threshold = kEps * std::sqrt(std::abs(a(p, p)) * std::abs(a(q, q)));
        if (std::abs(apq) <= threshold || std::abs(apq) < tiny) {
          if (std::abs(apq) < tiny) a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::abs(tau) > 1.0
                             ? std::copysign(1.0, tau) / (std::abs(tau) * (1.0 + std::sqrt(1.0 + 1.0 / (tau * tau))))
                             : std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorKind::ConvergenceFailure, "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }
  return sorted_descending(a.diagonal(), v);
}

SymmetricEigen downdate_eigensystem(std::span<const double> abs_lambdas, std::span<const double> weights) {
  const std::size_t n = abs_lambdas.size();
  if (weights.size() != n) throw Error(ErrorKind::LengthMismatch, "weights and lambdas differ in length");

  double total = 0.0;
  for (double a : weights) total += a;

  SymmetricEigen out;
  out.values.resize(static_cast<Eigen::Index>(n));
  out.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  std::vector<double> deltas(n);
  auto shift_to_pole = [&](std::size_t origin) {
    const double lo = abs_lambdas[origin];
    for (std::size_t k = 0; k < n; ++k) deltas[k] = (abs_lambdas[k] - lo) * (abs_lambdas[k] + lo);
    deltas[origin] = 0.0;
  };
  auto shift_to_zero = [&] {
    for (std::size_t k = 0; k < n; ++k) deltas[k] = abs_lambdas[k] * abs_lambdas[k];
  };

  for (std::size_t j = 0; j < n; ++j) {
    double origin_value = 0.0;
    double tau = 0.0;
    if (j + 1 < n) {
      // Root lies in (l_{j+1}^2, l_j^2); decide which pole is nearer.
      shift_to_pole(j + 1);
      const double width = deltas[j];
      const double half = 0.5 * width;
      if (secular(deltas, weights, half) > 0.0) {
        shift_to_pole(j);
        tau = bisect_root(deltas, weights, half - width, -0.0);
        origin_value = abs_lambdas[j] * abs_lambdas[j];
      } else {
        tau = bisect_root(deltas, weights, 0.0, half);
        origin_value = abs_lambdas[j + 1] * abs_lambdas[j + 1];
      }
    } else {
      // Last root lies in (l_N^2 - sum a, l_N^2).
      shift_to_zero();
      const double pole = deltas[j];
      const double half = 0.5 * pole;
      if (secular(deltas, weights, half) > 0.0) {
        shift_to_pole(j);
        tau = bisect_root(deltas, weights, -half, -0.0);
        origin_value = pole;
      } else {
        double lo = std::min(0.0, pole - 2.0 * total);
        while (secular(deltas, weights, lo) <= 0.0) lo = 2.0 * lo - pole;
        tau = bisect_root(deltas, weights, lo, half);
        origin_value = 0.0;
      }
    }
    const auto col = static_cast<Eigen::Index>(j);
    out.values(col) = origin_value + tau;
    for (std::size_t k = 0; k < n; ++k) {
      out.vectors(static_cast<Eigen::Index>(k), col) = std::sqrt(weights[k]) / (deltas[k] - tau);
    }
    out.vectors.col(col).normalize();
  }
  normalize_sign(out.vectors);
  return out;
}

Eigen::MatrixXd lowner_eigenvectors(std::span<const double> abs_lambdas, std::span<const double> weights,
                                    std::span<const double> abs_roots) {
  const std::size_t n = abs_lambdas.size();
  if (weights.size() != n || abs_roots.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "lambdas, weights and roots differ in length");
  }
  Eigen::MatrixXd v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    for (std::size_t k = 0; k < n; ++k) {
      const double diff = (abs_lambdas[k] - abs_roots[j]) * (abs_lambdas[k] + abs_roots[j]);
      v(static_cast<Eigen::Index>(k), col) = std::sqrt(weights[k]) / diff;
    }
    v.col(col).normalize();
  }
  normalize_sign(v);
  return v;
}

DominantEigen dominant_eigenvalues(const BlockOperator& apply, std::size_t size, std::size_t count,
                                   const DominantOptions& options) {
  if (count == 0 || count > size) {
    throw Error(ErrorKind::TooSmall, "requested " + std::to_string(count) + " eigenvalues of a size " +
                                         std::to_string(size) + " operator");
  }
  const auto n = static_cast<Eigen::Index>(size);
  const auto by_magnitude = [](const Eigen::VectorXd& values, std::size_t keep) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(values(a)) > std::abs(values(b)); });
    Eigen::VectorXd out(static_cast<Eigen::Index>(keep));
    for (std::size_t i = 0; i < keep; ++i) out(static_cast<Eigen::Index>(i)) = values(order[i]);
    return std::make_pair(out, order);
  };

  const std::size_t block = std::min(size, count + options.oversample);
  if (size <= options.dense_threshold || block == size) {
    Eigen::MatrixXd full(n, n);
    apply(Eigen::MatrixXd::Identity(n, n), full);
    const SymmetricEigen eig = symmetric_eigendecomposition(0.5 * (full + full.transpose()));
    DominantEigen out;
    out.values = by_magnitude(eig.values, count).first;
    return out;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const auto b = static_cast<Eigen::Index>(block);
  Eigen::MatrixXd x(n, b);
  for (Eigen::Index j = 0; j < b; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = normal(rng);
  x = Eigen::HouseholderQR<Eigen::MatrixXd>(x).householderQ() * Eigen::MatrixXd::Identity(n, b);

  Eigen::MatrixXd y(n, b);
  DominantEigen out;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    apply(x, y);
    Eigen::MatrixXd h = x.transpose() * y;
    const SymmetricEigen ritz = symmetric_eigendecomposition(0.5 * (h + h.transpose()));
    const auto [values, order] = by_magnitude(ritz.values, count);

    const Eigen::MatrixXd ritz_vectors = x * ritz.vectors;
    const Eigen::MatrixXd images = y * ritz.vectors;
    const double top = std::abs(values(0));
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Eigen::Index c = order[i];
      worst = std::max(worst, (images.col(c) - ritz.values(c) * ritz_vectors.col(c)).norm());
    }
    out.values = values;
    out.iterations = it;
    out.max_residual = top > 0.0 ? worst / top : worst;
    if (out.max_residual <= options.residual_tol || top == 0.0) return out;

    x = Eigen::HouseholderQR<Eigen::MatrixXd>(images).householderQ() * Eigen::MatrixXd::Identity(n, b);
  }
  throw Error(ErrorKind::ConvergenceFailure, "subspace iteration stalled at relative residual " +
                                                 format_real(out.max_residual));
}

}  // namespace hisp
