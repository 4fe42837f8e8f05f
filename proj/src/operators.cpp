#include "hisp/operators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "hisp/error.hpp"
#include "hisp/symmetric.hpp"

namespace hisp {

OperatorTriple assemble_pair(const SpectralMeasure& measure, const InterlacedSpectrum& spectrum,
                             const AssembleOptions& options) {
  const std::size_t n = spectrum.size();
  if (measure.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "measure has " + std::to_string(measure.size()) +
                                               " atoms, spectrum has " + std::to_string(n) + " pairs");
  }
  const auto lambdas = spectrum.lambdas();
  const auto mus = spectrum.mus();
  const auto dim = static_cast<Eigen::Index>(n);

  OperatorTriple t;
  t.source_hash = source_hash(spectrum);
  t.w_diagonal.resize(dim);
  t.r_diagonal.resize(dim);
  t.p.resize(dim);
  std::vector<double> abs_lambdas(n);
  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    t.r_diagonal(i) = lambdas[k];
    t.w_diagonal(i) = measure.atoms[k].position;
    t.p(i) = std::sqrt(measure.atoms[k].weight);
    abs_lambdas[k] = std::abs(lambdas[k]);
    weights[k] = measure.atoms[k].weight;
  }

  t.W1 = -t.p * t.p.transpose();
  for (Eigen::Index i = 0; i < dim; ++i) t.W1(i, i) = t.w_diagonal(i) - measure.atoms[static_cast<std::size_t>(i)].weight;

  const SymmetricEigen eig = downdate_eigensystem(abs_lambdas, weights);
  t.w1_eigenvalues = eig.values;

  const double tolerance = options.mismatch_tolerance * t.w_diagonal(0);
  std::size_t worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    t.eigen_pairing.push_back(k);
    const double gap = std::abs(eig.values(static_cast<Eigen::Index>(k)) - mus[k] * mus[k]);
    if (gap > t.eigen_mismatch) {
      t.eigen_mismatch = gap;
      worst = k;
    }
  }
  if (t.eigen_mismatch > tolerance) {
    throw Error(ErrorKind::EigenvalueMismatch,
                "eigenvalue " + std::to_string(worst + 1) + " of W1 is off mu^2 by " +
                    format_real(t.eigen_mismatch) + " (tolerance " + format_real(tolerance) + ")",
                worst + 1);
  }

  // Eigenvalues confirmed; the eigenvectors are taken at the exact mu_k^2.
  std::vector<double> abs_mus(n);
  Eigen::VectorXd signed_mus(dim);
  for (std::size_t k = 0; k < n; ++k) {
    abs_mus[k] = std::abs(mus[t.eigen_pairing[k]]);
    signed_mus(static_cast<Eigen::Index>(k)) = mus[t.eigen_pairing[k]];
  }
  t.w1_eigenvectors = lowner_eigenvectors(abs_lambdas, weights, abs_mus);
  t.R1 = t.w1_eigenvectors * signed_mus.asDiagonal() * t.w1_eigenvectors.transpose();
  return t;
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXd gram = m.transpose() * m;
  const SymmetricEigen eig = symmetric_eigendecomposition(0.5 * (gram + gram.transpose()));
  return std::sqrt(std::max(0.0, eig.values(0)));
}

ContractionData build_sigma_star(const OperatorTriple& triple) {
  ContractionData d;
  d.sigma_star = triple.R1 * triple.r_diagonal.cwiseInverse().asDiagonal();
  d.q = triple.p.cwiseQuotient(triple.r_diagonal);
  d.operator_norm = operator_norm(d.sigma_star);

  const auto n = d.q.size();
  const Eigen::MatrixXd defect = Eigen::MatrixXd::Identity(n, n) - d.sigma_star.transpose() * d.sigma_star;
  d.defect_residual = (defect - d.q * d.q.transpose()).norm();
  d.intertwining_residual = (triple.R1 - d.sigma_star * triple.r_diagonal.asDiagonal()).norm();
  return d;
}

StabilityProfile stability_profile(const ContractionData& data, const Eigen::VectorXd& probe, std::size_t steps) {
  if (probe.size() != data.q.size()) throw Error(ErrorKind::LengthMismatch, "probe dimension differs from Sigma^*");
  StabilityProfile out;
  out.norms.reserve(steps);
  Eigen::VectorXd w = probe;
  double captured = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double c = w.dot(data.q);
    captured += c * c;
    w = data.sigma_star * w;
    out.norms.push_back(w.norm());
  }
  out.parseval_residual = std::abs(probe.squaredNorm() - captured - w.squaredNorm());
  return out;
}

Eigen::VectorXd random_probe(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  const double norm = v.norm();
  return norm > 0.0 ? Eigen::VectorXd(v / norm) : v;
}

}  // namespace hisp
