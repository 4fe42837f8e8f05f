#include "hisp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hisp/borg.hpp"
#include "hisp/error.hpp"
#include "hisp/operators.hpp"
#include "hisp/symmetric.hpp"

namespace hisp {

namespace {

// Y = H X for the Hankel block with entries gamma_{offset + j + k}.
BlockOperator hankel_operator(const std::vector<double>& gamma, std::size_t size, std::size_t offset) {
  return [&gamma, size, offset](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    const auto n = static_cast<Eigen::Index>(size);
    y.resize(n, x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Map<const Eigen::VectorXd> band(gamma.data() + offset + static_cast<std::size_t>(j), n);
        y(j, c) = band.dot(x.col(c));
      }
    }
  };
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double relative_error(double recovered, double expected) {
  const double diff = std::abs(recovered - expected);
  return expected != 0.0 ? diff / std::abs(expected) : diff;
}

double max_relative_change(const ForwardSpectrum& a, const ForwardSpectrum& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.lambdas.size(); ++k) worst = std::max(worst, relative_error(b.lambdas[k], a.lambdas[k]));
  // Values far below the top one (a vanishing mu_N in particular) are
  // compared against a floor so that rounding noise does not block convergence.
  const double floor = 1e-6 * std::abs(a.lambdas[0]);
  for (std::size_t k = 0; k < a.mus.size(); ++k) {
    worst = std::max(worst, std::abs(b.mus[k] - a.mus[k]) / std::max(std::abs(a.mus[k]), floor));
  }
  return worst;
}

}  // namespace

ForwardSpectrum forward_spectrum(const HankelModel& model, std::size_t m, std::size_t n_wanted) {
  if (m < 2) throw Error(ErrorKind::TooSmall, "truncation must be at least 2");
  if (2 * m > model.length() + 1) {
    throw Error(ErrorKind::InsufficientCoefficients, "truncation " + std::to_string(m) + " needs " +
                                                         std::to_string(2 * m - 1) + " coefficients, have " +
                                                         std::to_string(model.length()));
  }
  if (n_wanted == 0 || n_wanted > m - 1) {
    throw Error(ErrorKind::TooSmall, "cannot extract " + std::to_string(n_wanted) + " eigenvalues at truncation " +
                                         std::to_string(m));
  }
  ForwardSpectrum out;
  out.m = m;
  out.lambdas = to_vector(dominant_eigenvalues(hankel_operator(model.coefficients, m, 0), m, n_wanted).values);
  out.mus = to_vector(dominant_eigenvalues(hankel_operator(model.coefficients, m - 1, 1), m - 1, n_wanted).values);
  return out;
}

std::size_t numerical_rank(const HankelModel& model, std::size_t m, double threshold) {
  if (2 * m > model.length() + 1) {
    throw Error(ErrorKind::InsufficientCoefficients, "truncation " + std::to_string(m) + " exceeds coefficients");
  }
  std::size_t count = std::min<std::size_t>(8, m);
  while (true) {
    const auto values = dominant_eigenvalues(hankel_operator(model.coefficients, m, 0), m, count).values;
    const double top = std::abs(values(0));
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (std::abs(values(i)) > threshold * top) ++rank;
    if (rank < count || count == m) return rank;
    count = std::min(m, 2 * count);
  }
}

VerificationReport round_trip(const InterlacedSpectrum& spectrum, const VerifyConfig& config) {
  VerificationReport report;
  report.source_hash = source_hash(spectrum);
  report.input_lambdas.assign(spectrum.lambdas().begin(), spectrum.lambdas().end());
  report.input_mus.assign(spectrum.mus().begin(), spectrum.mus().end());
  const std::size_t n = spectrum.size();

  std::string stage = "weights";
  try {
    const SpectralMeasure measure = compute_weights(spectrum);
    stage = "assemble";
    const OperatorTriple triple = assemble_pair(measure, spectrum);
    stage = "contraction";
    const ContractionData data = build_sigma_star(triple);
    report.defect_residual = data.defect_residual;
    report.operator_norm = data.operator_norm;
    report.intertwining_residual = data.intertwining_residual;

    stage = "coefficients";
    const std::size_t start_m = std::max<std::size_t>(2 * n, 2);
    const std::size_t top_m = config.truncation.value_or(std::max(config.max_truncation, start_m));
    HankelOptions coeff = config.coefficients;
    coeff.min_coeffs = std::max(coeff.min_coeffs, 2 * top_m - 1);
    // An uncertified tail still gets a forward pass; the report flags it.
    coeff.allow_uncertified = true;
    const HankelModel model = hankel_coefficients(data, triple, coeff);
    report.coefficient_count = model.length();
    report.certified_length = model.certified_length;
    report.tail_certified = model.certified();
    report.tail_bound = model.tail_bound;
    const std::size_t reachable_m = (model.length() + 1) / 2;

    stage = "forward";
    ForwardSpectrum recovered;
    if (config.truncation) {
      recovered = forward_spectrum(model, *config.truncation, n);
    } else {
      std::size_t m = start_m;
      recovered = forward_spectrum(model, m, n);
      while (m < std::min(top_m, reachable_m)) {
        m = std::min({2 * m, top_m, reachable_m});
        ForwardSpectrum refined = forward_spectrum(model, m, n);
        const double change = max_relative_change(recovered, refined);
        recovered = std::move(refined);
        if (change < 0.1 * config.eigen_tol) break;
      }
    }
    report.truncation_m = recovered.m;
    report.recovered_lambdas = recovered.lambdas;
    report.recovered_mus = recovered.mus;

    stage = "certificates";
    const IsometryBlock block = isometry_matrix(data, report.truncation_m);
    report.structure_residual = hankel_structure_residual(block, triple, model);
    const std::size_t rows = std::max<std::size_t>(model.certified() ? model.certified_length : model.length(), 1);
    report.isometry_residual = isometry_matrix(data, rows).orthonormality_residual;
    const StabilityProfile profile = stability_profile(data, random_probe(n, config.seed), rows);
    report.parseval_residual = profile.parseval_residual;
  } catch (const Error& e) {
    report.failure = StageFailure{stage, std::string(to_string(e.kind())), e.what()};
    report.passed = false;
    return report;
  }

  bool errors_ok = true;
  report.signs_preserved = true;
  for (std::size_t k = 0; k < n; ++k) {
    report.lambda_errors.push_back(relative_error(report.recovered_lambdas[k], report.input_lambdas[k]));
    report.mu_errors.push_back(relative_error(report.recovered_mus[k], report.input_mus[k]));
    errors_ok = errors_ok && report.lambda_errors.back() <= config.eigen_tol && report.mu_errors.back() <= config.eigen_tol;
    if (std::signbit(report.recovered_lambdas[k]) != std::signbit(report.input_lambdas[k])) report.signs_preserved = false;
    if (report.input_mus[k] != 0.0 && std::signbit(report.recovered_mus[k]) != std::signbit(report.input_mus[k])) {
      report.signs_preserved = false;
    }
  }

  // A recovered mu_N = 0 comes back as rounding noise; snap it before checking the chain.
  std::vector<double> chain_mus = report.recovered_mus;
  if (spectrum.mode() == SpectrumMode::Finite && report.input_mus.back() == 0.0 &&
      std::abs(chain_mus.back()) <= config.eigen_tol) {
    chain_mus.back() = 0.0;
  }
  try {
    validate_interlacing(report.recovered_lambdas, chain_mus, spectrum.mode());
    report.recovered_interlaced = true;
  } catch (const Error&) {
    report.recovered_interlaced = false;
  }

  report.passed = errors_ok && report.tail_certified && report.recovered_interlaced && report.signs_preserved &&
                  report.structure_residual <= config.structure_tol && report.isometry_residual <= config.isometry_tol &&
                  report.parseval_residual <= config.parseval_tol && report.defect_residual <= config.defect_tol &&
                  report.operator_norm <= 1.0 + config.norm_slack;
  return report;
}

}  // namespace hisp
