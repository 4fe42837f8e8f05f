#include "hisp/hankel.hpp"

#include <algorithm>
#include <string>

#include "hisp/error.hpp"

namespace hisp {

HankelModel hankel_coefficients(const ContractionData& data, const OperatorTriple& triple,
                                const HankelOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::MalformedInput, "coefficient tolerance must be positive");
  if (options.max_coeffs < 1) throw Error(ErrorKind::MalformedInput, "max_coeffs must be at least 1");

  HankelModel model;
  model.source_hash = triple.source_hash;
  const double target = options.tol * options.tol;

  Eigen::VectorXd w = triple.p;
  double norm = w.norm();
  std::vector<double> ratios;
  bool certified = false;
  while (true) {
    model.coefficients.push_back(w.dot(data.q));
    w = data.sigma_star * w;
    const double next = w.norm();
    if (norm > 0.0) ratios.push_back(next / norm);
    norm = next;

    const std::size_t length = model.coefficients.size();
    model.tail_bound = 2.0 * norm * norm;
    if (!certified) {
      bool stable = false;
      if (norm == 0.0) {
        stable = true;
      } else if (ratios.size() >= options.ratio_window) {
        const auto window = std::span<const double>(ratios).last(options.ratio_window);
        const double worst = options.ratio_window ? *std::max_element(window.begin(), window.end()) : 0.0;
        model.decay_ratio = worst;
        stable = worst < 1.0;
      }
      if (stable && model.tail_bound <= target) {
        certified = true;
        model.certified_length = length;
      } else if (length >= options.max_coeffs) {
        if (options.allow_uncertified) break;
        throw Error(ErrorKind::TailNotCertified, "tail bound " + format_real(model.tail_bound) +
                                                     " above tol^2 after " + std::to_string(length) + " coefficients");
      }
    }
    if (certified && length >= options.min_coeffs) break;
  }
  return model;
}

HankelModel model_from_coefficients(std::vector<double> coefficients) {
  HankelModel model;
  model.coefficients = std::move(coefficients);
  model.certified_length = model.coefficients.size();
  return model;
}

Eigen::MatrixXd build_hankel_matrix(const HankelModel& model, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::TooSmall, "block size must be positive");
  if (2 * m - 1 > model.length()) {
    throw Error(ErrorKind::InsufficientCoefficients, std::to_string(m) + "x" + std::to_string(m) + " block needs " +
                                                         std::to_string(2 * m - 1) + " coefficients, have " +
                                                         std::to_string(model.length()));
  }
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) h(j, k) = model.coefficients[static_cast<std::size_t>(j + k)];
  return h;
}

Eigen::MatrixXd apply_shift(const Eigen::MatrixXd& block) {
  if (block.rows() < 2) throw Error(ErrorKind::TooSmall, "shift needs a block of size at least 2");
  return block.bottomRows(block.rows() - 1);
}

Eigen::MatrixXd build_shifted_block(const HankelModel& model, std::size_t m) {
  if (m < 2) throw Error(ErrorKind::TooSmall, "shifted block needs m >= 2");
  if (2 * m - 2 > model.length()) {
    throw Error(ErrorKind::InsufficientCoefficients,
                "shifted block needs " + std::to_string(2 * m - 2) + " coefficients, have " +
                    std::to_string(model.length()));
  }
  const auto n = static_cast<Eigen::Index>(m - 1);
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) h(j, k) = model.coefficients[static_cast<std::size_t>(j + k + 1)];
  return h;
}

IsometryBlock isometry_matrix(const ContractionData& data, std::size_t rows) {
  const auto n = data.q.size();
  IsometryBlock out;
  out.matrix.resize(static_cast<Eigen::Index>(rows), n);
  Eigen::RowVectorXd row = data.q.transpose();
  for (std::size_t k = 0; k < rows; ++k) {
    out.matrix.row(static_cast<Eigen::Index>(k)) = row;
    row = row * data.sigma_star;
  }
  out.orthonormality_residual =
      (out.matrix.transpose() * out.matrix - Eigen::MatrixXd::Identity(n, n)).norm();
  return out;
}

double hankel_structure_residual(const IsometryBlock& iso, const OperatorTriple& triple, const HankelModel& model) {
  const Eigen::Index rows = iso.matrix.rows();
  const Eigen::Index limit = rows / 2;
  const Eigen::MatrixXd scaled = iso.matrix * triple.r_diagonal.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index j = 0; j <= limit && j < rows; ++j) {
    for (Eigen::Index k = 0; j + k <= limit && k < rows; ++k) {
      const auto index = static_cast<std::size_t>(j + k);
      if (index >= model.length()) continue;
      const double entry = scaled.row(j).dot(iso.matrix.row(k));
      worst = std::max(worst, std::abs(entry - model.coefficients[index]));
    }
  }
  return worst;
}

double isometry_intertwining_residual(const IsometryBlock& iso, const ContractionData& data) {
  const Eigen::Index rows = iso.matrix.rows();
  if (rows < 2) return 0.0;
  const Eigen::MatrixXd advanced = iso.matrix.topRows(rows - 1) * data.sigma_star;
  return (advanced - iso.matrix.bottomRows(rows - 1)).norm();
}

}  // namespace hisp
