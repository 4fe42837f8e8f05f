#include "hisp/borg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hisp/error.hpp"

namespace hisp {

namespace {

// log|x^2 - y^2| via log| |x|-|y| | + log(|x|+|y|).
double log_abs_diff_of_squares(double x, double y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  return std::log(std::abs(ax - ay)) + std::log(ax + ay);
}

void check_off_pole(Complex z, double position, double tolerance) {
  if (std::abs(z - position) < tolerance) {
    throw Error(ErrorKind::PoleEvaluation,
                "evaluation point (" + format_real(z.real()) + ", " + format_real(z.imag()) +
                    ") coincides with atom " + format_real(position));
  }
}

}  // namespace

double SpectralMeasure::total_mass() const noexcept {
  double sum = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) sum += it->weight;
  return sum;
}

double SpectralMeasure::inverse_moment() const noexcept {
  double sum = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) sum += it->weight / it->position;
  return sum;
}

SpectralMeasure compute_weights(const InterlacedSpectrum& spectrum) {
  const auto lambdas = spectrum.lambdas();
  const auto mus = spectrum.mus();
  const std::size_t n = spectrum.size();

  SpectralMeasure measure;
  measure.atoms.reserve(n);
  measure.log_weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double li = lambdas[i];
    double log_a = log_abs_diff_of_squares(li, mus[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double gap = std::abs(std::abs(li) - std::abs(lambdas[k])) * (std::abs(li) + std::abs(lambdas[k]));
      if (!(gap >= std::numeric_limits<double>::min())) {
        throw Error(ErrorKind::DegenerateGap,
                    "lambda_" + std::to_string(i + 1) + "^2 - lambda_" + std::to_string(k + 1) + "^2 underflows",
                    i + 1);
      }
      log_a += log_abs_diff_of_squares(li, mus[k]) - log_abs_diff_of_squares(li, lambdas[k]);
    }
    measure.log_weights.push_back(log_a);
    measure.atoms.push_back({li * li, std::exp(log_a)});
  }
  return measure;
}

double pole_tolerance(const InterlacedSpectrum& spectrum) noexcept {
  const double top = spectrum.lambda_max();
  return 1e-13 * std::max(1.0, top * top);
}

double pole_tolerance(const SpectralMeasure& measure) noexcept {
  const double top = measure.atoms.empty() ? 0.0 : measure.atoms.front().position;
  return 1e-13 * std::max(1.0, top);
}

Complex cauchy_transform(const SpectralMeasure& measure, Complex z) {
  const double tol = pole_tolerance(measure);
  Complex sum = 0.0;
  for (auto it = measure.atoms.rbegin(); it != measure.atoms.rend(); ++it) {
    check_off_pole(z, it->position, tol);
    sum += it->weight / (it->position - z);
  }
  return sum;
}

Complex phi_product(const InterlacedSpectrum& spectrum, Complex z) {
  const double tol = pole_tolerance(spectrum);
  const auto lambdas = spectrum.lambdas();
  const auto mus = spectrum.mus();
  // An exact zero of a numerator factor is returned as is; the nearby poles
  // are bounded away from it by strict interlacing.
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (z == Complex(mus[k] * mus[k]) && z != Complex(lambdas[k] * lambdas[k])) return 0.0;
  }
  Complex product = 1.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double pole = lambdas[k] * lambdas[k];
    check_off_pole(z, pole, tol);
    product *= (z - mus[k] * mus[k]) / (z - pole);
  }
  return product;
}

Complex aronszajn_krein(Complex F_value, double alpha) {
  const Complex denominator = 1.0 + alpha * F_value;
  const double scale = std::max(1.0, std::abs(alpha * F_value));
  if (std::abs(denominator) < 4.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw Error(ErrorKind::DivisionDegenerate, "1 + alpha F vanishes at working precision");
  }
  return F_value / denominator;
}

HerglotzSample sample_herglotz(const InterlacedSpectrum& spectrum, const SpectralMeasure& measure, Complex z) {
  HerglotzSample s;
  s.z = z;
  s.F = cauchy_transform(measure, z);
  s.F1 = aronszajn_krein(s.F, -1.0);
  s.Phi = phi_product(spectrum, z);
  return s;
}

std::vector<Complex> default_grid(const InterlacedSpectrum& spectrum, std::size_t circle_points) {
  const auto lambdas = spectrum.lambdas();
  const double top = lambdas[0] * lambdas[0];
  const double radius = 4.0 * top;

  std::vector<Complex> grid;
  grid.reserve(circle_points + spectrum.size());
  for (std::size_t k = 0; k < circle_points; ++k) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(circle_points);
    grid.push_back(std::polar(radius, angle));
  }
  // A gap point is at distance >= gap/2 from every atom; gaps that fall
  // below the pole tolerance are skipped.
  const double tol = pole_tolerance(spectrum);
  for (std::size_t k = 0; k + 1 < spectrum.size(); ++k) {
    const double upper = lambdas[k] * lambdas[k];
    const double lower = lambdas[k + 1] * lambdas[k + 1];
    const double gap = upper - lower;
    if (0.5 * gap < tol) continue;
    grid.emplace_back(0.5 * (upper + lower), 0.5 * gap);
  }
  return grid;
}

std::vector<Complex> upper_half_plane_grid(const InterlacedSpectrum& spectrum, std::size_t columns,
                                           std::size_t rows) {
  const double top = spectrum.lambda_max() * spectrum.lambda_max();
  std::vector<Complex> grid;
  grid.reserve(columns * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    // heights from 1e-3 top up to 10 top, log spaced
    const double t = rows > 1 ? static_cast<double>(r) / static_cast<double>(rows - 1) : 0.0;
    const double height = top * std::pow(10.0, -3.0 + 4.0 * t);
    for (std::size_t c = 0; c < columns; ++c) {
      const double u = columns > 1 ? static_cast<double>(c) / static_cast<double>(columns - 1) : 0.5;
      grid.emplace_back(top * (-1.0 + 3.0 * u), height);
    }
  }
  return grid;
}

double consistency_scan(const InterlacedSpectrum& spectrum, const SpectralMeasure& measure,
                        std::span<const Complex> grid) {
  const double tol = pole_tolerance(spectrum);
  double worst = 0.0;
  for (const Complex z : grid) {
    for (double mu : spectrum.mus()) check_off_pole(z, mu * mu, tol);
    const Complex product = phi_product(spectrum, z);
    const Complex fractions = 1.0 - cauchy_transform(measure, z);
    worst = std::max(worst, std::abs(product - fractions));
  }
  return worst;
}

}  // namespace hisp
