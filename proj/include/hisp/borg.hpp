#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hisp/spectra.hpp"

namespace hisp {

using Complex = std::complex<double>;

struct Atom {
  double position;  ///< lambda_k^2
  double weight;    ///< a_k > 0
};

/// Atomic measure sum_k a_k delta_{lambda_k^2}, atoms in descending position.
struct SpectralMeasure {
  std::vector<Atom> atoms;
  std::vector<double> log_weights;

  std::size_t size() const noexcept { return atoms.size(); }
  /// sum_k a_k
  double total_mass() const noexcept;
  /// sum_k a_k / lambda_k^2, which is ||q||^2 for q = R^-1 p.
  double inverse_moment() const noexcept;
};

/// Values of the Cauchy transforms and the product at one point z.
struct HerglotzSample {
  Complex z;
  Complex F;
  Complex F1;
  Complex Phi;
};

/// Weights of the spectral measure of the pair (W, p), from the partial
/// fraction residues of prod_k (z - mu_k^2) / (z - lambda_k^2):
///
///   a_n = (l_n^2 - m_n^2) prod_{k != n} (l_n^2 - m_k^2) / (l_n^2 - l_k^2)
///
/// Every factor is positive under strict interlacing, so the product is
/// accumulated as a sum of logarithms. Differences of squares are formed as
/// (|x| - |y|)(|x| + |y|) to keep relative accuracy.
SpectralMeasure compute_weights(const InterlacedSpectrum& spectrum);

/// Distance below which z counts as sitting on an atom.
double pole_tolerance(const InterlacedSpectrum& spectrum) noexcept;
double pole_tolerance(const SpectralMeasure& measure) noexcept;

/// F(z) = sum_k a_k / (lambda_k^2 - z), summed from the smallest atom up.
Complex cauchy_transform(const SpectralMeasure& measure, Complex z);

/// Phi(z) = prod_k (z - mu_k^2) / (z - lambda_k^2). Exactly 0 at z = mu_k^2.
Complex phi_product(const InterlacedSpectrum& spectrum, Complex z);

/// F / (1 + alpha F): the Cauchy transform of the rank-one perturbation
/// W + alpha p p^T. alpha = -1 gives F_1, the transform for W_1 = W - p p^T.
Complex aronszajn_krein(Complex F_value, double alpha);

HerglotzSample sample_herglotz(const InterlacedSpectrum& spectrum, const SpectralMeasure& measure, Complex z);

/// Circle |z| = 4 lambda_1^2 (`circle_points` points) followed by one point
/// above each gap between consecutive atoms, at height gap/2. Gaps narrower
/// than twice the pole tolerance contribute no point.
std::vector<Complex> default_grid(const InterlacedSpectrum& spectrum, std::size_t circle_points = 100);

/// Rectangular grid in the open upper half plane covering the atoms.
std::vector<Complex> upper_half_plane_grid(const InterlacedSpectrum& spectrum, std::size_t columns = 20,
                                           std::size_t rows = 6);

/// max over grid of |Phi(z) - (1 - F(z))|. Throws PoleEvaluation if a grid
/// point hits an atom of either spectrum.
double consistency_scan(const InterlacedSpectrum& spectrum, const SpectralMeasure& measure,
                        std::span<const Complex> grid);

}  // namespace hisp
