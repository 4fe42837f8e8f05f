#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hisp/spectra.hpp"

namespace hisp::testing {

struct CorpusOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 20;
  double max_ratio = 0.9;        ///< upper bound on |lambda_{k+1} / lambda_k|
  double min_ratio = 0.1;        ///< lower bound, raised if needed to honour min_tail
  double min_tail = 0.0;         ///< |lambda_N| >= min_tail * |lambda_1| when positive
  bool random_signs = true;      ///< independent signs for every lambda and mu
  bool allow_zero_mu = false;    ///< occasionally set mu_N = 0 (finite mode)
};

struct RawSpectrum {
  std::vector<double> lambdas;
  std::vector<double> mus;
};

// Strictly interlaced magnitudes with mu_k placed uniformly inside
// (|lambda_{k+1}|, |lambda_k|), kept away from both ends.
inline RawSpectrum random_spectrum(std::mt19937_64& rng, const CorpusOptions& o) {
  std::uniform_int_distribution<std::size_t> size_dist(o.min_size, o.max_size);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = size_dist(rng);
  double lo = o.min_ratio;
  if (o.min_tail > 0.0 && n > 1) lo = std::max(lo, std::pow(o.min_tail, 1.0 / static_cast<double>(n - 1)));
  lo = std::min(lo, o.max_ratio);

  RawSpectrum s;
  s.lambdas.resize(n);
  s.mus.resize(n);
  double magnitude = 0.5 + unit(rng);
  for (std::size_t k = 0; k < n; ++k) {
    s.lambdas[k] = magnitude;
    magnitude *= lo + (o.max_ratio - lo) * unit(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double below = k + 1 < n ? s.lambdas[k + 1] : 0.0;
    s.mus[k] = below + (0.05 + 0.9 * unit(rng)) * (s.lambdas[k] - below);
  }
  if (o.allow_zero_mu && unit(rng) < 0.2) s.mus[n - 1] = 0.0;
  if (o.random_signs) {
    for (std::size_t k = 0; k < n; ++k) {
      if (unit(rng) < 0.5) s.lambdas[k] = -s.lambdas[k];
      if (unit(rng) < 0.5) s.mus[k] = -s.mus[k];
    }
  }
  return s;
}

inline InterlacedSpectrum make_spectrum(const RawSpectrum& raw, SpectrumMode mode = SpectrumMode::Finite) {
  return validate_interlacing(raw.lambdas, raw.mus, mode);
}

}  // namespace hisp::testing
