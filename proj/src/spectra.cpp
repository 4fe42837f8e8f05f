#include "hisp/spectra.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "hisp/error.hpp"

namespace hisp {

std::string_view to_string(SpectrumMode mode) noexcept {
  return mode == SpectrumMode::Finite ? "finite" : "truncated";
}

std::string_view to_string(SignPattern pattern) noexcept {
  switch (pattern) {
    case SignPattern::Positive: return "positive";
    case SignPattern::Alternating: return "alternating";
    case SignPattern::Opposite: return "opposite";
  }
  return "positive";
}

SpectrumMode parse_mode(std::string_view text) {
  if (text == "finite") return SpectrumMode::Finite;
  if (text == "truncated") return SpectrumMode::Truncated;
  throw Error(ErrorKind::MalformedInput, "unknown mode '" + std::string(text) + "'");
}

SignPattern parse_sign_pattern(std::string_view text) {
  if (text == "positive") return SignPattern::Positive;
  if (text == "alternating") return SignPattern::Alternating;
  if (text == "opposite") return SignPattern::Opposite;
  throw Error(ErrorKind::MalformedInput, "unknown sign pattern '" + std::string(text) + "'");
}

std::string_view to_string(KernelVerdict verdict) noexcept {
  switch (verdict) {
    case KernelVerdict::TrivialKernelLikely: return "trivial-kernel-likely";
    case KernelVerdict::NontrivialKernel: return "nontrivial-kernel";
    case KernelVerdict::FiniteRankAlwaysNontrivial: return "finite-rank-always-nontrivial";
    case KernelVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

InterlacedSpectrum validate_interlacing(std::span<const double> lambdas, std::span<const double> mus,
                                        SpectrumMode mode, std::optional<GeometricDescriptor> generator) {
  if (lambdas.size() != mus.size()) {
    throw Error(ErrorKind::LengthMismatch, "lambda has " + std::to_string(lambdas.size()) +
                                               " entries, mu has " + std::to_string(mus.size()));
  }
  if (lambdas.empty()) throw Error(ErrorKind::EmptyInput, "spectra must contain at least one pair");

  const std::size_t n = lambdas.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(lambdas[k]) || !std::isfinite(mus[k])) {
      throw Error(ErrorKind::NonFiniteInput, "non-finite value at index " + std::to_string(k + 1), k + 1);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (lambdas[k] == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda_" + std::to_string(k + 1) + " is zero", k + 1);
  }

  // Walk the chain |l1| > |m1| > |l2| > ... and report the pair index of the
  // first element that is not strictly below its predecessor.
  for (std::size_t k = 0; k < n; ++k) {
    const double l = std::abs(lambdas[k]);
    const double m = std::abs(mus[k]);
    if (k > 0 && !(std::abs(mus[k - 1]) > l)) {
      throw Error(ErrorKind::InterlacingViolation,
                  "|mu_" + std::to_string(k) + "| > |lambda_" + std::to_string(k + 1) + "| fails", k + 1);
    }
    if (!(l > m)) {
      throw Error(ErrorKind::InterlacingViolation,
                  "|lambda_" + std::to_string(k + 1) + "| > |mu_" + std::to_string(k + 1) + "| fails", k + 1);
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Already implied by the chain, kept explicit for the error message.
    if (mus[k] == 0.0) throw Error(ErrorKind::InterlacingViolation, "only mu_N may vanish", k + 1);
  }
  if (mode == SpectrumMode::Truncated && mus[n - 1] == 0.0) {
    throw Error(ErrorKind::ZeroMuInInfiniteMode, "mu_N = 0 is only admissible in finite mode", n);
  }

  InterlacedSpectrum out;
  out.lambdas_.assign(lambdas.begin(), lambdas.end());
  out.mus_.assign(mus.begin(), mus.end());
  out.mode_ = mode;
  out.generator_ = std::move(generator);
  return out;
}

InterlacedSpectrum generate_geometric(const GeometricDescriptor& params) {
  const bool ok = std::isfinite(params.c) && params.c != 0.0 && params.r > 0.0 && params.r < params.s &&
                  params.s < 1.0 && params.n >= 1;
  if (!ok) {
    throw Error(ErrorKind::BadDecayParameters, "need c != 0, 0 < r < s < 1 and n >= 1 (got c=" +
                                                   format_real(params.c) + ", r=" + format_real(params.r) +
                                                   ", s=" + format_real(params.s) + ")");
  }
  std::vector<double> lambdas(params.n);
  std::vector<double> mus(params.n);
  for (std::size_t k = 0; k < params.n; ++k) {
    double sign = 1.0;
    double mu_sign = 1.0;
    switch (params.signs) {
      case SignPattern::Positive: break;
      case SignPattern::Alternating: sign = (k % 2 == 0) ? 1.0 : -1.0; break;
      case SignPattern::Opposite: mu_sign = -1.0; break;
    }
    lambdas[k] = params.c * std::pow(params.r, static_cast<double>(k)) * sign;
    mus[k] = params.s * lambdas[k] * mu_sign;
  }
  return validate_interlacing(lambdas, mus, SpectrumMode::Truncated, params);
}

KernelReport kernel_diagnostics(const InterlacedSpectrum& spectrum) {
  const auto lambdas = spectrum.lambdas();
  const auto mus = spectrum.mus();
  const std::size_t n = spectrum.size();

  KernelReport report;
  report.partial_sum_1.reserve(n);
  double sum1 = 0.0;
  double log_product = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ratio = mus[j] / lambdas[j];
    sum1 += 1.0 - ratio * ratio;
    report.partial_sum_1.push_back(sum1);
    log_product += 2.0 * std::log(std::abs(ratio));
  }
  double sum2 = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double ratio = mus[j] / lambdas[j + 1];
    sum2 += ratio * ratio - 1.0;
    report.partial_sum_2.push_back(sum2);
  }
  // 1 - exp(log prod) without cancellation; a zero mu gives log = -inf and 1 exactly.
  report.q_norm_squared = -std::expm1(log_product);

  if (spectrum.mode() == SpectrumMode::Finite) {
    report.verdict = KernelVerdict::FiniteRankAlwaysNontrivial;
  } else if (const auto& gen = spectrum.generator()) {
    report.term_limit_1 = 1.0 - gen->s * gen->s;
    report.term_limit_2 = (gen->s * gen->s) / (gen->r * gen->r) - 1.0;
    // Constant positive terms make both series diverge.
    report.verdict = (*report.term_limit_1 > 0.0 && *report.term_limit_2 > 0.0) ? KernelVerdict::TrivialKernelLikely
                                                                               : KernelVerdict::NontrivialKernel;
  } else {
    report.verdict = KernelVerdict::Undetermined;
  }
  return report;
}

std::string source_hash(const InterlacedSpectrum& spectrum) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&h](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  auto mix_double = [&](double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<std::uint8_t>(bits >> (8 * i)));
  };
  mix_byte(spectrum.mode() == SpectrumMode::Finite ? 0 : 1);
  for (double x : spectrum.lambdas()) mix_double(x);
  for (double x : spectrum.mus()) mix_double(x);

  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace hisp
