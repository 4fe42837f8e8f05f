#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hisp {

/// Finite rank: the sequences are the complete spectra and mu_N may vanish.
/// Truncated: the sequences are the leading part of infinite spectra.
enum class SpectrumMode { Finite, Truncated };

/// Sign assignment for generated spectra. `Positive` keeps every value
/// positive, `Alternating` flips the sign of lambda_k on even k (mu_k follows
/// lambda_k), `Opposite` keeps lambda positive and makes every mu negative.
enum class SignPattern { Positive, Alternating, Opposite };

std::string_view to_string(SpectrumMode mode) noexcept;
std::string_view to_string(SignPattern pattern) noexcept;
SpectrumMode parse_mode(std::string_view text);
SignPattern parse_sign_pattern(std::string_view text);

/// Parameters of the geometric family lambda_k = c r^(k-1), |mu_k| = s |lambda_k|.
struct GeometricDescriptor {
  double c = 1.0;
  double r = 0.5;
  double s = 0.7;
  std::size_t n = 1;
  SignPattern signs = SignPattern::Positive;

  bool operator==(const GeometricDescriptor&) const = default;
};

/// Two strictly interlaced sequences |l1| > |m1| > |l2| > ... > |lN| > |mN| >= 0.
///
/// Instances can only be obtained through validate_interlacing() or
/// generate_geometric(), so holding one means the chain has been checked.
class InterlacedSpectrum {
 public:
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  std::span<const double> mus() const noexcept { return mus_; }
  SpectrumMode mode() const noexcept { return mode_; }
  /// Set when the spectrum came from a generator; raw user data has none.
  const std::optional<GeometricDescriptor>& generator() const noexcept { return generator_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  double lambda_max() const noexcept { return std::abs(lambdas_.front()); }

  friend InterlacedSpectrum validate_interlacing(std::span<const double>, std::span<const double>,
                                                 SpectrumMode, std::optional<GeometricDescriptor>);

 private:
  InterlacedSpectrum() = default;

  std::vector<double> lambdas_;
  std::vector<double> mus_;
  SpectrumMode mode_ = SpectrumMode::Finite;
  std::optional<GeometricDescriptor> generator_;
};

/// Checks lengths, finiteness, nonzero lambdas and the strict interlacing
/// chain on absolute values. Throws hisp::Error; InterlacingViolation carries
/// the 1-based index k of the first lambda_k or mu_k that breaks the chain.
InterlacedSpectrum validate_interlacing(std::span<const double> lambdas, std::span<const double> mus,
                                        SpectrumMode mode,
                                        std::optional<GeometricDescriptor> generator = std::nullopt);

/// lambda_k = c r^(k-1) sign_k, mu_k = s lambda_k sign'_k, in truncated mode.
/// Requires c != 0 and 0 < r < s < 1, otherwise BadDecayParameters.
InterlacedSpectrum generate_geometric(const GeometricDescriptor& params);

enum class KernelVerdict { TrivialKernelLikely, NontrivialKernel, FiniteRankAlwaysNontrivial, Undetermined };

std::string_view to_string(KernelVerdict verdict) noexcept;

struct KernelReport {
  /// Partial sums of sum_j (1 - mu_j^2 / lambda_j^2), j = 1..N.
  std::vector<double> partial_sum_1;
  /// Partial sums of sum_j (mu_j^2 / lambda_{j+1}^2 - 1), j = 1..N-1.
  std::vector<double> partial_sum_2;
  KernelVerdict verdict = KernelVerdict::Undetermined;
  /// 1 - prod mu_k^2 / lambda_k^2, which equals ||R^-1 p||^2.
  double q_norm_squared = 0.0;
  /// Closed-form limits of the series terms, known only for generated spectra.
  std::optional<double> term_limit_1;
  std::optional<double> term_limit_2;
};

KernelReport kernel_diagnostics(const InterlacedSpectrum& spectrum);

/// 64-bit FNV-1a digest over the mode and the bit patterns of both sequences,
/// as 16 lowercase hex digits.
std::string source_hash(const InterlacedSpectrum& spectrum);

}  // namespace hisp
