#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "hisp/borg.hpp"
#include "hisp/error.hpp"
#include "hisp/spectra.hpp"
#include "support/corpus.hpp"

using namespace hisp;

namespace {

ErrorKind kind_of(const std::vector<double>& l, const std::vector<double>& m,
                  SpectrumMode mode = SpectrumMode::Finite) {
  try {
    validate_interlacing(l, m, mode);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected validation error");
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST_CASE("validate_interlacing accepts strict chains") {
  const auto one = validate_interlacing(std::vector{1.0}, std::vector{0.5}, SpectrumMode::Finite);
  CHECK(one.size() == 1);
  CHECK(one.mode() == SpectrumMode::Finite);
  CHECK_FALSE(one.generator());

  const auto two = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Finite);
  CHECK(two.lambdas()[1] == 0.5);
  CHECK(two.mus()[0] == 0.7);

  // Signs are free; only magnitudes are ordered.
  const auto signed_pair =
      validate_interlacing(std::vector{-1.0, 0.5}, std::vector{0.7, -0.3}, SpectrumMode::Truncated);
  CHECK(signed_pair.lambdas()[0] == -1.0);
  CHECK(signed_pair.lambda_max() == 1.0);
}

TEST_CASE("validate_interlacing reports the first broken pair") {
  try {
    validate_interlacing(std::vector{1.0, 0.8}, std::vector{0.7, 0.75}, SpectrumMode::Finite);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InterlacingViolation);
    REQUIRE(e.index());
    CHECK(*e.index() == 2);
  }
  try {
    validate_interlacing(std::vector{1.0, 0.5, 0.2}, std::vector{0.7, 0.3, 0.25}, SpectrumMode::Finite);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(*e.index() == 3);
  }
}

TEST_CASE("validate_interlacing error kinds") {
  CHECK(kind_of({1.0, 0.5}, {0.7}) == ErrorKind::LengthMismatch);
  CHECK(kind_of({}, {}) == ErrorKind::EmptyInput);
  CHECK(kind_of({0.0}, {0.0}) == ErrorKind::ZeroLambda);
  CHECK(kind_of({1.0}, {0.0}, SpectrumMode::Truncated) == ErrorKind::ZeroMuInInfiniteMode);
  CHECK(kind_of({1.0}, {std::numeric_limits<double>::quiet_NaN()}) == ErrorKind::NonFiniteInput);
  CHECK(kind_of({std::numeric_limits<double>::infinity()}, {0.5}) == ErrorKind::NonFiniteInput);
  // Ties are violations.
  CHECK(kind_of({1.0}, {1.0}) == ErrorKind::InterlacingViolation);
  CHECK(kind_of({1.0, 0.7}, {0.7, 0.3}) == ErrorKind::InterlacingViolation);
  CHECK(kind_of({1.0}, {-1.0}) == ErrorKind::InterlacingViolation);
  // A zero mu before the end breaks the chain.
  CHECK(kind_of({1.0, 0.5}, {0.0, 0.3}) == ErrorKind::InterlacingViolation);
  CHECK(is_validation_error(ErrorKind::InterlacingViolation));
  CHECK_FALSE(is_validation_error(ErrorKind::ConvergenceFailure));
}

TEST_CASE("mu_N = 0 is admissible in finite mode only") {
  CHECK_NOTHROW(validate_interlacing(std::vector{1.0}, std::vector{0.0}, SpectrumMode::Finite));
  CHECK_NOTHROW(validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, -0.0}, SpectrumMode::Finite));
}

TEST_CASE("generate_geometric substitutes the formula") {
  const auto s = generate_geometric({1.0, 0.5, 0.7, 2, SignPattern::Positive});
  CHECK(s.mode() == SpectrumMode::Truncated);
  CHECK(s.lambdas()[0] == 1.0);
  CHECK(s.lambdas()[1] == 0.5);
  CHECK(s.mus()[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(s.mus()[1] == doctest::Approx(0.35).epsilon(1e-15));
  REQUIRE(s.generator());
  CHECK(s.generator()->n == 2);

  const auto single = generate_geometric({2.0, 0.3, 0.5, 1, SignPattern::Positive});
  CHECK(single.lambdas()[0] == 2.0);
  CHECK(single.mus()[0] == 1.0);

  const auto alt = generate_geometric({1.0, 0.5, 0.7, 3, SignPattern::Alternating});
  CHECK(alt.lambdas()[1] < 0.0);
  CHECK(alt.mus()[1] < 0.0);
  CHECK(alt.lambdas()[2] > 0.0);

  const auto opp = generate_geometric({-1.0, 0.5, 0.7, 2, SignPattern::Opposite});
  CHECK(opp.lambdas()[0] == -1.0);
  CHECK(opp.mus()[0] > 0.0);
}

TEST_CASE("generate_geometric rejects bad decay") {
  const auto bad = [](GeometricDescriptor d) {
    try {
      generate_geometric(d);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::BadDecayParameters;
    }
    return false;
  };
  CHECK(bad({1.0, 0.5, 0.4, 3, SignPattern::Positive}));
  CHECK(bad({1.0, 0.5, 0.5, 3, SignPattern::Positive}));
  CHECK(bad({1.0, 0.5, 1.0, 3, SignPattern::Positive}));
  CHECK(bad({0.0, 0.5, 0.7, 3, SignPattern::Positive}));
  CHECK(bad({1.0, 0.0, 0.7, 3, SignPattern::Positive}));
  CHECK(bad({1.0, 0.5, 0.7, 0, SignPattern::Positive}));
}

TEST_CASE("generated spectra always validate") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double r = 0.01 + 0.98 * unit(rng);
    const double s = r + (1.0 - r) * (0.01 + 0.98 * unit(rng));
    const auto n = static_cast<std::size_t>(1 + t % 40);
    const auto pattern = static_cast<SignPattern>(t % 3);
    CHECK_NOTHROW(generate_geometric({(unit(rng) - 0.5) * 10.0 + 0.01, r, s, n, pattern}));
  }
}

TEST_CASE("parse helpers") {
  CHECK(parse_mode("finite") == SpectrumMode::Finite);
  CHECK(parse_mode("truncated") == SpectrumMode::Truncated);
  CHECK_THROWS_AS(parse_mode("infinite"), Error);
  CHECK(parse_sign_pattern("alternating") == SignPattern::Alternating);
  CHECK(to_string(SignPattern::Opposite) == "opposite");
  CHECK(to_string(KernelVerdict::FiniteRankAlwaysNontrivial) == "finite-rank-always-nontrivial");
}

TEST_CASE("kernel diagnostics on geometric families") {
  const auto s = generate_geometric({1.0, 0.5, 0.7, 10, SignPattern::Positive});
  const KernelReport r = kernel_diagnostics(s);
  REQUIRE(r.term_limit_1);
  REQUIRE(r.term_limit_2);
  CHECK(*r.term_limit_1 == doctest::Approx(0.51).epsilon(1e-14));
  CHECK(*r.term_limit_2 == doctest::Approx(0.96).epsilon(1e-14));
  CHECK(r.verdict == KernelVerdict::TrivialKernelLikely);
  REQUIRE(r.partial_sum_1.size() == 10);
  REQUIRE(r.partial_sum_2.size() == 9);
  // Constant terms: partial sums grow linearly.
  for (std::size_t j = 0; j < 10; ++j) CHECK(r.partial_sum_1[j] == doctest::Approx(0.51 * (j + 1)).epsilon(1e-12));
  for (std::size_t j = 0; j < 9; ++j) CHECK(r.partial_sum_2[j] == doctest::Approx(0.96 * (j + 1)).epsilon(1e-12));
}

TEST_CASE("kernel diagnostics on finite data") {
  const auto zero = validate_interlacing(std::vector{1.0}, std::vector{0.0}, SpectrumMode::Finite);
  const KernelReport z = kernel_diagnostics(zero);
  CHECK(z.q_norm_squared == 1.0);
  CHECK(z.verdict == KernelVerdict::FiniteRankAlwaysNontrivial);
  CHECK_FALSE(z.term_limit_1);

  const auto two = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Finite);
  const KernelReport t = kernel_diagnostics(two);
  CHECK(t.q_norm_squared == doctest::Approx(1.0 - 0.49 * 0.36).epsilon(1e-15));
  CHECK(t.q_norm_squared == doctest::Approx(0.8236).epsilon(1e-12));

  const auto raw = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Truncated);
  CHECK(kernel_diagnostics(raw).verdict == KernelVerdict::Undetermined);
}

TEST_CASE("kernel partial sums are monotone and match the inverse moment") {
  std::mt19937_64 rng(5);
  testing::CorpusOptions o;
  o.max_size = 30;
  o.allow_zero_mu = true;
  for (int t = 0; t < 100; ++t) {
    const auto s = testing::make_spectrum(testing::random_spectrum(rng, o));
    const KernelReport r = kernel_diagnostics(s);
    double prev = 0.0;
    for (double v : r.partial_sum_1) {
      CHECK(v >= prev);
      prev = v;
    }
    prev = 0.0;
    for (double v : r.partial_sum_2) {
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(r.q_norm_squared >= 0.0);
    CHECK(r.q_norm_squared <= 1.0);
    const double moment = compute_weights(s).inverse_moment();
    CHECK(std::abs(r.q_norm_squared - moment) <= 1e-12 * r.q_norm_squared);
  }
}

TEST_CASE("source hash is stable and sensitive") {
  const auto a = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Finite);
  const auto b = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Finite);
  const auto c = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, 0.3}, SpectrumMode::Truncated);
  const auto d = validate_interlacing(std::vector{1.0, 0.5}, std::vector{0.7, -0.3}, SpectrumMode::Finite);
  CHECK(source_hash(a) == source_hash(b));
  CHECK(source_hash(a).size() == 16);
  CHECK(source_hash(a) != source_hash(c));
  CHECK(source_hash(a) != source_hash(d));
}
