#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hisp/error.hpp"
#include "hisp/io.hpp"
#include "support/corpus.hpp"

using namespace hisp;
using io::Json;

namespace {

ErrorKind parse_error(const std::string& text) {
  try {
    io::parse_spectrum(io::parse_json_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::LengthMismatch;
}

}  // namespace

TEST_CASE("spectrum documents") {
  const auto s = io::parse_spectrum(io::parse_json_text(R"({"lambda":[1,0.5],"mu":[0.7,0.3]})"));
  CHECK(s.mode() == SpectrumMode::Finite);
  CHECK(s.size() == 2);
  const auto t = io::parse_spectrum(io::parse_json_text(R"({"lambda":[1],"mu":[0.5],"mode":"truncated"})"));
  CHECK(t.mode() == SpectrumMode::Truncated);

  CHECK(parse_error("{") == ErrorKind::MalformedInput);
  CHECK(parse_error("[1,2]") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":[1]})") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":1,"mu":[0.5]})") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":["1"],"mu":[0.5]})") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":[1],"mu":[0.5],"mode":"infinite"})") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":[1],"mu":[0.5],"mode":3})") == ErrorKind::MalformedInput);
  CHECK(parse_error(R"({"lambda":[1,0.8],"mu":[0.7,0.75]})") == ErrorKind::InterlacingViolation);
  CHECK(parse_error(R"({"lambda":[1],"mu":[0],"mode":"truncated"})") == ErrorKind::ZeroMuInInfiniteMode);
  CHECK(parse_error(R"({"lambda":[1],"mu":[0.5],"source":{"generator":"geometric","c":1}})") ==
        ErrorKind::MalformedInput);
}

TEST_CASE("generated spectra keep their descriptor through JSON") {
  const auto g = generate_geometric({1.0, 0.5, 0.7, 4, SignPattern::Alternating});
  const Json doc = io::to_json(g);
  CHECK(doc["source"]["generator"] == "geometric");
  const auto back = io::parse_spectrum(io::parse_json_text(doc.dump()));
  REQUIRE(back.generator());
  CHECK(*back.generator() == *g.generator());
  CHECK(source_hash(back) == source_hash(g));
  CHECK(kernel_diagnostics(back).verdict == KernelVerdict::TrivialKernelLikely);
}

TEST_CASE("spectrum JSON round trips bit for bit") {
  std::mt19937_64 rng(51);
  testing::CorpusOptions o;
  o.max_size = 30;
  o.allow_zero_mu = true;
  for (int t = 0; t < 100; ++t) {
    const auto s = testing::make_spectrum(testing::random_spectrum(rng, o));
    const std::string text = io::to_json(s).dump(2);
    const auto back = io::parse_spectrum(io::parse_json_text(text));
    CHECK(source_hash(back) == source_hash(s));
    CHECK(io::to_json(back).dump(2) == text);
  }
}

TEST_CASE("coefficient files round trip bit for bit") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  std::vector<double> gamma;
  for (int i = 0; i < 500; ++i) gamma.push_back(std::ldexp(mantissa(rng), exponent(rng)));
  gamma.push_back(0.0);
  gamma.push_back(-0.0);
  gamma.push_back(std::numeric_limits<double>::denorm_min());
  HankelModel m = model_from_coefficients(gamma);
  m.tail_bound = 1.25e-21;
  m.source_hash = "0123456789abcdef";

  const HankelModel from_csv = io::parse_model_csv(io::to_csv(m));
  REQUIRE(from_csv.length() == gamma.size());
  const HankelModel from_json = io::parse_model(io::parse_json_text(io::to_json(m).dump()));
  REQUIRE(from_json.length() == gamma.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    CHECK(std::bit_cast<std::uint64_t>(from_csv.coefficients[j]) == std::bit_cast<std::uint64_t>(gamma[j]));
    CHECK(std::bit_cast<std::uint64_t>(from_json.coefficients[j]) == std::bit_cast<std::uint64_t>(gamma[j]));
  }
  CHECK(from_json.tail_bound == 1.25e-21);
  CHECK(from_json.source_hash == m.source_hash);
  CHECK(io::to_json(m)["version"] == std::string(io::tool_version()));
}

TEST_CASE("CSV details") {
  CHECK(io::to_csv(model_from_coefficients({0.75, 0.375, 1e-300})) == "0.75\n0.375\n1e-300\n");
  const HankelModel m = io::parse_model_csv("# gamma\n0.5\r\n  0.25 \n\n");
  REQUIRE(m.length() == 2);
  CHECK(m.coefficients[1] == 0.25);
  CHECK_THROWS_AS(io::parse_model_csv("0.5\nabc\n"), Error);
  CHECK_THROWS_AS(io::parse_model_csv("0.5x\n"), Error);
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("report documents") {
  const auto s = validate_interlacing(std::vector{1.0}, std::vector{0.5}, SpectrumMode::Finite);
  VerifyConfig config;
  config.truncation = 30;
  const VerificationReport r = round_trip(s, config);
  const Json doc = io::to_json(r);
  for (const char* key : {"version", "source_hash", "passed", "recovered_lambdas", "recovered_mus", "per_eigen_errors",
                          "structure_residual", "parseval_residual", "defect_residual", "truncation_m", "failure"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["passed"] == true);
  CHECK(doc["failure"].is_null());
  CHECK(doc["truncation_m"] == 30);
  CHECK(doc["per_eigen_errors"]["lambda"].size() == 1);
  // Same input, same bytes.
  CHECK(io::to_json(round_trip(s, config)).dump(2) == doc.dump(2));

  const Json kernel = io::to_json(kernel_diagnostics(s));
  CHECK(kernel["verdict"] == "finite-rank-always-nontrivial");
  CHECK(kernel["term_limit_1"].is_null());
  CHECK(kernel["q_norm_squared"].get<double>() == doctest::Approx(0.75).epsilon(1e-15));

  const Json measure = io::to_json(compute_weights(s));
  CHECK(measure["atoms"][0]["weight"].get<double>() == doctest::Approx(0.75).epsilon(1e-15));

  ForwardSpectrum f;
  f.lambdas = {1.0};
  f.mus = {0.5};
  f.m = 8;
  CHECK(io::to_json(f).dump() == R"({"version":")" + std::string(io::tool_version()) +
                                     R"(","lambda":[1.0],"mu":[0.5],"truncation_m":8})");
}
