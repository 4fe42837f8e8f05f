// hankel-isp: reconstruct a self-adjoint Hankel operator from the spectra of
// Gamma and Gamma S, and check the reconstruction.
//
// Exit status: 0 success, 1 numerical or verification failure, 2 usage error,
// 3 invalid input data.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hisp/borg.hpp"
#include "hisp/error.hpp"
#include "hisp/hankel.hpp"
#include "hisp/io.hpp"
#include "hisp/operators.hpp"
#include "hisp/spectra.hpp"
#include "hisp/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input = "-";
  std::string output = "-";
  std::string measure_output;
  double tol = 1e-10;
  std::size_t max_coeffs = 100000;
  std::string truncation = "adaptive";
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::size_t count = 0;
  hisp::GeometricDescriptor geometric;
  std::string signs = "positive";
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write output file '" + path + "'");
  out << text;
}

std::string dump(const hisp::io::Json& doc) { return doc.dump(2) + "\n"; }

std::optional<std::size_t> parse_truncation(const std::string& text) {
  if (text == "adaptive") return std::nullopt;
  std::size_t value = 0;
  try {
    std::size_t used = 0;
    value = std::stoul(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--truncation expects an integer or 'adaptive', got '" + text + "'");
  }
  if (value < 2) throw UsageError("--truncation must be at least 2");
  return value;
}

void check_common(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.max_coeffs < 1) throw UsageError("--max-coeffs must be at least 1");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
}

hisp::HankelOptions coefficient_options(const RunConfig& cfg) {
  hisp::HankelOptions opts;
  opts.tol = cfg.tol;
  opts.max_coeffs = cfg.max_coeffs;
  return opts;
}

int run_solve(const RunConfig& cfg) {
  const auto spectrum = hisp::io::parse_spectrum(hisp::io::parse_json_text(read_input(cfg.input)));
  const auto measure = hisp::compute_weights(spectrum);
  const auto triple = hisp::assemble_pair(measure, spectrum);
  const auto data = hisp::build_sigma_star(triple);
  auto opts = coefficient_options(cfg);
  if (auto m = parse_truncation(cfg.truncation)) opts.min_coeffs = 2 * *m - 1;
  const auto model = hisp::hankel_coefficients(data, triple, opts);

  write_output(cfg.output, cfg.format == "csv" ? hisp::io::to_csv(model) : dump(hisp::io::to_json(model)));
  std::string measure_path = cfg.measure_output;
  if (measure_path.empty() && cfg.output != "-") measure_path = cfg.output + ".measure.json";
  if (!measure_path.empty()) write_output(measure_path, dump(hisp::io::to_json(measure)));
  return 0;
}

int run_forward(const RunConfig& cfg) {
  const std::string text = read_input(cfg.input);
  const bool csv = cfg.format == "csv" ||
                   (cfg.input.size() > 4 && cfg.input.compare(cfg.input.size() - 4, 4, ".csv") == 0);
  const auto model = csv ? hisp::io::parse_model_csv(text) : hisp::io::parse_model(hisp::io::parse_json_text(text));
  if (model.length() < 3) throw hisp::Error(hisp::ErrorKind::InsufficientCoefficients, "need at least 3 coefficients");

  const std::size_t largest = (model.length() + 1) / 2;
  const std::size_t m = parse_truncation(cfg.truncation).value_or(std::min<std::size_t>(largest, 4096));
  std::size_t count = cfg.count;
  if (count == 0) count = std::max<std::size_t>(1, hisp::numerical_rank(model, m, cfg.tol));
  count = std::min(count, m - 1);
  const auto forward = hisp::forward_spectrum(model, m, count);
  write_output(cfg.output, dump(hisp::io::to_json(forward)));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const auto spectrum = hisp::io::parse_spectrum(hisp::io::parse_json_text(read_input(cfg.input)));
  hisp::VerifyConfig vc;
  vc.coefficients = coefficient_options(cfg);
  vc.truncation = parse_truncation(cfg.truncation);
  vc.seed = cfg.seed;
  const auto report = hisp::round_trip(spectrum, vc);
  write_output(cfg.output, dump(hisp::io::to_json(report)));
  if (!report.passed) {
    std::cerr << "verification failed";
    if (report.failure) std::cerr << " at stage " << report.failure->stage << ": " << report.failure->message;
    std::cerr << "\n";
    return kExitFailure;
  }
  return 0;
}

int run_diagnose(const RunConfig& cfg) {
  const auto spectrum = hisp::io::parse_spectrum(hisp::io::parse_json_text(read_input(cfg.input)));
  write_output(cfg.output, dump(hisp::io::to_json(hisp::kernel_diagnostics(spectrum))));
  return 0;
}

int run_generate(RunConfig cfg) {
  cfg.geometric.signs = hisp::parse_sign_pattern(cfg.signs);
  write_output(cfg.output, dump(hisp::io::to_json(hisp::generate_geometric(cfg.geometric))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct a self-adjoint Hankel operator from two interlaced spectra"};
  app.set_version_flag("--version", std::string(hisp::io::tool_version()));
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "Input file ('-' for stdin)");
    sub->add_option("--output,-o", cfg.output, "Output file ('-' for stdout)");
    sub->add_option("--tol", cfg.tol, "Coefficient tail tolerance")->capture_default_str();
    sub->add_option("--max-coeffs", cfg.max_coeffs, "Cap on generated coefficients")->capture_default_str();
    sub->add_option("--truncation", cfg.truncation, "Block size m, or 'adaptive'")->capture_default_str();
    sub->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for probe vectors")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Spectrum JSON -> Hankel coefficients (+ measure dump)");
  add_common(solve);
  solve->add_option("--measure", cfg.measure_output, "Measure dump path (default <output>.measure.json)");

  auto* forward = app.add_subcommand("forward", "Coefficients -> eigenvalues of Gamma and Gamma S blocks");
  add_common(forward);
  forward->add_option("--count", cfg.count, "Eigenvalues to extract (0 = numerical rank)");

  auto* verify = app.add_subcommand("verify", "Spectrum JSON -> verification report; exit 0 iff passed");
  add_common(verify);

  auto* diagnose = app.add_subcommand("diagnose", "Spectrum JSON -> kernel diagnostics");
  add_common(diagnose);

  auto* generate = app.add_subcommand("generate", "Geometric family -> spectrum JSON");
  add_common(generate);
  generate->add_option("--c", cfg.geometric.c, "Leading eigenvalue")->capture_default_str();
  generate->add_option("--r", cfg.geometric.r, "Decay ratio of lambda")->capture_default_str();
  generate->add_option("--s", cfg.geometric.s, "Ratio |mu_k| / |lambda_k|")->capture_default_str();
  generate->add_option("--n", cfg.geometric.n, "Number of pairs")->capture_default_str();
  generate->add_option("--signs", cfg.signs, "positive | alternating | opposite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    check_common(cfg);
    if (*solve) return run_solve(cfg);
    if (*forward) return run_forward(cfg);
    if (*verify) return run_verify(cfg);
    if (*diagnose) return run_diagnose(cfg);
    if (*generate) return run_generate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hisp::Error& e) {
    std::cerr << e.what() << "\n";
    return hisp::is_validation_error(e.kind()) ? kExitInvalid : kExitFailure;
  }
  return kExitUsage;
}
