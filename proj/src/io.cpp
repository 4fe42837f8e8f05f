#include "hisp/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hisp/error.hpp"

namespace hisp::io {

namespace {

std::vector<double> read_numbers(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorKind::MalformedInput, std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) {
    if (!v.is_number()) throw Error(ErrorKind::MalformedInput, std::string("field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json array_of(const std::vector<double>& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(finite_or_null(v));
  return arr;
}

}  // namespace

std::string_view tool_version() noexcept { return HISP_VERSION; }

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

InterlacedSpectrum parse_spectrum(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::MalformedInput, "spectrum document must be a JSON object");
  const auto lambdas = read_numbers(doc, "lambda");
  const auto mus = read_numbers(doc, "mu");
  SpectrumMode mode = SpectrumMode::Finite;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw Error(ErrorKind::MalformedInput, "'mode' must be a string");
    mode = parse_mode(doc["mode"].get<std::string>());
  }
  std::optional<GeometricDescriptor> generator;
  if (doc.contains("source") && doc["source"].is_object() && doc["source"].value("generator", "") == "geometric") {
    const Json& src = doc["source"];
    try {
      GeometricDescriptor g;
      g.c = src.at("c").get<double>();
      g.r = src.at("r").get<double>();
      g.s = src.at("s").get<double>();
      g.n = src.at("n").get<std::size_t>();
      g.signs = parse_sign_pattern(src.value("signs", "positive"));
      generator = g;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MalformedInput, std::string("bad generator descriptor: ") + e.what());
    }
  }
  return validate_interlacing(lambdas, mus, mode, generator);
}

Json to_json(const InterlacedSpectrum& spectrum) {
  Json doc;
  doc["lambda"] = array_of({spectrum.lambdas().begin(), spectrum.lambdas().end()});
  doc["mu"] = array_of({spectrum.mus().begin(), spectrum.mus().end()});
  doc["mode"] = std::string(to_string(spectrum.mode()));
  if (const auto& g = spectrum.generator()) {
    Json src;
    src["generator"] = "geometric";
    src["c"] = g->c;
    src["r"] = g->r;
    src["s"] = g->s;
    src["n"] = g->n;
    src["signs"] = std::string(to_string(g->signs));
    doc["source"] = std::move(src);
  }
  return doc;
}

Json to_json(const HankelModel& model) {
  Json doc;
  doc["version"] = std::string(tool_version());
  doc["source_hash"] = model.source_hash;
  doc["gamma"] = array_of(model.coefficients);
  doc["tail_bound"] = finite_or_null(model.tail_bound);
  return doc;
}

HankelModel parse_model(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::MalformedInput, "coefficient document must be a JSON object");
  HankelModel model = model_from_coefficients(read_numbers(doc, "gamma"));
  if (doc.contains("tail_bound") && doc["tail_bound"].is_number()) model.tail_bound = doc["tail_bound"].get<double>();
  if (doc.contains("source_hash") && doc["source_hash"].is_string()) model.source_hash = doc["source_hash"].get<std::string>();
  return model;
}

std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

std::string to_csv(const HankelModel& model) {
  std::string out;
  for (double g : model.coefficients) {
    out += format_double(g);
    out += '\n';
  }
  return out;
}

HankelModel parse_model_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + " is not a number");
    }
    values.push_back(value);
  }
  return model_from_coefficients(std::move(values));
}

Json to_json(const SpectralMeasure& measure) {
  Json doc;
  Json atoms = Json::array();
  for (std::size_t k = 0; k < measure.size(); ++k) {
    Json atom;
    atom["position"] = measure.atoms[k].position;
    atom["weight"] = measure.atoms[k].weight;
    atom["log_weight"] = measure.log_weights[k];
    atoms.push_back(std::move(atom));
  }
  doc["atoms"] = std::move(atoms);
  doc["total_mass"] = measure.total_mass();
  doc["inverse_moment"] = measure.inverse_moment();
  return doc;
}

Json to_json(const KernelReport& report) {
  Json doc;
  doc["version"] = std::string(tool_version());
  doc["partial_sum_1"] = array_of(report.partial_sum_1);
  doc["partial_sum_2"] = array_of(report.partial_sum_2);
  doc["verdict"] = std::string(to_string(report.verdict));
  doc["q_norm_squared"] = report.q_norm_squared;
  doc["term_limit_1"] = report.term_limit_1 ? Json(*report.term_limit_1) : Json(nullptr);
  doc["term_limit_2"] = report.term_limit_2 ? Json(*report.term_limit_2) : Json(nullptr);
  return doc;
}

Json to_json(const VerificationReport& report) {
  Json doc;
  doc["version"] = std::string(tool_version());
  doc["source_hash"] = report.source_hash;
  doc["passed"] = report.passed;
  doc["input_lambdas"] = array_of(report.input_lambdas);
  doc["input_mus"] = array_of(report.input_mus);
  doc["recovered_lambdas"] = array_of(report.recovered_lambdas);
  doc["recovered_mus"] = array_of(report.recovered_mus);
  doc["per_eigen_errors"] = Json{{"lambda", array_of(report.lambda_errors)}, {"mu", array_of(report.mu_errors)}};
  doc["structure_residual"] = finite_or_null(report.structure_residual);
  doc["isometry_residual"] = finite_or_null(report.isometry_residual);
  doc["parseval_residual"] = finite_or_null(report.parseval_residual);
  doc["defect_residual"] = finite_or_null(report.defect_residual);
  doc["operator_norm"] = finite_or_null(report.operator_norm);
  doc["intertwining_residual"] = finite_or_null(report.intertwining_residual);
  doc["truncation_m"] = report.truncation_m;
  doc["coefficient_count"] = report.coefficient_count;
  doc["certified_length"] = report.certified_length;
  doc["tail_bound"] = finite_or_null(report.tail_bound);
  doc["tail_certified"] = report.tail_certified;
  doc["recovered_interlaced"] = report.recovered_interlaced;
  doc["signs_preserved"] = report.signs_preserved;
  if (report.failure) {
    doc["failure"] = Json{{"stage", report.failure->stage},
                          {"kind", report.failure->kind},
                          {"message", report.failure->message}};
  } else {
    doc["failure"] = nullptr;
  }
  return doc;
}

Json to_json(const ForwardSpectrum& forward) {
  Json doc;
  doc["version"] = std::string(tool_version());
  doc["lambda"] = array_of(forward.lambdas);
  doc["mu"] = array_of(forward.mus);
  doc["truncation_m"] = forward.m;
  return doc;
}

}  // namespace hisp::io
