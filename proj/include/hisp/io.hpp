#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hisp/borg.hpp"
#include "hisp/hankel.hpp"
#include "hisp/spectra.hpp"
#include "hisp/verify.hpp"

namespace hisp::io {

using Json = nlohmann::ordered_json;

std::string_view tool_version() noexcept;

/// {"lambda": [...], "mu": [...], "mode": "finite"|"truncated"} with an
/// optional "source" generator descriptor. Mode defaults to finite.
InterlacedSpectrum parse_spectrum(const Json& doc);
Json to_json(const InterlacedSpectrum& spectrum);

/// {"version", "source_hash", "gamma": [...], "tail_bound": t}
Json to_json(const HankelModel& model);
HankelModel parse_model(const Json& doc);

/// One coefficient per line.
std::string to_csv(const HankelModel& model);
HankelModel parse_model_csv(std::string_view text);

Json to_json(const SpectralMeasure& measure);
Json to_json(const KernelReport& report);
Json to_json(const VerificationReport& report);
Json to_json(const ForwardSpectrum& forward);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

Json parse_json_text(std::string_view text);

}  // namespace hisp::io
