#pragma once

#include "uaris/array.hpp"
#include "uaris/beampattern.hpp"
#include "uaris/codesynth.hpp"
#include "uaris/linksim.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace uaris::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError carrying
/// "<source>:<line>:<column>".
Json parse_json(std::string_view text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// {"rows": int, "cols": int, "bits": [[0|1, ...], ...]}
PhaseCode phase_code_from_json(const Json& j);
Json to_json(const PhaseCode& code);

// {"medium": {"sound_speed", "absorption": "thorp"|"none"|"table",
//             "absorption_table": [[hz, db_per_km], ...]},
//  "frequency_hz", "tx_pos_m", "rx_pos_m",
//  "array": {"rows", "cols", "pitch_m", "q", "rho", "active": [[0|1...]...]},
//  "source_level_db", "scatter_scale", "noise_level_db"}
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

Json to_json(const LobeReport& report);
Json synthesis_report(const SynthesisResult& r);

/// theta_deg,phi_deg,af_real,af_imag,af_db_norm rows in theta-major order.
std::string pattern_csv(const BeamPattern& pattern);
BeamPattern parse_pattern_csv(std::string_view text);

/// t_s,envelope rows.
std::string envelope_csv(const Envelope& env);

/// Round-trip-exact decimal text of a double (C locale).
std::string format_double(double v);

} // namespace uaris::io
