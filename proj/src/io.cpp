#include "uaris/io.hpp"

#include "uaris/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace uaris::io {

namespace {

std::string position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw InputError("field '" + field + "': " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) field_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

double number(const Json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 1) field_error(field, "expected a positive integer");
    return j.get<std::size_t>();
}

Vec3 vec3(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) field_error(field, "expected [x, y, z]");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]"), number(j[2], field + "[2]")};
}

std::vector<std::uint8_t> bit_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                     const std::string& field) {
    if (!j.is_array() || j.size() != rows)
        field_error(field, "expected " + std::to_string(rows) + " rows");
    std::vector<std::uint8_t> bits;
    bits.reserve(rows * cols);
    for (std::size_t m = 0; m < rows; ++m) {
        const std::string row_field = field + "[" + std::to_string(m) + "]";
        const Json& row = j[m];
        if (!row.is_array() || row.size() != cols)
            field_error(row_field, "expected a row of " + std::to_string(cols) + " bits");
        for (std::size_t n = 0; n < cols; ++n) {
            const Json& b = row[n];
            if (!b.is_number_integer() || (b.get<long long>() != 0 && b.get<long long>() != 1))
                field_error(row_field + "[" + std::to_string(n) + "]", "expected 0 or 1");
            bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
        }
    }
    return bits;
}

Json bit_rows(std::span<const std::uint8_t> bits, std::size_t rows, std::size_t cols) {
    Json out = Json::array();
    for (std::size_t m = 0; m < rows; ++m) {
        Json row = Json::array();
        for (std::size_t n = 0; n < cols; ++n) row.push_back(static_cast<int>(bits[m * cols + n]));
        out.push_back(std::move(row));
    }
    return out;
}

Medium medium_from_json(const Json& j) {
    const double c = j.contains("sound_speed") ? number(j["sound_speed"], "medium.sound_speed")
                                               : kDefaultSoundSpeed;
    if (!(c > 0.0)) field_error("medium.sound_speed", "must be positive");
    std::string model = "thorp";
    if (j.contains("absorption")) {
        if (!j["absorption"].is_string()) field_error("medium.absorption", "expected a string");
        model = j["absorption"].get<std::string>();
    }
    if (model == "thorp") return Medium::thorp(c);
    if (model == "none") return Medium::lossless(c);
    if (model == "table") {
        const Json& t = member(j, "absorption_table", "medium");
        if (!t.is_array()) field_error("medium.absorption_table", "expected [[hz, db_per_km], ...]");
        std::vector<AbsorptionPoint> table;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string f = "medium.absorption_table[" + std::to_string(i) + "]";
            if (!t[i].is_array() || t[i].size() != 2) field_error(f, "expected [hz, db_per_km]");
            table.push_back({number(t[i][0], f), number(t[i][1], f)});
        }
        try {
            return Medium::tabulated(std::move(table), c);
        } catch (const DomainError& e) {
            field_error("medium.absorption_table", e.what());
        }
    }
    field_error("medium.absorption", "expected \"thorp\", \"none\" or \"table\"");
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

Json parse_json(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ":" + position_of(text, e.byte == 0 ? 0 : e.byte - 1) +
                         ": malformed JSON (" + e.what() + ")");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
    return parse_json(read_text_file(path), path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw InputError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

PhaseCode phase_code_from_json(const Json& j) {
    const std::size_t rows = count(member(j, "rows", ""), "rows");
    const std::size_t cols = count(member(j, "cols", ""), "cols");
    return PhaseCode(rows, cols, bit_matrix(member(j, "bits", ""), rows, cols, "bits"));
}

Json to_json(const PhaseCode& code) {
    Json j;
    j["rows"] = code.rows();
    j["cols"] = code.cols();
    j["bits"] = bit_rows(code.bits(), code.rows(), code.cols());
    return j;
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) field_error("<root>", "expected an object");
    Scenario s;
    s.medium = j.contains("medium") ? medium_from_json(j["medium"]) : Medium::thorp();
    s.frequency_hz = number(member(j, "frequency_hz", ""), "frequency_hz");
    s.tx_pos = vec3(member(j, "tx_pos_m", ""), "tx_pos_m");
    s.rx_pos = vec3(member(j, "rx_pos_m", ""), "rx_pos_m");

    const Json& a = member(j, "array", "");
    s.geometry.rows = count(member(a, "rows", "array"), "array.rows");
    s.geometry.cols = count(member(a, "cols", "array"), "array.cols");
    s.geometry.pitch_m = number(member(a, "pitch_m", "array"), "array.pitch_m");
    if (a.contains("q")) s.geometry.pattern_exponent = number(a["q"], "array.q");
    if (a.contains("rho")) s.geometry.reflect_efficiency = number(a["rho"], "array.rho");
    if (a.contains("active"))
        s.active = bit_matrix(a["active"], s.geometry.rows, s.geometry.cols, "array.active");

    s.source_level.level_db = number(member(j, "source_level_db", ""), "source_level_db");
    s.scatter_scale = number(member(j, "scatter_scale", ""), "scatter_scale");
    if (j.contains("noise_level_db") && !j["noise_level_db"].is_null())
        s.noise_level_db = number(j["noise_level_db"], "noise_level_db");

    try {
        s.validate();
    } catch (const DomainError& e) {
        throw InputError(std::string("invalid scenario: ") + e.what());
    } catch (const ContractError& e) {
        throw InputError(std::string("invalid scenario: ") + e.what());
    }
    return s;
}

Json to_json(const Scenario& s) {
    Json medium;
    medium["sound_speed"] = s.medium.sound_speed();
    switch (s.medium.absorption_model()) {
    case AbsorptionModel::thorp: medium["absorption"] = "thorp"; break;
    case AbsorptionModel::none: medium["absorption"] = "none"; break;
    case AbsorptionModel::custom_table: {
        medium["absorption"] = "table";
        Json t = Json::array();
        for (const auto& p : s.medium.table()) t.push_back({p.frequency_hz, p.db_per_km});
        medium["absorption_table"] = std::move(t);
        break;
    }
    }

    Json array;
    array["rows"] = s.geometry.rows;
    array["cols"] = s.geometry.cols;
    array["pitch_m"] = s.geometry.pitch_m;
    array["q"] = s.geometry.pattern_exponent;
    array["rho"] = s.geometry.reflect_efficiency;
    if (!s.active.empty()) array["active"] = bit_rows(s.active, s.geometry.rows, s.geometry.cols);

    Json j;
    j["medium"] = std::move(medium);
    j["frequency_hz"] = s.frequency_hz;
    j["tx_pos_m"] = {s.tx_pos.x, s.tx_pos.y, s.tx_pos.z};
    j["rx_pos_m"] = {s.rx_pos.x, s.rx_pos.y, s.rx_pos.z};
    j["array"] = std::move(array);
    j["source_level_db"] = s.source_level.level_db;
    j["scatter_scale"] = s.scatter_scale;
    if (s.noise_level_db) j["noise_level_db"] = *s.noise_level_db;
    return j;
}

Json to_json(const LobeReport& report) {
    Json lobes = Json::array();
    for (const Lobe& l : report.main_lobes)
        lobes.push_back({{"theta_deg", l.direction.theta_deg},
                         {"phi_deg", l.direction.phi_deg},
                         {"level_db", l.level_db}});
    Json j;
    j["main_lobes"] = std::move(lobes);
    j["peak_sidelobe_db"] = report.peak_sidelobe_db;
    j["grating_lobe_flag"] = report.grating_lobe_flag;
    return j;
}

Json synthesis_report(const SynthesisResult& r) {
    Json j;
    j["gain_linear"] = r.gain;
    j["gain_db"] = r.gain > 0.0 ? 20.0 * std::log10(r.gain) : kPatternFloorDb;
    j["offset_used_rad"] = r.offset_rad;
    j["passes"] = r.passes;
    return j;
}

std::string format_double(double v) { return format("%.17g", v); }

std::string pattern_csv(const BeamPattern& pattern) {
    std::string out = "theta_deg,phi_deg,af_real,af_imag,af_db_norm\n";
    out.reserve(out.size() + pattern.size() * 72);
    const auto values = pattern.values();
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const Direction d = pattern.direction(i);
        out += format("%.10g", d.theta_deg);
        out += ',';
        out += format("%.10g", d.phi_deg);
        out += ',';
        out += format_double(values[i].real());
        out += ',';
        out += format_double(values[i].imag());
        out += ',';
        out += format("%.6f", pattern.normalized_db(i));
        out += '\n';
    }
    return out;
}

BeamPattern parse_pattern_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "theta_deg,phi_deg,af_real,af_imag,af_db_norm")
        throw InputError("pattern CSV: unexpected header");

    std::vector<Complex> values;
    std::set<double> thetas;
    std::set<double> phis;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double f[5];
        const char* p = line.c_str();
        for (int k = 0; k < 5; ++k) {
            char* end = nullptr;
            errno = 0;
            f[k] = std::strtod(p, &end);
            if (end == p || errno == ERANGE || (k < 4 && *end != ',') || (k == 4 && *end != '\0'))
                throw InputError("pattern CSV line " + std::to_string(line_no) + ": bad field " +
                                 std::to_string(k + 1));
            p = end + 1;
        }
        thetas.insert(f[0]);
        phis.insert(f[1]);
        values.emplace_back(f[2], f[3]);
    }
    if (thetas.size() < 2 || phis.size() < 2) throw InputError("pattern CSV: grid too small");
    const double theta_step = *std::next(thetas.begin());
    const double phi_step = *std::next(phis.begin());
    try {
        return BeamPattern(theta_step, phi_step, std::move(values));
    } catch (const std::exception& e) {
        throw InputError(std::string("pattern CSV: ") + e.what());
    }
}

std::string envelope_csv(const Envelope& env) {
    std::string out = "t_s,envelope\n";
    for (std::size_t i = 0; i < env.time_s.size(); ++i) {
        out += format("%.9g", env.time_s[i]);
        out += ',';
        out += format_double(env.amplitude[i]);
        out += '\n';
    }
    return out;
}

} // namespace uaris::io
