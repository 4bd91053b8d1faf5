#include "uaris/cli.hpp"

#include "uaris/codesynth.hpp"
#include "uaris/errors.hpp"
#include "uaris/io.hpp"
#include "uaris/linksim.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>

namespace uaris::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

enum class AngleConvention { off_normal, from_plane };

struct Common {
    std::string scenario;
    std::string out;
    std::string report;
    std::string angles = "off-normal";
    std::vector<double> incident; // theta, phi; empty means normal incidence
    std::size_t threads = 1;
};

struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::array();
    Json metrics = Json::object();

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["metrics"] = metrics;
        return j;
    }
};

AngleConvention convention(const std::string& name) {
    if (name == "off-normal") return AngleConvention::off_normal;
    if (name == "from-plane") return AngleConvention::from_plane;
    throw InputError("--angles must be off-normal or from-plane");
}

// User angle pair to an internal off-normal Direction.
Direction direction_arg(const std::vector<double>& v, AngleConvention conv, const std::string& flag) {
    if (v.size() != 2) throw InputError(flag + " needs THETA PHI");
    const double theta = conv == AngleConvention::from_plane ? 90.0 - v[0] : v[0];
    Direction d{theta, v[1]};
    try {
        d.validate();
    } catch (const DomainError& e) {
        throw InputError(flag + ": " + e.what());
    }
    return d;
}

Json direction_json(const Direction& d) { return {{"theta_deg", d.theta_deg}, {"phi_deg", d.phi_deg}}; }

Direction incident_of(const Common& c) {
    if (c.incident.empty()) return {0.0, 0.0};
    return direction_arg(c.incident, convention(c.angles), "--incident");
}

Scenario load_scenario(const std::string& path) { return io::scenario_from_json(io::read_json_file(path)); }

PhaseCode load_code(const std::string& path) {
    try {
        return io::phase_code_from_json(io::read_json_file(path));
    } catch (const DomainError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// "run/out.csv" + ".lobes.json" -> "run/out.lobes.json"
fs::path sibling(const fs::path& p, const std::string& suffix) {
    fs::path out = p;
    out.replace_extension();
    out += suffix;
    return out;
}

void require_out(const Common& c) {
    if (c.out.empty()) throw InputError("--out is required");
}

void write_json(const fs::path& path, const Json& j, RunReport& report) {
    io::write_file_atomic(path, j.dump(2) + "\n");
    report.outputs.push_back(path.string());
}

double db(double linear) { return linear > 0.0 ? 20.0 * std::log10(linear) : kPatternFloorDb; }

void add_common(CLI::App* sub, Common& c, bool needs_scenario = true) {
    if (needs_scenario) sub->add_option("--scenario", c.scenario, "Scenario JSON")->required();
    sub->add_option("--out", c.out, "Output file");
    sub->add_option("--report", c.report, "Also write the run report JSON here");
    sub->add_option("--angles", c.angles, "Angle convention: off-normal | from-plane")
        ->check(CLI::IsMember({"off-normal", "from-plane"}));
}

void add_incident(CLI::App* sub, Common& c) {
    sub->add_option("--incident", c.incident, "Incident wave THETA PHI (default: normal incidence)")
        ->expected(2);
}

RunReport cmd_pattern(const Common& c, const std::string& code_path, double theta_step, double phi_step) {
    require_out(c);
    const Scenario s = load_scenario(c.scenario);
    const PhaseCode code = load_code(code_path);
    const Direction incident = incident_of(c);
    require_match(s.geometry, code);

    const BeamPattern pattern = sweep(s.geometry, code, incident, s.frequency_hz, theta_step, phi_step,
                                      s.medium, c.threads);
    const LobeReport lobes = find_lobes(pattern);

    RunReport r;
    r.command = "pattern";
    r.inputs = {{"scenario", c.scenario}, {"code", code_path}, {"theta_step_deg", theta_step},
                {"phi_step_deg", phi_step}, {"incident", direction_json(incident)}};
    io::write_file_atomic(c.out, io::pattern_csv(pattern));
    r.outputs.push_back(c.out);
    write_json(sibling(c.out, ".lobes.json"), io::to_json(lobes), r);

    r.metrics["grid_points"] = pattern.size();
    r.metrics["peak_abs"] = pattern.peak();
    r.metrics["main_lobe_count"] = lobes.main_lobes.size();
    r.metrics["grating_lobe_flag"] = lobes.grating_lobe_flag;
    r.metrics["peak_sidelobe_db"] = lobes.peak_sidelobe_db;
    if (!lobes.main_lobes.empty()) {
        r.metrics["main_lobe_theta_deg"] = lobes.main_lobes.front().direction.theta_deg;
        r.metrics["main_lobe_phi_deg"] = lobes.main_lobes.front().direction.phi_deg;
    }
    return r;
}

RunReport cmd_steer(const Common& c, const std::vector<double>& target_arg, std::size_t offset_steps) {
    require_out(c);
    const Scenario s = load_scenario(c.scenario);
    const Direction incident = incident_of(c);
    const Direction target = direction_arg(target_arg, convention(c.angles), "--target");
    if (offset_steps < 1) throw InputError("--offset-steps must be >= 1");

    const SynthesisResult res = steer_code(s.geometry, {incident, target, s.frequency_hz, offset_steps}, s.medium);

    RunReport r;
    r.command = "steer";
    r.inputs = {{"scenario", c.scenario}, {"incident", direction_json(incident)},
                {"target", direction_json(target)}, {"offset_steps", offset_steps}};
    write_json(c.out, io::to_json(res.code), r);
    write_json(sibling(c.out, ".report.json"), io::synthesis_report(res), r);
    r.metrics["gain_linear"] = res.gain;
    r.metrics["gain_db"] = db(res.gain);
    r.metrics["offset_used_rad"] = res.offset_rad;
    r.metrics["af_abs_at_target"] =
        std::abs(array_factor(s.geometry, res.code, incident, s.frequency_hz, target, s.medium));
    return r;
}

RunReport cmd_bruteforce(const Common& c, const std::vector<double>& target_arg) {
    require_out(c);
    const Scenario s = load_scenario(c.scenario);
    const Direction incident = incident_of(c);
    const Direction target = direction_arg(target_arg, convention(c.angles), "--target");

    const SynthesisResult best = brute_force_code(s.geometry, incident, target, s.frequency_hz, s.medium, c.threads);
    const SynthesisResult steered = steer_code(s.geometry, {incident, target, s.frequency_hz}, s.medium);

    RunReport r;
    r.command = "bruteforce";
    r.inputs = {{"scenario", c.scenario}, {"incident", direction_json(incident)},
                {"target", direction_json(target)}};
    write_json(c.out, io::to_json(best.code), r);
    write_json(sibling(c.out, ".report.json"), io::synthesis_report(best), r);
    r.metrics["gain_linear"] = best.gain;
    r.metrics["gain_db"] = db(best.gain);
    r.metrics["steer_gain_linear"] = steered.gain;
    r.metrics["steer_power_ratio"] = best.gain > 0.0 ? std::pow(steered.gain / best.gain, 2) : 1.0;
    return r;
}

RunReport cmd_suppress(const Common& c, const std::vector<double>& target_arg,
                       const std::vector<double>& eve_arg, double mu, std::size_t max_passes) {
    require_out(c);
    const Scenario s = load_scenario(c.scenario);
    const AngleConvention conv = convention(c.angles);
    SuppressionTask task;
    task.incident = incident_of(c);
    task.target = direction_arg(target_arg, conv, "--target");
    task.eavesdropper = direction_arg(eve_arg, conv, "--eavesdropper");
    task.frequency_hz = s.frequency_hz;
    task.weight = mu;
    task.max_passes = max_passes;
    if (!(mu >= 0.0)) throw InputError("--mu must be >= 0");
    if (!(angular_separation_deg(task.target, task.eavesdropper) > 0.0))
        throw InputError("--target and --eavesdropper coincide");

    const SynthesisResult res = suppress_code(s.geometry, task, s.medium);
    const SynthesisResult steered = steer_code(s.geometry, {task.incident, task.target, s.frequency_hz}, s.medium);
    auto eve_gain = [&](const PhaseCode& code) {
        return std::abs(array_factor(s.geometry, code, task.incident, s.frequency_hz, task.eavesdropper, s.medium));
    };

    RunReport r;
    r.command = "suppress";
    r.inputs = {{"scenario", c.scenario}, {"incident", direction_json(task.incident)},
                {"target", direction_json(task.target)}, {"eavesdropper", direction_json(task.eavesdropper)},
                {"mu", mu}, {"max_passes", max_passes}};
    write_json(c.out, io::to_json(res.code), r);
    write_json(sibling(c.out, ".report.json"), io::synthesis_report(res), r);
    r.metrics["gain_target"] = res.gain;
    r.metrics["gain_eavesdropper"] = eve_gain(res.code);
    r.metrics["steer_gain_target"] = steered.gain;
    r.metrics["steer_gain_eavesdropper"] = eve_gain(steered.code);
    r.metrics["objective"] = res.objective;
    r.metrics["passes"] = res.passes;
    return r;
}

RunReport cmd_simulate(const Common& c, const std::string& code_a_path, const std::string& code_b_path,
                       double toggle_ms, double duration_s, double sample_rate) {
    require_out(c);
    const Scenario s = load_scenario(c.scenario);
    const PhaseCode a = code_a_path.empty() ? PhaseCode::zeros(s.geometry) : load_code(code_a_path);
    const PhaseCode b = code_b_path.empty() ? complement(a) : load_code(code_b_path);
    require_match(s.geometry, a);
    require_match(s.geometry, b);
    const double period = toggle_ms / 1000.0;
    if (!(period > 0.0)) throw InputError("--toggle-ms must be positive");
    if (sample_rate <= 0.0) sample_rate = std::max(10000.0, 10.0 / period);

    Envelope env;
    try {
        env = toggle_envelope(s, a, b, period, duration_s, sample_rate);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    const ReceivedField fa = received_field(s, a);
    const ReceivedField fb = received_field(s, b);

    RunReport r;
    r.command = "simulate";
    r.inputs = {{"scenario", c.scenario}, {"code_a", code_a_path.empty() ? "zeros" : code_a_path},
                {"code_b", code_b_path.empty() ? "complement(code_a)" : code_b_path},
                {"toggle_ms", toggle_ms}, {"duration_s", duration_s}, {"sample_rate_hz", sample_rate}};
    io::write_file_atomic(c.out, io::envelope_csv(env));
    r.outputs.push_back(c.out);

    r.metrics["samples"] = env.amplitude.size();
    r.metrics["level_a"] = env.level_a;
    r.metrics["level_b"] = env.level_b;
    r.metrics["amplitude_difference"] = env.amplitude_difference();
    r.metrics["level_ratio"] = env.level_ratio();
    r.metrics["direct_abs"] = std::abs(fa.direct);
    r.metrics["reflected_abs_a"] = std::abs(fa.reflected);
    r.metrics["reflected_abs_b"] = std::abs(fb.reflected);
    r.metrics["snr_gain_a_db"] = snr_gain_db(s, a);
    r.metrics["snr_gain_b_db"] = snr_gain_db(s, b);
    if (auto snr = snr_db(s, a)) r.metrics["snr_a_db"] = *snr;
    if (auto snr = snr_db(s, b)) r.metrics["snr_b_db"] = *snr;
    return r;
}

RunReport cmd_calibrate(const Common& c, double a_plus, double a_minus, const std::string& code_path,
                        bool phase_aware) {
    require_out(c);
    if (!(a_minus >= 0.0) || !(a_plus > 0.0) || a_plus < a_minus)
        throw InputError("calibration needs a_plus >= a_minus >= 0 and a_plus > 0");
    Scenario s = load_scenario(c.scenario);
    const PhaseCode code = code_path.empty() ? PhaseCode::zeros(s.geometry) : load_code(code_path);
    require_match(s.geometry, code);

    s.scatter_scale = calibrate_scatter(s, code, a_plus, a_minus, !phase_aware);
    const ReceivedField f = received_field(s, code);
    const ReceivedField g = received_field(s, complement(code));
    const double hi = std::max(std::abs(f.total), std::abs(g.total));
    const double lo = std::min(std::abs(f.total), std::abs(g.total));

    RunReport r;
    r.command = "calibrate";
    r.inputs = {{"scenario", c.scenario}, {"a_plus", a_plus}, {"a_minus", a_minus},
                {"code", code_path.empty() ? "zeros" : code_path}, {"assume_in_phase", !phase_aware}};
    write_json(c.out, io::to_json(s), r);
    r.metrics["scatter_scale"] = s.scatter_scale;
    r.metrics["reflected_to_direct"] = std::abs(f.reflected) / std::abs(f.direct);
    r.metrics["predicted_ratio"] = hi > 0.0 ? lo / hi : 1.0;
    r.metrics["target_ratio"] = a_minus / a_plus;
    return r;
}

RunReport cmd_lobes(const Common& c, const std::string& pattern_path) {
    require_out(c);
    const BeamPattern pattern = io::parse_pattern_csv(io::read_text_file(pattern_path));
    const LobeReport lobes = find_lobes(pattern);
    RunReport r;
    r.command = "lobes";
    r.inputs = {{"pattern", pattern_path}};
    write_json(c.out, io::to_json(lobes), r);
    r.metrics["main_lobe_count"] = lobes.main_lobes.size();
    r.metrics["grating_lobe_flag"] = lobes.grating_lobe_flag;
    r.metrics["peak_sidelobe_db"] = lobes.peak_sidelobe_db;
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator and code synthesis for 1-bit underwater acoustic reflecting surfaces", "uaris"};
    app.require_subcommand(1);

    Common c;
    std::function<RunReport()> action;

    std::string code_path;
    double theta_step = 1.0;
    double phi_step = 1.0;
    auto* pattern = app.add_subcommand("pattern", "Sweep the reflected beam pattern to CSV");
    add_common(pattern, c);
    add_incident(pattern, c);
    pattern->add_option("--code", code_path, "Phase code JSON")->required();
    pattern->add_option("--theta-step", theta_step, "Theta grid step, deg");
    pattern->add_option("--phi-step", phi_step, "Phi grid step, deg");
    pattern->add_option("--threads", c.threads, "Worker threads for the sweep");
    pattern->callback([&] { action = [&] { return cmd_pattern(c, code_path, theta_step, phi_step); }; });

    std::vector<double> target;
    std::size_t offset_steps = 64;
    auto* steer = app.add_subcommand("steer", "Quantized steering code toward a target");
    add_common(steer, c);
    add_incident(steer, c);
    steer->add_option("--target", target, "Target THETA PHI")->expected(2)->required();
    steer->add_option("--offset-steps", offset_steps, "Quantizer phase offsets scanned over [0, pi)");
    steer->callback([&] { action = [&] { return cmd_steer(c, target, offset_steps); }; });

    auto* brute = app.add_subcommand("bruteforce", "Exhaustive optimal code (<= 20 units)");
    add_common(brute, c);
    add_incident(brute, c);
    brute->add_option("--target", target, "Target THETA PHI")->expected(2)->required();
    brute->add_option("--threads", c.threads, "Worker threads");
    brute->callback([&] { action = [&] { return cmd_bruteforce(c, target); }; });

    std::vector<double> eavesdropper;
    double mu = 1.0;
    std::size_t max_passes = 100;
    auto* suppress = app.add_subcommand("suppress", "Steer toward a target while suppressing an eavesdropper");
    add_common(suppress, c);
    add_incident(suppress, c);
    suppress->add_option("--target", target, "Target THETA PHI")->expected(2)->required();
    suppress->add_option("--eavesdropper", eavesdropper, "Eavesdropper THETA PHI")->expected(2)->required();
    suppress->add_option("--mu", mu, "Eavesdropper power weight");
    suppress->add_option("--max-passes", max_passes, "Flip passes limit");
    suppress->callback([&] { action = [&] { return cmd_suppress(c, target, eavesdropper, mu, max_passes); }; });

    std::string code_b_path;
    double toggle_ms = 20.0;
    double duration_s = 0.2;
    double sample_rate = 0.0;
    auto* simulate = app.add_subcommand("simulate", "Envelope of a link toggling between two codes");
    add_common(simulate, c);
    simulate->add_option("--code-a", code_path, "First code (default: all zeros)");
    simulate->add_option("--code-b", code_b_path, "Second code (default: complement of the first)");
    simulate->add_option("--toggle-ms", toggle_ms, "Toggle period, ms");
    simulate->add_option("--duration-s", duration_s, "Series length, s");
    simulate->add_option("--sample-rate", sample_rate, "Samples per second (default max(10 kHz, 10/period))");
    simulate->callback([&] {
        action = [&] { return cmd_simulate(c, code_path, code_b_path, toggle_ms, duration_s, sample_rate); };
    });

    double a_plus = 0.0;
    double a_minus = 0.0;
    bool phase_aware = false;
    auto* calibrate = app.add_subcommand("calibrate", "Fit the scatter scale to a measured envelope pair");
    add_common(calibrate, c);
    calibrate->add_option("--a-plus", a_plus, "Envelope with the reflection adding")->required();
    calibrate->add_option("--a-minus", a_minus, "Envelope with the reflection subtracting")->required();
    calibrate->add_option("--code", code_path, "Code toggled against its complement (default: all zeros)");
    calibrate->add_flag("--phase-aware", phase_aware, "Use the modelled R/D phase instead of assuming alignment");
    calibrate->callback([&] {
        action = [&] { return cmd_calibrate(c, a_plus, a_minus, code_path, phase_aware); };
    });

    std::string pattern_path;
    auto* lobes = app.add_subcommand("lobes", "Lobe report for a pattern CSV");
    add_common(lobes, c, false);
    lobes->add_option("--pattern", pattern_path, "Pattern CSV")->required();
    lobes->callback([&] { action = [&] { return cmd_lobes(c, pattern_path); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        RunReport report = action();
        if (!c.report.empty()) io::write_file_atomic(c.report, report.to_json().dump(2) + "\n");
        out << report.to_json().dump(2) << "\n";
        return kOk;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const ContractError& e) {
        err << "contract violation: " << e.what() << "\n";
        return kContractViolation;
    } catch (const CalibrationError& e) {
        err << "contract violation: " << e.what() << "\n";
        return kContractViolation;
    } catch (const OutOfBracketError& e) {
        err << "contract violation: " << e.what() << "\n";
        return kContractViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

} // namespace uaris::cli
