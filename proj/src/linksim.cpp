#include "uaris/linksim.hpp"

#include "uaris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace uaris {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Angle off the +X element normal of the vector from an element to a point.
double off_normal_deg(const Vec3& v) {
    return std::atan2(std::hypot(v.y, v.z), v.x) * kRadToDeg;
}

Complex propagate(const Scenario& s, double k, double distance) {
    return std::polar(path_amplitude(s.medium, distance, s.frequency_hz), -k * distance);
}

Scenario with_rx(const Scenario& s, const Vec3& rx) {
    Scenario out = s;
    out.rx_pos = rx;
    return out;
}

} // namespace

void Scenario::validate() const {
    geometry.validate();
    if (!(frequency_hz > 0.0)) throw DomainError("frequency must be positive");
    if (!std::isfinite(source_level.level_db)) throw DomainError("source level must be finite");
    if (!(scatter_scale >= 0.0) || !std::isfinite(scatter_scale))
        throw DomainError("scatter scale must be >= 0");
    if (!(tx_pos.x > 0.0) || !(rx_pos.x > 0.0))
        throw DomainError("transmitter and receiver must be in front of the surface (x > 0)");
    if (!active.empty() && active.size() != geometry.size())
        throw ContractError("active mask has " + std::to_string(active.size()) +
                            " entries, array has " + std::to_string(geometry.size()));
    if (norm(tx_pos - rx_pos) == 0.0) throw DomainError("transmitter and receiver coincide");
}

Complex direct_field(const Scenario& s) {
    s.validate();
    const double k = wavenumber(s.medium, s.frequency_hz);
    return s.source_level.pressure_upa() * propagate(s, k, norm(s.rx_pos - s.tx_pos));
}

std::vector<Complex> element_contributions(const Scenario& s, const PhaseCode& code) {
    s.validate();
    require_match(s.geometry, code);
    const double k = wavenumber(s.medium, s.frequency_hz);
    const double p0 = s.source_level.pressure_upa();
    const double q = s.geometry.pattern_exponent;
    const auto positions = element_positions(s.geometry);

    std::vector<Complex> out(positions.size(), Complex{0.0, 0.0});
    for (std::size_t n = 0; n < positions.size(); ++n) {
        if (!s.is_active(n)) continue;
        const Vec3 to_tx = s.tx_pos - positions[n];
        const Vec3 to_rx = s.rx_pos - positions[n];
        const double r1 = norm(to_tx);
        const double r2 = norm(to_rx);
        const double gains = s.scatter_scale * s.geometry.reflect_efficiency *
                             element_gain_at(q, off_normal_deg(to_tx)) *
                             element_gain_at(q, off_normal_deg(to_rx));
        const Complex incident = p0 * propagate(s, k, r1);
        Complex c = gains * incident * propagate(s, k, r2);
        out[n] = code[n] ? -c : c;
    }
    return out;
}

ReceivedField received_field(const Scenario& s, const PhaseCode& code) {
    ReceivedField f;
    f.direct = direct_field(s);
    f.reflected = Complex{0.0, 0.0};
    for (const Complex& c : element_contributions(s, code)) f.reflected += c;
    f.total = f.direct + f.reflected;
    return f;
}

double calibrate_scatter(const Scenario& s, const PhaseCode& code, double a_plus, double a_minus,
                         bool assume_in_phase) {
    if (!(a_minus >= 0.0) || !(a_plus >= a_minus) || !(a_plus > 0.0))
        throw DomainError("calibration needs a_plus >= a_minus >= 0 and a_plus > 0");
    Scenario unit = s;
    unit.scatter_scale = 1.0;
    const ReceivedField f = received_field(unit, code);
    const double d = std::abs(f.direct);
    const double r = std::abs(f.reflected);
    if (r == 0.0) throw CalibrationError("surface produces no reflected field at the receiver");
    if (a_plus == a_minus) return 0.0;

    // x = |R| / |D| after calibration.
    double x = 0.0;
    if (assume_in_phase) {
        x = (a_plus - a_minus) / (a_plus + a_minus);
    } else {
        // ratio^2 = (1 + x^2 - 2xc) / (1 + x^2 + 2xc) with c = |cos(arg R - arg D)|;
        // smallest positive root of x^2 - 2Bx + 1 = 0.
        const double c = std::abs(std::cos(std::arg(f.reflected) - std::arg(f.direct)));
        const double rho = a_minus / a_plus;
        const double b = c * (1.0 + rho * rho) / (1.0 - rho * rho);
        if (b < 1.0)
            throw CalibrationError("modelled reflection phase cannot reach the measured contrast");
        x = b - std::sqrt(b * b - 1.0);
    }
    return x * d / r;
}

double Envelope::amplitude_difference() const { return std::abs(level_a - level_b); }

double Envelope::level_ratio() const {
    const double hi = std::max(level_a, level_b);
    return hi == 0.0 ? 1.0 : std::min(level_a, level_b) / hi;
}

Envelope toggle_envelope(const Scenario& s, const PhaseCode& code_a, const PhaseCode& code_b,
                         double period_s, double duration_s, double sample_rate_hz) {
    if (!(period_s > 0.0)) throw DomainError("toggle period must be positive");
    if (!(duration_s >= 2.0 * period_s)) throw DomainError("duration must cover two toggle periods");
    if (!(sample_rate_hz * period_s >= 10.0))
        throw DomainError("sample rate must give at least 10 samples per period");

    Envelope env;
    env.sample_rate_hz = sample_rate_hz;
    env.level_a = std::abs(received_field(s, code_a).total);
    env.level_b = std::abs(received_field(s, code_b).total);

    const auto samples = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    const double per_period = period_s * sample_rate_hz;
    env.time_s.resize(samples);
    env.amplitude.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto segment = static_cast<std::size_t>(std::floor(static_cast<double>(i) / per_period + 1e-9));
        env.time_s[i] = static_cast<double>(i) / sample_rate_hz;
        env.amplitude[i] = (segment % 2 == 0) ? env.level_a : env.level_b;
    }
    return env;
}

double snr_gain_db(const Scenario& s, const PhaseCode& code) {
    const ReceivedField f = received_field(s, code);
    return 20.0 * std::log10(std::abs(f.total) / std::abs(f.direct));
}

std::optional<double> snr_db(const Scenario& s, const PhaseCode& code) {
    if (!s.noise_level_db) return std::nullopt;
    return 20.0 * std::log10(std::abs(received_field(s, code).total)) - *s.noise_level_db;
}

double range_extension(const Scenario& s, const PhaseCode& code, double reference_range_m) {
    if (!(reference_range_m >= kReferenceDistance))
        throw DomainError("reference range must be >= 1 m");
    s.validate();
    const Vec3 offset = s.rx_pos - s.tx_pos;
    const Vec3 bearing = (1.0 / norm(offset)) * offset;
    auto rx_at = [&](double r) { return s.tx_pos + r * bearing; };

    Scenario bare = with_rx(s, rx_at(reference_range_m));
    const double target = std::abs(direct_field(bare));

    // Positive when the coded link is still above the direct-only reference.
    auto excess = [&](double r) {
        return std::abs(received_field(with_rx(s, rx_at(r)), code).total) - target;
    };

    const double at_ref = excess(reference_range_m);
    if (at_ref == 0.0) return 0.0;

    double lo = reference_range_m;
    double hi = reference_range_m;
    if (at_ref > 0.0) {
        do {
            lo = hi;
            hi *= 2.0;
            if (hi > kRangeSearchMax) throw OutOfBracketError("range extension beyond 1e6 m");
        } while (excess(hi) > 0.0);
    } else {
        do {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-3) throw OutOfBracketError("no range reaches the reference amplitude");
        } while (excess(lo) < 0.0);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) - reference_range_m;
}

} // namespace uaris
