#pragma once

#include "uaris/acoustics.hpp"
#include "uaris/array.hpp"
#include "uaris/beampattern.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace uaris {

/// Narrowband link: one transmitter, one receiver, one coded surface in the
/// x = 0 plane. Positions are in the surface frame, metres.
struct Scenario {
    Medium medium = Medium::thorp();
    double frequency_hz = 27000.0;
    Vec3 tx_pos{1.0, 0.0, 0.0};
    Vec3 rx_pos{2.0, 0.0, 0.0};
    ArrayGeometry geometry;
    SourceLevel source_level{180.0};
    double scatter_scale = 0.0; // re-radiated pressure at 1 m per unit incident pressure
    std::optional<double> noise_level_db;
    /// Per-unit participation mask (row-major, 1 = toggled unit). Empty means
    /// every unit takes part; masked-out units contribute nothing.
    std::vector<std::uint8_t> active;

    bool is_active(std::size_t n) const { return active.empty() || active[n] != 0; }
    void validate() const;
};

/// Complex pressures in uPa.
struct ReceivedField {
    Complex direct;
    Complex reflected;
    Complex total;
};

Complex direct_field(const Scenario& s);

/// Reflected contribution of every unit in row-major order (0 for inactive units).
std::vector<Complex> element_contributions(const Scenario& s, const PhaseCode& code);

ReceivedField received_field(const Scenario& s, const PhaseCode& code);

/// Fits scatter_scale so that toggling `code` against its complement gives the
/// measured envelope pair (a_plus, a_minus) relative to the modelled direct
/// wave. With assume_in_phase the reflected wave is taken to be aligned with
/// the direct one, |R|/|D| = (a+ - a-)/(a+ + a-); otherwise the modelled phase
/// between R and D is used and the envelope ratio a-/a+ is matched exactly.
/// Throws CalibrationError when the model cannot produce the pair.
double calibrate_scatter(const Scenario& s, const PhaseCode& code, double a_plus, double a_minus,
                         bool assume_in_phase = true);

struct Envelope {
    double sample_rate_hz = 0.0;
    std::vector<double> time_s;
    std::vector<double> amplitude;
    double level_a = 0.0; // |total(code_a)|
    double level_b = 0.0;

    double amplitude_difference() const;
    /// min/max of the two levels, 1 when both vanish.
    double level_ratio() const;
};

/// Piecewise-constant envelope alternating code_a and code_b every `period_s`,
/// starting with code_a at t = 0. No switching transient is modelled.
Envelope toggle_envelope(const Scenario& s, const PhaseCode& code_a, const PhaseCode& code_b,
                         double period_s, double duration_s, double sample_rate_hz);

/// 20 log10(|total| / |direct|).
double snr_gain_db(const Scenario& s, const PhaseCode& code);

/// Absolute SNR against the scenario noise level; nullopt without one.
std::optional<double> snr_db(const Scenario& s, const PhaseCode& code);

/// Distance gained by the surface: rx is moved along the tx->rx bearing until
/// |total| drops to the direct-only amplitude at reference_range. Returns
/// r - reference_range (negative when the code hurts the link).
double range_extension(const Scenario& s, const PhaseCode& code, double reference_range_m);

} // namespace uaris
