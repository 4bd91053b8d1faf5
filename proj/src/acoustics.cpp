#include "uaris/acoustics.hpp"

#include "uaris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace uaris {

namespace {

void require_positive_frequency(double frequency_hz) {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw DomainError("frequency must be positive, got " + std::to_string(frequency_hz));
}

double interpolate(const std::vector<AbsorptionPoint>& table, double f) {
    if (f <= table.front().frequency_hz) return table.front().db_per_km;
    if (f >= table.back().frequency_hz) return table.back().db_per_km;
    auto hi = std::upper_bound(table.begin(), table.end(), f,
                               [](double x, const AbsorptionPoint& p) { return x < p.frequency_hz; });
    auto lo = hi - 1;
    double t = (f - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
    return lo->db_per_km + t * (hi->db_per_km - lo->db_per_km);
}

} // namespace

Medium::Medium(double c, AbsorptionModel m, std::vector<AbsorptionPoint> t)
    : sound_speed_(c), model_(m), table_(std::move(t)) {
    if (!(sound_speed_ > 0.0) || !std::isfinite(sound_speed_))
        throw DomainError("sound speed must be positive");
}

Medium Medium::thorp(double sound_speed) { return {sound_speed, AbsorptionModel::thorp, {}}; }

Medium Medium::lossless(double sound_speed) { return {sound_speed, AbsorptionModel::none, {}}; }

Medium Medium::tabulated(std::vector<AbsorptionPoint> table, double sound_speed) {
    if (table.empty()) throw DomainError("absorption table is empty");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].db_per_km >= 0.0) || !std::isfinite(table[i].db_per_km))
            throw DomainError("absorption table entries must be non-negative");
        if (i > 0 && !(table[i].frequency_hz > table[i - 1].frequency_hz))
            throw DomainError("absorption table must be strictly increasing in frequency");
    }
    return {sound_speed, AbsorptionModel::custom_table, std::move(table)};
}

double Medium::absorption_db_per_km(double frequency_hz) const {
    require_positive_frequency(frequency_hz);
    switch (model_) {
    case AbsorptionModel::none: return 0.0;
    case AbsorptionModel::thorp: return thorp_absorption_db_per_km(frequency_hz);
    case AbsorptionModel::custom_table: return interpolate(table_, frequency_hz);
    }
    return 0.0;
}

double SourceLevel::pressure_upa() const { return std::pow(10.0, level_db / 20.0); }

double wavelength(const Medium& medium, double frequency_hz) {
    require_positive_frequency(frequency_hz);
    return medium.sound_speed() / frequency_hz;
}

double wavenumber(const Medium& medium, double frequency_hz) {
    require_positive_frequency(frequency_hz);
    return 2.0 * std::numbers::pi * frequency_hz / medium.sound_speed();
}

double thorp_absorption_db_per_km(double frequency_hz) {
    require_positive_frequency(frequency_hz);
    const double f2 = (frequency_hz / 1000.0) * (frequency_hz / 1000.0);
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double transmission_loss(const Medium& medium, double distance_m, double frequency_hz) {
    if (!(distance_m >= kReferenceDistance))
        throw DomainError("distance below the 1 m reference: " + std::to_string(distance_m));
    return 20.0 * std::log10(distance_m / kReferenceDistance) +
           medium.absorption_db_per_km(frequency_hz) * distance_m / 1000.0;
}

double path_amplitude(const Medium& medium, double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0)) throw DomainError("path length must be positive");
    const double absorption_db = medium.absorption_db_per_km(frequency_hz) * distance_m / 1000.0;
    return (kReferenceDistance / distance_m) * std::pow(10.0, -absorption_db / 20.0);
}

double solve_range(const Medium& medium, double frequency_hz, double target_tl_db) {
    if (!(target_tl_db >= 0.0)) throw DomainError("target transmission loss must be >= 0 dB");
    double lo = kRangeSearchMin;
    double hi = kRangeSearchMax;
    if (target_tl_db > transmission_loss(medium, hi, frequency_hz))
        throw OutOfBracketError("target transmission loss exceeds TL at 1e6 m");
    if (target_tl_db == 0.0) return lo;
    // TL is strictly increasing, so plain bisection converges to the unique root.
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (transmission_loss(medium, mid, frequency_hz) < target_tl_db)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace uaris
