#pragma once

#include <utility>
#include <vector>

namespace uaris {

inline constexpr double kDefaultSoundSpeed = 1480.0; // m/s, fresh/shallow water
inline constexpr double kReferenceDistance = 1.0;    // m, "re 1 uPa @ 1 m"

enum class AbsorptionModel { thorp, none, custom_table };

/// Point of a user supplied absorption curve.
struct AbsorptionPoint {
    double frequency_hz;
    double db_per_km;
};

/// Propagation medium. Construct through the factory functions so that the
/// invariants (positive sound speed, well-formed table) are checked once.
class Medium {
public:
    Medium() = default;

    static Medium thorp(double sound_speed = kDefaultSoundSpeed);
    static Medium lossless(double sound_speed = kDefaultSoundSpeed);
    /// Table must be strictly increasing in frequency with non-negative
    /// attenuation. Values are linearly interpolated in frequency and held
    /// constant beyond the table ends.
    static Medium tabulated(std::vector<AbsorptionPoint> table,
                            double sound_speed = kDefaultSoundSpeed);

    double sound_speed() const { return sound_speed_; }
    AbsorptionModel absorption_model() const { return model_; }
    const std::vector<AbsorptionPoint>& table() const { return table_; }

    double absorption_db_per_km(double frequency_hz) const;

private:
    Medium(double c, AbsorptionModel m, std::vector<AbsorptionPoint> t);

    double sound_speed_ = kDefaultSoundSpeed;
    AbsorptionModel model_ = AbsorptionModel::thorp;
    std::vector<AbsorptionPoint> table_;
};

/// Source level in dB re 1 uPa at 1 m.
struct SourceLevel {
    double level_db = 0.0;

    /// Pressure amplitude at the 1 m reference, in uPa.
    double pressure_upa() const;
};

double wavelength(const Medium& medium, double frequency_hz);
double wavenumber(const Medium& medium, double frequency_hz);

/// Thorp's empirical absorption for sea water, dB/km. Reliable roughly
/// between 100 Hz and 100 kHz.
double thorp_absorption_db_per_km(double frequency_hz);

/// Spherical spreading plus absorption, referenced to 1 m.
double transmission_loss(const Medium& medium, double distance_m, double frequency_hz);

/// Linear pressure factor 10^(-TL/20) along a path. Unlike
/// transmission_loss() this also accepts paths shorter than the reference
/// distance by continuing the 1/r law, which the link model needs for
/// sources placed inside a metre of the surface.
double path_amplitude(const Medium& medium, double distance_m, double frequency_hz);

inline constexpr double kRangeSearchMin = 1.0;
inline constexpr double kRangeSearchMax = 1.0e6;

/// Distance at which transmission_loss() reaches target_tl_db. Bisection on
/// [1 m, 1e6 m]; throws OutOfBracketError when the target is beyond 1e6 m.
double solve_range(const Medium& medium, double frequency_hz, double target_tl_db);

} // namespace uaris
