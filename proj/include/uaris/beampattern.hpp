#pragma once

#include "uaris/acoustics.hpp"
#include "uaris/array.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uaris {

using Complex = std::complex<double>;

// Phase convention, shared by every module:
//
//   AF = sum_n rho * E(theta_inc) * E(theta_obs) * exp(j*pi*b_n)
//              * exp(j*k*(u_inc - u_obs) . r_n)
//
// u_obs points from the surface toward the observer. The incident plane wave
// is described by a front-hemisphere Direction whose lateral (Y-Z) components
// are those of the propagation vector, so u_inc = incident.unit_vector(). The
// specular reflection of incident (theta, phi) therefore leaves toward the same
// (theta, phi); the source itself sits at (theta, phi + 180).

/// Incident-wave direction for a source seen from the surface at `source`.
Direction incident_from_source(const Direction& source);

/// Per-element complex terms of the array factor with every bit at 0, in
/// row-major order. Coded sums over these reproduce array_factor() exactly.
std::vector<Complex> element_terms(const ArrayGeometry& g, const Direction& incident,
                                   double frequency_hz, const Direction& observation,
                                   const Medium& medium = Medium::thorp());

/// Sequential row-major sum of terms with a sign flip where the bit is 1.
Complex coded_sum(std::span<const Complex> terms, std::span<const std::uint8_t> bits);

Complex array_factor(const ArrayGeometry& g, const PhaseCode& code, const Direction& incident,
                     double frequency_hz, const Direction& observation,
                     const Medium& medium = Medium::thorp());

/// Far-field pattern sampled on theta in [0, 90], phi in [0, 360), theta-major.
class BeamPattern {
public:
    /// Grid dimensions for the given steps; steps must lie in (0, 10] deg.
    static std::size_t theta_count_for(double theta_step_deg);
    static std::size_t phi_count_for(double phi_step_deg);

    /// `values` in theta-major order, size theta_count * phi_count.
    BeamPattern(double theta_step_deg, double phi_step_deg, std::vector<Complex> values);

    double theta_step() const { return theta_step_; }
    double phi_step() const { return phi_step_; }
    std::size_t theta_count() const { return n_theta_; }
    std::size_t phi_count() const { return n_phi_; }
    std::size_t size() const { return values_.size(); }

    std::size_t index(std::size_t it, std::size_t ip) const { return it * n_phi_ + ip; }
    Direction direction(std::size_t idx) const;

    std::span<const Complex> values() const { return values_; }

    double peak() const { return peak_; }
    /// 20 log10(|AF| / peak), floored at kPatternFloorDb; 0 everywhere when
    /// the pattern is identically zero.
    double normalized_db(std::size_t idx) const;

private:
    double theta_step_;
    double phi_step_;
    std::size_t n_theta_;
    std::size_t n_phi_;
    std::vector<Complex> values_;
    double peak_ = 0.0;
};

inline constexpr double kPatternFloorDb = -80.0;
inline constexpr double kMainLobeThresholdDb = -3.0;

/// Samples the array factor. Each grid point is computed independently, so
/// the result is bit-identical for any `threads` value.
BeamPattern sweep(const ArrayGeometry& g, const PhaseCode& code, const Direction& incident,
                  double frequency_hz, double theta_step_deg, double phi_step_deg,
                  const Medium& medium = Medium::thorp(), std::size_t threads = 1);

struct Lobe {
    Direction direction;
    double level_db; // relative to the global maximum
};

struct LobeReport {
    std::vector<Lobe> main_lobes;
    double peak_sidelobe_db = kPatternFloorDb;
    bool grating_lobe_flag = false;
};

/// Local maxima over the 8-neighbourhood of the grid (phi wraps, the theta = 0
/// row is a single pole point). Plateaus count once, at their first grid
/// point in theta-major order. Maxima within 3 dB of the global peak are main
/// lobes; the highest of the rest is the peak sidelobe (kPatternFloorDb when
/// there is none).
LobeReport find_lobes(const BeamPattern& pattern);

} // namespace uaris
