#pragma once

#include "uaris/acoustics.hpp"
#include "uaris/array.hpp"
#include "uaris/beampattern.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uaris {

struct SteeringTask {
    Direction incident;
    Direction target;
    double frequency_hz = 27000.0;
    std::size_t offset_steps = 64;
};

struct SuppressionTask {
    Direction incident;
    Direction target;
    Direction eavesdropper;
    double frequency_hz = 27000.0;
    double weight = 1.0; // mu >= 0, penalty on eavesdropper power
    std::size_t max_passes = 100;
};

struct SynthesisResult {
    PhaseCode code;         // canonical: bit(0,0) == 0
    double gain = 0.0;      // |AF(target)|
    double objective = 0.0; // |AF(t)|^2 - mu |AF(e)|^2 for suppression, gain^2 otherwise
    double offset_rad = 0.0;
    std::size_t passes = 0;
};

inline constexpr std::size_t kBruteForceMaxElements = 20;

/// psi_n = -k (u_target - u_inc) . r_n wrapped to (-pi, pi]: the phase of element n's
/// term toward `target`, so weights exp(-j psi_n) co-phase the array.
std::vector<double> ideal_steering_phases(const ArrayGeometry& g, const Direction& incident,
                                          const Direction& target, double frequency_hz,
                                          const Medium& medium = Medium::thorp());

/// Wrap to (-pi, pi].
double wrap_phase(double phase_rad);

/// Bit 0 where wrap(phase + offset) lies in (-pi/2, pi/2], bit 1 elsewhere.
std::vector<std::uint8_t> quantize_one_bit(std::span<const double> phases, double offset_rad);

struct QuantizedSum {
    std::vector<std::uint8_t> bits;
    double magnitude = 0.0;
    double offset_rad = 0.0;
};

/// Scans offsets c = i*pi/offset_steps, quantizes `phases` at each, and keeps
/// the bits maximizing |coded_sum(terms, bits)|. Earliest offset wins ties.
QuantizedSum best_quantization(std::span<const double> phases, std::span<const Complex> terms,
                               std::size_t offset_steps);

SynthesisResult steer_code(const ArrayGeometry& g, const SteeringTask& task,
                           const Medium& medium = Medium::thorp());

/// Exhaustive argmax of |AF(target)| over all codes. Ties resolve to the
/// lowest binary value with element 0 as the most significant bit, which is
/// always the bit(0,0) == 0 member of a complement pair. Throws ContractError
/// when the array has more than kBruteForceMaxElements units.
SynthesisResult brute_force_code(const ArrayGeometry& g, const Direction& incident,
                                 const Direction& target, double frequency_hz,
                                 const Medium& medium = Medium::thorp(), std::size_t threads = 1);

/// First-improvement single-bit-flip ascent on
///   J = |AF(target)|^2 - mu * |AF(eavesdropper)|^2
/// starting from steer_code(target), row-major flip order.
SynthesisResult suppress_code(const ArrayGeometry& g, const SuppressionTask& task,
                              const Medium& medium = Medium::thorp());

double suppression_objective(std::span<const Complex> target_terms,
                             std::span<const Complex> eavesdropper_terms,
                             std::span<const std::uint8_t> bits, double weight);

} // namespace uaris
