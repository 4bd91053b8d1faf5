#include "uaris/codesynth.hpp"

#include "uaris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace uaris {

namespace {

constexpr double kPi = std::numbers::pi;

PhaseCode to_code(const ArrayGeometry& g, std::vector<std::uint8_t> bits) {
    return canonical(PhaseCode(g.rows, g.cols, std::move(bits)));
}

} // namespace

double wrap_phase(double phase_rad) {
    double w = std::remainder(phase_rad, 2.0 * kPi); // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

std::vector<double> ideal_steering_phases(const ArrayGeometry& g, const Direction& incident,
                                          const Direction& target, double frequency_hz,
                                          const Medium& medium) {
    const double k = wavenumber(medium, frequency_hz);
    const Vec3 du = target.unit_vector() - incident.unit_vector();
    std::vector<double> phases;
    phases.reserve(g.size());
    for (const Vec3& r : element_positions(g)) phases.push_back(wrap_phase(-k * dot(du, r)));
    return phases;
}

std::vector<std::uint8_t> quantize_one_bit(std::span<const double> phases, double offset_rad) {
    std::vector<std::uint8_t> bits(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n) {
        const double w = wrap_phase(phases[n] + offset_rad);
        bits[n] = (w > -kPi / 2 && w <= kPi / 2) ? 0 : 1;
    }
    return bits;
}

QuantizedSum best_quantization(std::span<const double> phases, std::span<const Complex> terms,
                               std::size_t offset_steps) {
    if (offset_steps < 1) throw DomainError("offset_steps must be >= 1");
    if (phases.size() != terms.size()) throw ContractError("phase/term count mismatch");
    QuantizedSum best;
    bool have = false;
    for (std::size_t i = 0; i < offset_steps; ++i) {
        const double offset = kPi * static_cast<double>(i) / static_cast<double>(offset_steps);
        auto bits = quantize_one_bit(phases, offset);
        if (!bits.empty() && bits[0] == 1)
            for (auto& b : bits) b ^= 1U;
        const double mag = std::abs(coded_sum(terms, bits));
        if (!have || mag > best.magnitude) {
            best = {std::move(bits), mag, offset};
            have = true;
        }
    }
    return best;
}

SynthesisResult steer_code(const ArrayGeometry& g, const SteeringTask& task, const Medium& medium) {
    g.validate();
    task.incident.validate();
    task.target.validate();
    const auto phases =
        ideal_steering_phases(g, task.incident, task.target, task.frequency_hz, medium);
    const auto terms = element_terms(g, task.incident, task.frequency_hz, task.target, medium);
    auto q = best_quantization(phases, terms, task.offset_steps);

    SynthesisResult out;
    out.code = to_code(g, std::move(q.bits));
    out.gain = q.magnitude;
    out.objective = q.magnitude * q.magnitude;
    out.offset_rad = q.offset_rad;
    return out;
}

SynthesisResult brute_force_code(const ArrayGeometry& g, const Direction& incident,
                                 const Direction& target, double frequency_hz,
                                 const Medium& medium, std::size_t threads) {
    g.validate();
    const std::size_t n = g.size();
    if (n > kBruteForceMaxElements)
        throw ContractError("exhaustive search refused for " + std::to_string(n) +
                            " elements (limit " + std::to_string(kBruteForceMaxElements) + ")");
    const auto terms = element_terms(g, incident, frequency_hz, target, medium);

    // Only codes with the most significant bit (element 0) clear are visited;
    // their complements have the same magnitude.
    const std::uint64_t count = std::uint64_t{1} << (n - 1);

    struct Best {
        std::uint64_t value = 0;
        double gain = -1.0;
    };
    auto search = [&](std::uint64_t first, std::uint64_t last) {
        Best best;
        std::vector<std::uint8_t> bits(n);
        for (std::uint64_t v = first; v < last; ++v) {
            for (std::size_t e = 0; e < n; ++e) bits[e] = static_cast<std::uint8_t>((v >> (n - 1 - e)) & 1U);
            const double gain = std::abs(coded_sum(terms, bits));
            if (gain > best.gain) best = {v, gain};
        }
        return best;
    };

    threads = std::clamp<std::uint64_t>(threads, 1, count);
    std::vector<Best> partial(threads);
    if (threads == 1) {
        partial[0] = search(0, count);
    } else {
        std::vector<std::jthread> workers;
        const std::uint64_t chunk = (count + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::uint64_t first = std::min(count, t * chunk);
            const std::uint64_t last = std::min(count, first + chunk);
            workers.emplace_back([&, t, first, last] { partial[t] = search(first, last); });
        }
    }

    // Ordered reduction: chunks are ascending in value, so strict '>' keeps the lowest.
    Best best = partial[0];
    for (std::size_t t = 1; t < partial.size(); ++t)
        if (partial[t].gain > best.gain) best = partial[t];

    std::vector<std::uint8_t> bits(n);
    for (std::size_t e = 0; e < n; ++e) bits[e] = static_cast<std::uint8_t>((best.value >> (n - 1 - e)) & 1U);
    SynthesisResult out;
    out.code = PhaseCode(g.rows, g.cols, std::move(bits));
    out.gain = best.gain;
    out.objective = best.gain * best.gain;
    return out;
}

double suppression_objective(std::span<const Complex> target_terms,
                             std::span<const Complex> eavesdropper_terms,
                             std::span<const std::uint8_t> bits, double weight) {
    return std::norm(coded_sum(target_terms, bits)) -
           weight * std::norm(coded_sum(eavesdropper_terms, bits));
}

SynthesisResult suppress_code(const ArrayGeometry& g, const SuppressionTask& task,
                              const Medium& medium) {
    if (!(task.weight >= 0.0)) throw DomainError("suppression weight must be >= 0");
    task.eavesdropper.validate();
    if (!(angular_separation_deg(task.target, task.eavesdropper) > 0.0))
        throw DomainError("target and eavesdropper directions coincide");

    const SynthesisResult start =
        steer_code(g, {task.incident, task.target, task.frequency_hz}, medium);
    const auto t_terms = element_terms(g, task.incident, task.frequency_hz, task.target, medium);
    const auto e_terms =
        element_terms(g, task.incident, task.frequency_hz, task.eavesdropper, medium);

    std::vector<std::uint8_t> bits(start.code.bits().begin(), start.code.bits().end());
    double j = suppression_objective(t_terms, e_terms, bits, task.weight);
    std::size_t passes = 0;
    while (passes < task.max_passes) {
        ++passes;
        bool improved = false;
        for (std::size_t n = 0; n < bits.size(); ++n) {
            bits[n] ^= 1U;
            const double candidate = suppression_objective(t_terms, e_terms, bits, task.weight);
            if (candidate > j) {
                j = candidate;
                improved = true;
            } else {
                bits[n] ^= 1U;
            }
        }
        if (!improved) break;
    }

    SynthesisResult out;
    out.code = to_code(g, std::move(bits));
    out.gain = std::abs(coded_sum(t_terms, out.code.bits()));
    out.objective = j;
    out.offset_rad = start.offset_rad;
    out.passes = passes;
    return out;
}

} // namespace uaris
