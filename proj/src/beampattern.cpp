#include "uaris/beampattern.hpp"

#include "uaris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace uaris {

namespace {

void require_step(double step_deg) {
    if (!(step_deg > 0.0 && step_deg <= 10.0))
        throw DomainError("grid step must lie in (0, 10] deg, got " + std::to_string(step_deg));
}

} // namespace

Direction incident_from_source(const Direction& source) {
    return Direction::normalized(source.theta_deg, source.phi_deg + 180.0);
}

std::vector<Complex> element_terms(const ArrayGeometry& g, const Direction& incident,
                                   double frequency_hz, const Direction& observation,
                                   const Medium& medium) {
    g.validate();
    const double k = wavenumber(medium, frequency_hz);
    const double amplitude =
        g.reflect_efficiency * element_gain(g, incident) * element_gain(g, observation);
    const Vec3 du = incident.unit_vector() - observation.unit_vector();

    std::vector<Complex> terms;
    terms.reserve(g.size());
    for (const Vec3& r : element_positions(g)) terms.push_back(std::polar(amplitude, k * dot(du, r)));
    return terms;
}

Complex coded_sum(std::span<const Complex> terms, std::span<const std::uint8_t> bits) {
    if (terms.size() != bits.size()) throw ContractError("term/bit count mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < terms.size(); ++n) acc += bits[n] ? -terms[n] : terms[n];
    return acc;
}

Complex array_factor(const ArrayGeometry& g, const PhaseCode& code, const Direction& incident,
                     double frequency_hz, const Direction& observation, const Medium& medium) {
    require_match(g, code);
    return coded_sum(element_terms(g, incident, frequency_hz, observation, medium), code.bits());
}

std::size_t BeamPattern::theta_count_for(double theta_step_deg) {
    require_step(theta_step_deg);
    return static_cast<std::size_t>(std::floor(90.0 / theta_step_deg + 1e-9)) + 1;
}

std::size_t BeamPattern::phi_count_for(double phi_step_deg) {
    require_step(phi_step_deg);
    return static_cast<std::size_t>(std::ceil(360.0 / phi_step_deg - 1e-9));
}

BeamPattern::BeamPattern(double theta_step_deg, double phi_step_deg, std::vector<Complex> values)
    : theta_step_(theta_step_deg),
      phi_step_(phi_step_deg),
      n_theta_(theta_count_for(theta_step_deg)),
      n_phi_(phi_count_for(phi_step_deg)),
      values_(std::move(values)) {
    if (values_.size() != n_theta_ * n_phi_)
        throw ContractError("pattern has " + std::to_string(values_.size()) + " samples, grid needs " +
                            std::to_string(n_theta_ * n_phi_));
    for (const Complex& v : values_) peak_ = std::max(peak_, std::abs(v));
}

Direction BeamPattern::direction(std::size_t idx) const {
    const std::size_t it = idx / n_phi_;
    const std::size_t ip = idx % n_phi_;
    return {static_cast<double>(it) * theta_step_, static_cast<double>(ip) * phi_step_};
}

double BeamPattern::normalized_db(std::size_t idx) const {
    if (peak_ == 0.0) return 0.0;
    const double mag = std::abs(values_[idx]);
    if (mag == 0.0) return kPatternFloorDb;
    return std::max(kPatternFloorDb, 20.0 * std::log10(mag / peak_));
}

BeamPattern sweep(const ArrayGeometry& g, const PhaseCode& code, const Direction& incident,
                  double frequency_hz, double theta_step_deg, double phi_step_deg,
                  const Medium& medium, std::size_t threads) {
    require_match(g, code);
    incident.validate();
    const std::size_t n_theta = BeamPattern::theta_count_for(theta_step_deg);
    const std::size_t n_phi = BeamPattern::phi_count_for(phi_step_deg);
    std::vector<Complex> values(n_theta * n_phi);

    auto fill_rows = [&](std::size_t first, std::size_t last) {
        for (std::size_t it = first; it < last; ++it)
            for (std::size_t ip = 0; ip < n_phi; ++ip) {
                const Direction obs{static_cast<double>(it) * theta_step_deg,
                                    static_cast<double>(ip) * phi_step_deg};
                values[it * n_phi + ip] = array_factor(g, code, incident, frequency_hz, obs, medium);
            }
    };

    threads = std::clamp<std::size_t>(threads, 1, n_theta);
    if (threads == 1) {
        fill_rows(0, n_theta);
    } else {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (n_theta + threads - 1) / threads;
        for (std::size_t first = 0; first < n_theta; first += chunk)
            workers.emplace_back(fill_rows, first, std::min(n_theta, first + chunk));
    }
    return BeamPattern(theta_step_deg, phi_step_deg, std::move(values));
}

namespace {

// Grid adjacency with phi wrap-around. Every sample of the theta = 0 row is
// the same physical direction; it is represented by index 0 alone.
class GridGraph {
public:
    explicit GridGraph(const BeamPattern& p) : n_theta_(p.theta_count()), n_phi_(p.phi_count()) {}

    bool is_node(std::size_t idx) const { return idx >= n_phi_ || idx == 0; }

    template <typename Fn>
    void for_each_neighbour(std::size_t idx, Fn&& fn) const {
        if (idx == 0) {
            if (n_theta_ > 1)
                for (std::size_t ip = 0; ip < n_phi_; ++ip) fn(n_phi_ + ip);
            return;
        }
        const std::size_t it = idx / n_phi_;
        const std::size_t ip = idx % n_phi_;
        bool pole_seen = false;
        for (int dt = -1; dt <= 1; ++dt) {
            const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(it) + dt;
            if (t < 0 || t >= static_cast<std::ptrdiff_t>(n_theta_)) continue;
            if (t == 0) {
                if (!pole_seen) fn(0);
                pole_seen = true;
                continue;
            }
            for (int dp = -1; dp <= 1; ++dp) {
                if (dt == 0 && dp == 0) continue;
                const std::size_t p = (ip + n_phi_ - 1 + static_cast<std::size_t>(dp + 1)) % n_phi_;
                fn(static_cast<std::size_t>(t) * n_phi_ + p);
            }
        }
    }

private:
    std::size_t n_theta_;
    std::size_t n_phi_;
};

} // namespace

LobeReport find_lobes(const BeamPattern& pattern) {
    if (pattern.size() == 0) throw DomainError("empty beam pattern");
    const GridGraph graph(pattern);
    const auto values = pattern.values();
    const std::size_t n = values.size();

    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(values[i]);

    std::vector<char> candidate(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!graph.is_node(i)) continue;
        bool is_max = true;
        graph.for_each_neighbour(i, [&](std::size_t j) {
            if (mag[j] > mag[i]) is_max = false;
        });
        candidate[i] = is_max ? 1 : 0;
    }

    // Merge plateaus: connected candidates of equal magnitude form one maximum,
    // reported at the smallest index of the component.
    std::vector<char> visited(n, 0);
    std::vector<std::size_t> maxima;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (!candidate[i] || visited[i]) continue;
        maxima.push_back(i);
        visited[i] = 1;
        stack.assign(1, i);
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            graph.for_each_neighbour(cur, [&](std::size_t j) {
                if (candidate[j] && !visited[j] && mag[j] == mag[cur]) {
                    visited[j] = 1;
                    stack.push_back(j);
                }
            });
        }
    }

    LobeReport report;
    for (std::size_t idx : maxima) {
        const double db = pattern.normalized_db(idx);
        if (db >= kMainLobeThresholdDb)
            report.main_lobes.push_back({pattern.direction(idx), db});
        else
            report.peak_sidelobe_db = std::max(report.peak_sidelobe_db, db);
    }
    report.grating_lobe_flag = report.main_lobes.size() > 1;
    return report;
}

} // namespace uaris
