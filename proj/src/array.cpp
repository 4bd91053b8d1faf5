#include "uaris/array.hpp"

#include "uaris/errors.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace uaris {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

} // namespace

void Direction::validate() const {
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0))
        throw DomainError("theta must lie in [0, 90] deg, got " + std::to_string(theta_deg));
    if (!(phi_deg >= 0.0 && phi_deg < 360.0))
        throw DomainError("phi must lie in [0, 360) deg, got " + std::to_string(phi_deg));
}

Vec3 Direction::unit_vector() const {
    const double t = theta_deg * kDegToRad;
    const double p = phi_deg * kDegToRad;
    return {std::cos(t), std::sin(t) * std::cos(p), std::sin(t) * std::sin(p)};
}

Direction Direction::normalized(double theta_deg, double phi_deg) {
    double p = std::fmod(phi_deg, 360.0);
    if (p < 0.0) p += 360.0;
    if (p >= 360.0) p = 0.0;
    return {theta_deg, p};
}

Direction Direction::of(const Vec3& v) {
    const double r = norm(v);
    if (!(r > 0.0)) throw DomainError("direction of a zero vector");
    const double lateral = std::hypot(v.y, v.z);
    const double theta = std::atan2(lateral, v.x) / kDegToRad;
    const double phi = lateral > 0.0 ? std::atan2(v.z, v.y) / kDegToRad : 0.0;
    return normalized(theta, phi);
}

double angular_separation_deg(const Direction& a, const Direction& b) {
    const Vec3 u = a.unit_vector();
    const Vec3 v = b.unit_vector();
    const Vec3 x{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    return std::atan2(norm(x), dot(u, v)) / kDegToRad;
}

void ArrayGeometry::validate() const {
    if (rows < 1 || cols < 1) throw DomainError("array needs at least one row and one column");
    if (!(pitch_m > 0.0) || !std::isfinite(pitch_m)) throw DomainError("pitch must be positive");
    if (!(pattern_exponent >= 0.0) || !std::isfinite(pattern_exponent))
        throw DomainError("element pattern exponent must be >= 0");
    if (!(reflect_efficiency > 0.0 && reflect_efficiency <= 1.0))
        throw DomainError("reflection efficiency must lie in (0, 1]");
}

PhaseCode::PhaseCode(std::size_t rows, std::size_t cols, std::uint8_t fill)
    : rows_(rows), cols_(cols), bits_(rows * cols, fill) {
    if (fill > 1) throw DomainError("phase bits must be 0 or 1");
}

PhaseCode::PhaseCode(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
    if (bits_.size() != rows_ * cols_)
        throw DomainError("phase code has " + std::to_string(bits_.size()) + " bits, expected " +
                          std::to_string(rows_ * cols_));
    if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; }))
        throw DomainError("phase bits must be 0 or 1");
}

void PhaseCode::set(std::size_t n, std::uint8_t bit) {
    if (bit > 1) throw DomainError("phase bits must be 0 or 1");
    bits_.at(n) = bit;
}

PhaseCode complement(const PhaseCode& code) {
    PhaseCode out = code;
    for (std::size_t n = 0; n < out.size(); ++n) out.flip(n);
    return out;
}

PhaseCode canonical(const PhaseCode& code) {
    if (code.size() > 0 && code[0] == 1) return complement(code);
    return code;
}

void require_match(const ArrayGeometry& g, const PhaseCode& code) {
    if (!code.matches(g))
        throw ContractError("phase code is " + std::to_string(code.rows()) + "x" +
                            std::to_string(code.cols()) + " but the array is " +
                            std::to_string(g.rows) + "x" + std::to_string(g.cols));
}

std::vector<Vec3> element_positions(const ArrayGeometry& g) {
    std::vector<Vec3> out;
    out.reserve(g.size());
    const double row_mid = 0.5 * static_cast<double>(g.rows - 1);
    const double col_mid = 0.5 * static_cast<double>(g.cols - 1);
    for (std::size_t m = 0; m < g.rows; ++m)
        for (std::size_t n = 0; n < g.cols; ++n)
            out.push_back({0.0, (static_cast<double>(n) - col_mid) * g.pitch_m,
                           (static_cast<double>(m) - row_mid) * g.pitch_m});
    return out;
}

double element_gain_at(double pattern_exponent, double theta_deg) {
    if (theta_deg >= 90.0) {
        // Grazing: cos^0 stays 1 on the hemisphere boundary, anything past it is rear.
        return (theta_deg == 90.0 && pattern_exponent == 0.0) ? 1.0 : 0.0;
    }
    const double c = std::cos(theta_deg * kDegToRad);
    if (pattern_exponent == 0.0) return 1.0;
    if (pattern_exponent == 1.0) return c;
    return std::pow(c, pattern_exponent);
}

double element_gain(const ArrayGeometry& g, const Direction& d) {
    return element_gain_at(g.pattern_exponent, d.theta_deg);
}

} // namespace uaris
