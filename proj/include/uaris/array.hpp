#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uaris {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Direction in the array frame. The surface lies in the Y-Z plane with its
/// normal (boresight) along +X.
///   theta: polar angle off +X, degrees in [0, 90]
///   phi:   azimuth in the Y-Z plane from +Y toward +Z, degrees in [0, 360)
struct Direction {
    double theta_deg = 0.0;
    double phi_deg = 0.0;

    /// Throws DomainError when outside the front hemisphere ranges above.
    void validate() const;
    /// (cos t, sin t cos p, sin t sin p)
    Vec3 unit_vector() const;
    /// Wraps phi into [0, 360).
    static Direction normalized(double theta_deg, double phi_deg);
    /// Direction of an arbitrary front-side vector (v.x >= 0).
    static Direction of(const Vec3& v);
};

/// Angle between two directions, degrees.
double angular_separation_deg(const Direction& a, const Direction& b);

/// Planar grid of reflection units. Rows run along Z, columns along Y.
struct ArrayGeometry {
    std::size_t rows = 4;
    std::size_t cols = 6;
    double pitch_m = 0.05;
    double pattern_exponent = 1.0;   // front-hemisphere cos^q element directivity
    double reflect_efficiency = 1.0; // in (0, 1]

    std::size_t size() const { return rows * cols; }
    void validate() const;
};

/// 1-bit reflection phase per unit: bit 0 is 0 deg (open-circuit load),
/// bit 1 is 180 deg (short-circuit load). Row-major storage.
class PhaseCode {
public:
    PhaseCode() = default;
    PhaseCode(std::size_t rows, std::size_t cols, std::uint8_t fill = 0);
    /// Throws DomainError on wrong length or a value other than 0/1.
    PhaseCode(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits);

    static PhaseCode zeros(const ArrayGeometry& g) { return {g.rows, g.cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return bits_.size(); }

    std::uint8_t operator()(std::size_t row, std::size_t col) const { return bits_[row * cols_ + col]; }
    std::uint8_t operator[](std::size_t n) const { return bits_[n]; }
    void set(std::size_t n, std::uint8_t bit);
    void flip(std::size_t n) { bits_[n] ^= 1U; }

    std::span<const std::uint8_t> bits() const { return bits_; }

    bool matches(const ArrayGeometry& g) const { return rows_ == g.rows && cols_ == g.cols; }

    friend bool operator==(const PhaseCode&, const PhaseCode&) = default;
    /// Lexicographic on the row-major bit sequence.
    friend bool operator<(const PhaseCode& a, const PhaseCode& b) { return a.bits_ < b.bits_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

PhaseCode complement(const PhaseCode& code);

/// Complement-pair representative with bit(0,0) == 0. Magnitude objectives
/// cannot tell the two members of a pair apart.
PhaseCode canonical(const PhaseCode& code);

/// Throws ContractError if code and geometry dimensions differ.
void require_match(const ArrayGeometry& g, const PhaseCode& code);

/// Unit centres in row-major order, centroid at the origin, x = 0.
std::vector<Vec3> element_positions(const ArrayGeometry& g);

/// cos^q(theta) on the front hemisphere, 0 behind the surface.
double element_gain(const ArrayGeometry& g, const Direction& d);
/// Same law for an arbitrary angle off the normal (degrees, may exceed 90).
double element_gain_at(double pattern_exponent, double theta_deg);

} // namespace uaris
