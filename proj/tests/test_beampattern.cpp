#include "uaris/beampattern.hpp"
#include "uaris/codesynth.hpp"
#include "uaris/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace uaris;

namespace {

constexpr double kF = 27000.0;

PhaseCode random_code(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::bernoulli_distribution coin;
    std::vector<std::uint8_t> bits(rows * cols);
    for (auto& b : bits) b = coin(rng);
    return {rows, cols, bits};
}

Direction random_direction(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> th(0.0, 90.0);
    std::uniform_real_distribution<double> ph(0.0, 360.0);
    return {th(rng), ph(rng)};
}

// Pattern of an ideal (unquantized) linear phase gradient steering toward
// `target` under normal incidence, isotropic elements. Built directly from the
// plane-wave sum, independent of array_factor().
BeamPattern gradient_pattern(const ArrayGeometry& g, const Direction& target, double step) {
    const double k = 2.0 * std::numbers::pi * kF / 1480.0;
    const auto pos = element_positions(g);
    const Vec3 ut = target.unit_vector();
    const std::size_t nt = BeamPattern::theta_count_for(step);
    const std::size_t np = BeamPattern::phi_count_for(step);
    std::vector<Complex> values;
    for (std::size_t it = 0; it < nt; ++it)
        for (std::size_t ip = 0; ip < np; ++ip) {
            const Vec3 uo = Direction{it * step, ip * step}.unit_vector();
            Complex acc;
            for (const Vec3& r : pos) acc += std::polar(1.0, k * (ut.y * r.y + ut.z * r.z) - k * (uo.y * r.y + uo.z * r.z));
            values.push_back(acc);
        }
    return {step, step, values};
}

} // namespace

TEST_CASE("broadside co-phased sum") {
    const ArrayGeometry g{4, 6, 0.05, 0.0, 1.0};
    const Complex af = array_factor(g, PhaseCode::zeros(g), {0, 0}, kF, {0, 0});
    CHECK(af.real() == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(std::abs(af.imag()) < 1e-12);
    CHECK_THROWS_AS(array_factor(g, PhaseCode(6, 4), {0, 0}, kF, {0, 0}), ContractError);
    CHECK_THROWS_AS(array_factor(g, PhaseCode::zeros(g), {0, 0}, -1.0, {0, 0}), DomainError);
}

TEST_CASE("specular direction is co-phased for oblique incidence") {
    const ArrayGeometry g{4, 6, 0.05, 0.0, 1.0};
    const Direction source{35, 60};
    const Direction inc = incident_from_source(source);
    CHECK(inc.phi_deg == doctest::Approx(240.0));
    CHECK(std::abs(array_factor(g, PhaseCode::zeros(g), inc, kF, inc)) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("complement anti-symmetry is exact") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::uniform_real_distribution<double> f(10000.0, 100000.0);
    for (int i = 0; i < 200; ++i) {
        const ArrayGeometry g{dim(rng), dim(rng), 0.05, 1.0, 1.0};
        const PhaseCode c = random_code(rng, g.rows, g.cols);
        const Direction inc = random_direction(rng);
        const Direction obs = random_direction(rng);
        const double fr = f(rng);
        const Complex a = array_factor(g, c, inc, fr, obs);
        const Complex b = array_factor(g, complement(c), inc, fr, obs);
        CHECK(b == -a);
    }
}

TEST_CASE("array factor bounded by co-phased sum") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
        const ArrayGeometry g{4, 6, 0.05, 1.0, 0.8};
        const Direction inc = random_direction(rng);
        const Direction obs = random_direction(rng);
        const double bound = 24 * 0.8 * element_gain(g, inc) * element_gain(g, obs);
        CHECK(std::abs(array_factor(g, random_code(rng, 4, 6), inc, kF, obs)) <= bound * (1 + 1e-12));
    }
}

TEST_CASE("no code beats all-zeros at broadside under normal incidence") {
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 4}, {2, 3}, {3, 4}}) {
        const ArrayGeometry g{rows, cols, 0.05, 0.0, 1.0};
        const std::size_t n = g.size();
        const double zeros = std::abs(array_factor(g, PhaseCode::zeros(g), {0, 0}, kF, {0, 0}));
        CHECK(zeros == doctest::Approx(static_cast<double>(n)));
        for (std::uint32_t v = 0; v < (1U << n); ++v) {
            std::vector<std::uint8_t> bits(n);
            for (std::size_t e = 0; e < n; ++e) bits[e] = (v >> e) & 1U;
            CHECK(std::abs(array_factor(g, PhaseCode(rows, cols, bits), {0, 0}, kF, {0, 0})) <= zeros + 1e-12);
        }
    }
}

TEST_CASE("sweep grid") {
    const ArrayGeometry g{4, 6, 0.05};
    const BeamPattern p = sweep(g, PhaseCode::zeros(g), {0, 0}, kF, 1.0, 1.0);
    CHECK(p.theta_count() == 91);
    CHECK(p.phi_count() == 360);
    CHECK(p.size() == 91 * 360);
    CHECK(p.direction(p.index(90, 359)).theta_deg == 90.0);
    CHECK(p.direction(p.index(90, 359)).phi_deg == 359.0);
    CHECK(BeamPattern::theta_count_for(7.0) == 13);
    CHECK(BeamPattern::phi_count_for(7.0) == 52);
    CHECK_THROWS_AS(sweep(g, PhaseCode::zeros(g), {0, 0}, kF, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(sweep(g, PhaseCode::zeros(g), {0, 0}, kF, 1.0, 10.5), DomainError);
}

TEST_CASE("single isotropic element gives a flat pattern") {
    const ArrayGeometry g{1, 1, 0.05, 0.0, 1.0};
    const BeamPattern p = sweep(g, PhaseCode::zeros(g), {0, 0}, kF, 2.0, 2.0);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.normalized_db(i) == 0.0);
    const LobeReport r = find_lobes(p);
    REQUIRE(r.main_lobes.size() == 1);
    CHECK(r.main_lobes[0].direction.theta_deg == 0.0);
    CHECK(r.main_lobes[0].direction.phi_deg == 0.0);
    CHECK_FALSE(r.grating_lobe_flag);
}

TEST_CASE("uniform code at normal incidence has one broadside lobe") {
    for (double pitch : {0.05, 0.025}) {
        const ArrayGeometry g{4, 6, pitch};
        const BeamPattern p = sweep(g, PhaseCode::zeros(g), {0, 0}, kF, 1.0, 1.0);
        const LobeReport r = find_lobes(p);
        REQUIRE(r.main_lobes.size() == 1);
        CHECK(r.main_lobes[0].direction.theta_deg == 0.0);
        CHECK(r.main_lobes[0].level_db == 0.0);
        CHECK(r.peak_sidelobe_db < -3.0);
        CHECK_FALSE(r.grating_lobe_flag);
    }
}

TEST_CASE("45 degree steering at 5 cm pitch aliases") {
    const ArrayGeometry g{4, 6, 0.05};
    const PhaseCode code = steer_code(g, {{0, 0}, {45, 0}, kF}).code;
    const LobeReport r = find_lobes(sweep(g, code, {0, 0}, kF, 1.0, 1.0));
    CHECK(r.main_lobes.size() >= 2);
    CHECK(r.grating_lobe_flag);
    CHECK(r.peak_sidelobe_db <= 0.0);
}

TEST_CASE("grating lobe of an ideal phase gradient follows the grating equation") {
    const double expected = std::asin(std::sin(std::numbers::pi / 4) - 1480.0 / kF / 0.05) * 180 / std::numbers::pi;
    CHECK(expected == doctest::Approx(-22.904).epsilon(1e-4));

    const LobeReport aliased = find_lobes(gradient_pattern({4, 6, 0.05}, {45, 0}, 1.0));
    REQUIRE(aliased.main_lobes.size() == 2);
    CHECK(aliased.grating_lobe_flag);
    bool found = false;
    for (const Lobe& l : aliased.main_lobes)
        if (angular_separation_deg(l.direction, {-expected, 180.0}) <= 1.0) found = true;
    CHECK(found);

    const LobeReport clean = find_lobes(gradient_pattern({4, 6, 0.025}, {45, 0}, 1.0));
    CHECK(clean.main_lobes.size() == 1);
    CHECK_FALSE(clean.grating_lobe_flag);
}

TEST_CASE("sweep is bit-identical across thread counts") {
    const ArrayGeometry g{4, 6, 0.05};
    const PhaseCode code = steer_code(g, {{10, 30}, {40, 120}, kF}).code;
    const BeamPattern a = sweep(g, code, {10, 30}, kF, 1.0, 1.0, Medium::thorp(), 1);
    for (std::size_t threads : {2, 3, 8}) {
        const BeamPattern b = sweep(g, code, {10, 30}, kF, 1.0, 1.0, Medium::thorp(), threads);
        REQUIRE(a.size() == b.size());
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) same = same && a.values()[i] == b.values()[i];
        CHECK(same);
    }
}

TEST_CASE("find_lobes edge cases") {
    CHECK_THROWS_AS(BeamPattern(1.0, 1.0, {}), ContractError);

    // Two separated equal peaks plus a weaker bump.
    std::vector<Complex> v(BeamPattern::theta_count_for(10) * BeamPattern::phi_count_for(10), 0.1);
    const std::size_t nphi = BeamPattern::phi_count_for(10);
    v[3 * nphi + 0] = 1.0;
    v[3 * nphi + 18] = 1.0;
    v[6 * nphi + 9] = 0.5;
    const LobeReport r = find_lobes(BeamPattern(10, 10, v));
    REQUIRE(r.main_lobes.size() == 2);
    CHECK(r.main_lobes[0].direction.theta_deg == 30.0);
    CHECK(r.main_lobes[1].direction.phi_deg == 180.0);
    CHECK(r.peak_sidelobe_db == doctest::Approx(20 * std::log10(0.5)));
    CHECK(r.grating_lobe_flag);

    // phi wrap: a ridge across phi = 0 / 350 is one maximum
    std::vector<Complex> w(v.size(), 0.1);
    w[4 * nphi + 0] = 1.0;
    w[4 * nphi + nphi - 1] = 1.0;
    const LobeReport wrapped = find_lobes(BeamPattern(10, 10, w));
    REQUIRE(wrapped.main_lobes.size() == 1);
    CHECK(wrapped.main_lobes[0].direction.phi_deg == 0.0);
}
