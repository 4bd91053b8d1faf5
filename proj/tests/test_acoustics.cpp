#include "uaris/acoustics.hpp"
#include "uaris/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace uaris;

namespace {

// Independent evaluation of Thorp's law, f in kHz. Values frozen from a
// separate Python evaluation of the same polynomial.
double thorp_oracle(double f_khz) {
    const double f2 = std::pow(f_khz, 2);
    return 0.003 + 2.75e-4 * f2 + 44.0 * f2 / (4100.0 + f2) + 0.11 * f2 / (1.0 + f2);
}

} // namespace

TEST_CASE("wavelength") {
    const Medium water = Medium::thorp();
    CHECK(wavelength(water, 27000.0) == doctest::Approx(0.054815).epsilon(1e-5));
    CHECK(wavelength(water, 27000.0) / 2 == doctest::Approx(0.027407).epsilon(1e-5));
    CHECK(wavelength(water, 1480.0) == 1.0);
    CHECK(wavelength(Medium::thorp(1500.0), 27000.0) == doctest::Approx(0.055556).epsilon(1e-5));
    CHECK_THROWS_AS(wavelength(water, 0.0), DomainError);
    CHECK_THROWS_AS(wavelength(water, -5.0), DomainError);
}

TEST_CASE("wavelength times frequency recovers sound speed") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> f(1.0, 1e6);
    const Medium water = Medium::thorp();
    for (int i = 0; i < 1000; ++i) {
        const double fr = f(rng);
        CHECK(wavelength(water, fr) * fr == doctest::Approx(1480.0).epsilon(1e-14));
    }
}

TEST_CASE("medium invariants") {
    CHECK_THROWS_AS(Medium::thorp(0.0), DomainError);
    CHECK_THROWS_AS(Medium::lossless(-1.0), DomainError);
    CHECK_THROWS_AS(Medium::tabulated({}), DomainError);
    CHECK_THROWS_AS(Medium::tabulated({{1000, 1.0}, {1000, 2.0}}), DomainError);
    CHECK_THROWS_AS(Medium::tabulated({{1000, 1.0}, {2000, -0.1}}), DomainError);

    const Medium table = Medium::tabulated({{10000, 1.0}, {30000, 5.0}});
    CHECK(table.absorption_db_per_km(20000) == doctest::Approx(3.0));
    CHECK(table.absorption_db_per_km(5000) == 1.0);
    CHECK(table.absorption_db_per_km(50000) == 5.0);
}

TEST_CASE("thorp absorption") {
    CHECK(thorp_absorption_db_per_km(27000.0) == doctest::Approx(6.955693335569633).epsilon(1e-12));
    CHECK(thorp_absorption_db_per_km(27000.0) == doctest::Approx(thorp_oracle(27.0)).epsilon(1e-12));
    CHECK(thorp_absorption_db_per_km(10000.0) == doctest::Approx(1.1870299387081567).epsilon(1e-12));
    CHECK(Medium::lossless().absorption_db_per_km(27000.0) == 0.0);
    CHECK_THROWS_AS(thorp_absorption_db_per_km(0.0), DomainError);

    double prev = 0.0;
    for (double f = 1000.0; f <= 200000.0; f += 500.0) {
        const double a = thorp_absorption_db_per_km(f);
        CHECK(a >= 0.0);
        CHECK(a > prev);
        prev = a;
    }
}

TEST_CASE("transmission loss") {
    const Medium water = Medium::thorp();
    CHECK(transmission_loss(water, 1.0, 27000.0) == doctest::Approx(6.955693335569633e-3).epsilon(1e-12));
    CHECK(transmission_loss(Medium::lossless(), 1.0, 27000.0) == 0.0);
    CHECK(transmission_loss(water, 1000.0, 27000.0) == doctest::Approx(66.95569333556963).epsilon(1e-12));
    CHECK(transmission_loss(Medium::lossless(), 21.0, 27760.0) ==
          doctest::Approx(26.444385894678387).epsilon(1e-12));
    CHECK_THROWS_AS(transmission_loss(water, 0.5, 27000.0), DomainError);
}

TEST_CASE("transmission loss is strictly increasing in distance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> f(100.0, 200000.0);
    std::uniform_real_distribution<double> r(1.0, 1e5);
    const Medium water = Medium::thorp();
    for (int i = 0; i < 1000; ++i) {
        const double fr = f(rng);
        double r1 = r(rng);
        double r2 = r(rng);
        if (r1 == r2) continue;
        if (r1 > r2) std::swap(r1, r2);
        CHECK(transmission_loss(water, r1, fr) < transmission_loss(water, r2, fr));
    }
}

TEST_CASE("path amplitude continues below the reference distance") {
    const Medium water = Medium::thorp();
    CHECK(path_amplitude(water, 25.0, 27000.0) ==
          doctest::Approx(std::pow(10.0, -transmission_loss(water, 25.0, 27000.0) / 20.0)).epsilon(1e-13));
    CHECK(path_amplitude(Medium::lossless(), 0.5, 27000.0) == 2.0);
    CHECK_THROWS_AS(path_amplitude(water, 0.0, 27000.0), DomainError);
}

TEST_CASE("solve_range") {
    const Medium water = Medium::thorp();
    CHECK(solve_range(water, 27000.0, 0.0) == 1.0);
    CHECK(solve_range(water, 27000.0, transmission_loss(water, 500.0, 27000.0)) ==
          doctest::Approx(500.0).epsilon(0.1 / 500.0));
    CHECK(solve_range(water, 27000.0, 66.96) == doctest::Approx(1000.0).epsilon(1e-3));
    CHECK_THROWS_AS(solve_range(water, 27000.0, -1.0), DomainError);
    CHECK_THROWS_AS(solve_range(water, 27000.0, 1e4), OutOfBracketError);
}

TEST_CASE("solve_range inverts transmission_loss") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> logr(0.0, 5.0);
    std::uniform_real_distribution<double> f(1000.0, 100000.0);
    for (const Medium& m : {Medium::thorp(), Medium::lossless()}) {
        for (int i = 0; i < 300; ++i) {
            const double r = std::pow(10.0, logr(rng));
            const double fr = f(rng);
            const double tl = transmission_loss(m, r, fr);
            const double back = solve_range(m, fr, tl);
            CHECK(std::abs(back - r) <= 0.1);
            CHECK(std::abs(transmission_loss(m, back, fr) - tl) <= 0.01);
        }
    }
}

TEST_CASE("source level") {
    CHECK(SourceLevel{0.0}.pressure_upa() == 1.0);
    CHECK(SourceLevel{180.0}.pressure_upa() == doctest::Approx(1e9));
}
