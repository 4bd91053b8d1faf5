#include "uaris/errors.hpp"
#include "uaris/io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace uaris;
namespace fs = std::filesystem;

TEST_CASE("phase code JSON") {
    const auto code = io::phase_code_from_json(io::parse_json(R"({"rows": 2, "cols": 3, "bits": [[0,1,0],[1,1,0]]})", "t"));
    CHECK(code.rows() == 2);
    CHECK(code(1, 0) == 1);
    CHECK(code(1, 2) == 0);
    CHECK(io::phase_code_from_json(io::to_json(code)) == code);

    CHECK_THROWS_AS(io::phase_code_from_json(io::parse_json(R"({"rows": 2, "cols": 2, "bits": [[0,1],[1]]})", "t")), InputError);
    CHECK_THROWS_AS(io::phase_code_from_json(io::parse_json(R"({"rows": 1, "cols": 2, "bits": [[0,2]]})", "t")), InputError);
    CHECK_THROWS_AS(io::phase_code_from_json(io::parse_json(R"({"rows": 1, "cols": 2, "bits": [[0,true]]})", "t")), InputError);
    CHECK_THROWS_AS(io::phase_code_from_json(io::parse_json(R"({"rows": 0, "cols": 2, "bits": []})", "t")), InputError);
    CHECK_THROWS_AS(io::phase_code_from_json(io::parse_json(R"({"cols": 2, "bits": [[0,0]]})", "t")), InputError);
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        io::parse_json("{\n  \"rows\": 2,\n  \"cols\": ,\n}", "code.json");
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("code.json:3:") == 0);
    }
}

TEST_CASE("field diagnostics name the field") {
    const auto j = io::parse_json(R"({"frequency_hz": 27000, "tx_pos_m": [1,0], "rx_pos_m": [2,0,0],
        "array": {"rows": 4, "cols": 6, "pitch_m": 0.05}, "source_level_db": 180, "scatter_scale": 0})", "s");
    try {
        io::scenario_from_json(j);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("tx_pos_m") != std::string::npos);
    }
}

TEST_CASE("scenario JSON") {
    const Scenario lake = io::scenario_from_json(io::read_json_file(UARIS_PRESET_DIR "/lake.json"));
    CHECK(lake.frequency_hz == 27760.0);
    CHECK(lake.geometry.rows == 6);
    CHECK(lake.geometry.cols == 4);
    CHECK(lake.medium.absorption_model() == AbsorptionModel::none);
    CHECK(norm(lake.rx_pos - lake.tx_pos) == doctest::Approx(21.0));
    CHECK(lake.tx_pos.x == 0.8);

    const Scenario tank = io::scenario_from_json(io::read_json_file(UARIS_PRESET_DIR "/tank.json"));
    std::size_t active = 0;
    for (auto a : tank.active) active += a;
    CHECK(active == 12);
    CHECK(tank.frequency_hz == 27130.0);

    Scenario s = tank;
    s.noise_level_db = 55.0;
    s.medium = Medium::tabulated({{1000, 0.1}, {50000, 12.0}});
    const Scenario back = io::scenario_from_json(io::to_json(s));
    CHECK(io::to_json(back) == io::to_json(s));
    CHECK(back.active == s.active);
    CHECK(*back.noise_level_db == 55.0);

    auto bad = io::to_json(s);
    bad["tx_pos_m"] = {-1.0, 0.0, 0.0};
    CHECK_THROWS_AS(io::scenario_from_json(bad), InputError);
    bad = io::to_json(s);
    bad["medium"]["absorption"] = "francois";
    CHECK_THROWS_AS(io::scenario_from_json(bad), InputError);
    bad = io::to_json(s);
    bad["medium"]["absorption_table"] = {{2000, 1.0}, {1000, 2.0}};
    CHECK_THROWS_AS(io::scenario_from_json(bad), InputError);
}

TEST_CASE("pattern CSV round trip") {
    const ArrayGeometry g{2, 3, 0.05};
    const PhaseCode code(2, 3, std::vector<std::uint8_t>{0, 1, 0, 0, 1, 1});
    const BeamPattern p = sweep(g, code, {10, 0}, 27000.0, 5.0, 5.0);
    const std::string csv = io::pattern_csv(p);
    CHECK(csv.rfind("theta_deg,phi_deg,af_real,af_imag,af_db_norm\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(p.size() + 1));
    CHECK(csv.find('\r') == std::string::npos);

    const BeamPattern back = io::parse_pattern_csv(csv);
    REQUIRE(back.size() == p.size());
    CHECK(back.theta_step() == 5.0);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(back.values()[i] == p.values()[i]);
    CHECK(io::to_json(find_lobes(back)) == io::to_json(find_lobes(p)));

    CHECK_THROWS_AS(io::parse_pattern_csv("theta,phi\n"), InputError);
    CHECK_THROWS_AS(io::parse_pattern_csv("theta_deg,phi_deg,af_real,af_imag,af_db_norm\n0,0,1,x,0\n"), InputError);
}

TEST_CASE("zero magnitudes hit the dB floor") {
    std::vector<Complex> v(BeamPattern::theta_count_for(10) * BeamPattern::phi_count_for(10), 0.0);
    v[5] = 1.0;
    const std::string csv = io::pattern_csv(BeamPattern(10, 10, v));
    CHECK(csv.find(",-80.000000\n") != std::string::npos);
}

TEST_CASE("atomic write") {
    const fs::path dir = fs::temp_directory_path() / "uaris_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.txt";
    io::write_file_atomic(target, "first\n");
    io::write_file_atomic(target, "second\n");
    CHECK(io::read_text_file(target) == "second\n");
    CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
    CHECK_THROWS_AS(io::write_file_atomic(dir / "missing" / "x.txt", "x"), InputError);
    fs::remove_all(dir);
}
