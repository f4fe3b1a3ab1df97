#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "helical/config.hpp"

using namespace helical;

namespace {

// random valid config; strings avoid '#' and surrounding blanks, which the
// format reserves
SimConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> pos(1e-3, 10.0);
    std::uniform_int_distribution<int> n(8, 512);
    std::uniform_int_distribution<int> steps(0, 1000);
    const char* presets[] = {"zero", "radial-bump", "gaussian-vortex", "vortex-patch", "shear-like"};
    const char* forcings[] = {"zero", "constant", "gaussian"};
    SimConfig c;
    c.domain.radius = pos(rng);
    c.domain.n = n(rng);
    c.helix.kappa = (rng() % 2 ? 1.0 : -1.0) * pos(rng) * std::pow(10.0, static_cast<int>(u(rng)));
    c.time.dt = 1.0 / (1 << (rng() % 12));
    c.time.t_end = c.time.dt * steps(rng);
    c.time.output_stride = 1 + static_cast<int>(rng() % 100);
    c.init.preset = presets[rng() % 5];
    c.init.amplitude = u(rng);
    c.init.center_x = u(rng);
    c.init.center_y = u(rng) / 3.0;
    c.init.width = pos(rng);
    c.init.radius = pos(rng);
    c.init.mollify_eps = rng() % 2 ? 0.0 : pos(rng);
    c.forcing.preset = forcings[rng() % 3];
    c.forcing.amplitude = u(rng);
    c.forcing.center_x = u(rng);
    c.forcing.center_y = u(rng);
    c.forcing.width = pos(rng);
    c.solver.tol = pos(rng) * 1e-12;
    c.solver.max_iter = 1 + static_cast<int>(rng() % 100000);
    c.output.directory = "runs/out_" + std::to_string(rng() % 1000);
    c.output.formats = rng() % 2 ? std::vector<std::string>{"csv"} : std::vector<std::string>{"bin", "csv"};
    c.run.seed = rng();
    return c;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults parse from empty text and validate") {
    const SimConfig c = parse_config("");
    CHECK(c == SimConfig{});
    CHECK(c.domain.n == 128);
    CHECK(c.time.dt == 1.0 / 256.0);
    CHECK(c.step_count() == 256);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("parsing with comments and whitespace") {
    const SimConfig c = parse_config(
        "# run\n"
        "  domain.n = 64   # coarse\n"
        "\n"
        "helix.kappa=2.5\n"
        "init.preset = radial-bump\n"
        "output.formats = csv\n");
    CHECK(c.domain.n == 64);
    CHECK(c.helix.kappa == 2.5);
    CHECK(c.init.preset == "radial-bump");
    CHECK(c.output.formats == std::vector<std::string>{"csv"});
}

TEST_CASE("property: serialize then parse is the identity") {
    std::mt19937_64 rng(20240531);
    for (int trial = 0; trial < 300; ++trial) {
        const SimConfig c = random_config(rng);
        REQUIRE_NOTHROW(validate(c));
        const std::string text = serialize_config(c);
        const SimConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(serialize_config(back) == text);
    }
}

TEST_CASE("errors name the offending line") {
    auto message = [](std::string_view text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("domain.n = 64\nbogus.key = 1\n").find("line 2") != std::string::npos);
    CHECK(message("domain.n = 64\nbogus.key = 1\n").find("unknown key") != std::string::npos);
    CHECK(message("domain.n = 64\ndomain.n = 32\n").find("duplicate") != std::string::npos);
    CHECK(message("domain.n 64\n").find("line 1") != std::string::npos);
    CHECK(message("domain.n = 6.5\n").find("domain.n") != std::string::npos);
    CHECK(message("helix.kappa = abc\n").find("helix.kappa") != std::string::npos);
    CHECK(message("helix.kappa = 1.0x\n").find("helix.kappa") != std::string::npos);
}

TEST_CASE("validation rejects bad values") {
    const char* bad[] = {
        "domain.radius = 0",        "domain.radius = -1",        "domain.n = 7",
        "helix.kappa = 0",          "helix.kappa = inf",         "time.dt = 0",
        "time.dt = nan",            "time.t_end = -1",           "time.dt = 0.3\ntime.t_end = 1",
        "time.output_stride = 0",   "init.preset = swirl",       "init.width = 0",
        "init.radius = -0.3",       "init.mollify_eps = -0.1",   "forcing.preset = wind",
        "forcing.width = 0",        "solver.tol = 0",            "solver.max_iter = 0",
        "output.formats = csv,png", "output.directory = ",       "init.amplitude = inf",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
}

TEST_CASE("derived settings") {
    SimConfig c;
    c.init.preset = "vortex-patch";
    c.init.radius = 0.4;
    c.forcing.preset = "constant";
    c.forcing.amplitude = 0.5;
    c.solver.tol = 1e-9;
    c.solver.max_iter = 77;
    CHECK(init_preset(c).kind == PresetKind::vortex_patch);
    CHECK(init_preset(c).radius == 0.4);
    CHECK(forcing_spec(c)(0.0, 0.0, 0.0) == 0.5);
    CHECK(forcing_spec(SimConfig{}).is_zero());
    CHECK(solver_settings(c).tol == 1e-9);
    CHECK(solver_settings(c).max_iter == 77);
}

TEST_CASE("load_config") {
    const auto dir = std::filesystem::temp_directory_path() / "helical_config_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "run.cfg";
    std::ofstream(path) << "domain.n = 40\n";
    CHECK(load_config(path).domain.n == 40);
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), ConfigError);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
