#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "dronecell/errors.hpp"
#include "dronecell/rng.hpp"
#include "dronecell/scenario.hpp"

using namespace dronecell;

namespace {

bool has_violation(const std::vector<Violation>& v, const std::string& field) {
    for (const auto& x : v) {
        if (x.field == field) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("defaults satisfy every invariant") {
    ScenarioConfig c;
    CHECK(validate(c).empty());
}

TEST_CASE("partial config keeps defaults elsewhere") {
    auto c = load_config_text("area.radius_m = 50\nradio.f_c_ghz = 28\n");
    CHECK(serialize(c) == serialize(ScenarioConfig{}));
    auto c2 = load_config_text("radio.f_c_ghz = 60\n");
    CHECK(c2.radio.f_c_ghz == 60.0);
    CHECK(c2.area.radius_m == 50.0);
}

TEST_CASE("empty file yields the all-defaults config") {
    auto c = load_config_text("");
    CHECK(serialize(c) == serialize(ScenarioConfig{}));
}

TEST_CASE("comments and blank lines are ignored") {
    auto c = load_config_text("# header\n\narea.radius_m = 60  # trailing\n");
    CHECK(c.area.radius_m == 60.0);
}

TEST_CASE("body height inversion is a named violation") {
    ScenarioConfig c;
    c.body.blocker_height_m = 1.0;
    c.body.ue_height_m = 1.5;
    auto v = validate(c);
    CHECK(has_violation(v, "body.blocker_height_m"));
    CHECK_THROWS_WITH_AS(load_config_text("body.blocker_height_m = 1.0\nbody.ue_height_m = 1.5\n"),
                         doctest::Contains("h_B > h_U"), ValidationError);
}

TEST_CASE("negative density is a violation") {
    ScenarioConfig c;
    c.area.user_density_per_m2 = -1.0;
    auto v = validate(c);
    REQUIRE(has_violation(v, "area.user_density_per_m2"));
    CHECK(v.front().rule == "lambda >= 0");
}

TEST_CASE("unreachable charging station is an infeasible cycle") {
    ScenarioConfig c;
    c.area.station_distance_m = 25000.0;  // T*nu/2 = 20 km
    auto v = validate(c);
    REQUIRE(has_violation(v, "area.station_distance_m"));
    bool found = false;
    for (const auto& x : v) {
        if (x.rule.find("infeasible cycle") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("unknown keys are hard errors") {
    CHECK_THROWS_AS(parse_config("area.radios_m = 50\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("typo = 1\n"), ConfigError);
}

TEST_CASE("duplicate keys are hard errors") {
    CHECK_THROWS_AS(parse_config("area.radius_m = 50\narea.radius_m = 60\n"), ConfigError);
}

TEST_CASE("malformed lines are hard errors") {
    CHECK_THROWS_AS(parse_config("area.radius_m 50\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("area.radius_m = fifty\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("fleet.n_drones = 2.5\n"), ConfigError);
}

TEST_CASE("overrides apply and reject unknown keys") {
    ScenarioConfig c;
    apply_override(c, "fleet.n_drones=6");
    CHECK(c.fleet.n_drones == 6);
    CHECK_THROWS_AS(apply_override(c, "fleet.wings=2"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "no-equals-sign"), ConfigError);
}

TEST_CASE("serialize round-trips exactly, including randomized configs") {
    auto g = make_stream(2024, 0, 0);
    for (int i = 0; i < 100; ++i) {
        ScenarioConfig c;
        c.area.radius_m = 10.0 + 200.0 * uniform01(g);
        c.area.user_density_per_m2 = uniform01(g);
        c.area.station_distance_m = 5000.0 * uniform01(g);
        c.body.ue_height_m = 1.0 + 0.5 * uniform01(g);
        c.body.blocker_height_m = c.body.ue_height_m + 0.1 + uniform01(g);
        c.body.blocker_radius_m = 0.05 + 0.5 * uniform01(g);
        c.body.ue_body_distance_m = 0.05 + 0.5 * uniform01(g);
        c.radio.f_c_ghz = 1.0 + 100.0 * uniform01(g);
        c.radio.bandwidth_hz = 1e8 + 2e9 * uniform01(g);
        c.radio.pathloss_exponent = 1.5 + 2.0 * uniform01(g);
        c.fleet.n_drones = 1 + static_cast<int>(8 * uniform01(g));
        c.fleet.flight_time_h = 0.5 + 5.0 * uniform01(g);
        c.fleet.cruise_speed_kmh = 20.0 + 60.0 * uniform01(g);
        c.fleet.airborne_height_m = c.body.ue_height_m + 1.0 + 50.0 * uniform01(g);
        c.fleet.landed_height_m = c.body.ue_height_m + 1.0 + 50.0 * uniform01(g);

        std::string s = serialize(c);
        ScenarioConfig back = parse_config(s);
        CHECK(serialize(back) == s);
    }
}

TEST_CASE("validate is pure") {
    ScenarioConfig c;
    c.area.user_density_per_m2 = -2.0;
    c.fleet.flight_time_h = -1.0;
    auto v1 = validate(c);
    auto v2 = validate(c);
    REQUIRE(v1.size() == v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        CHECK(v1[i].field == v2[i].field);
        CHECK(v1[i].rule == v2[i].rule);
    }
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.conf"), ConfigError);
}
