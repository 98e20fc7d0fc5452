#pragma once

#include <string>
#include <vector>

namespace dronecell {

// Service area: a circular open square of radius R populated by a PPP of
// pedestrians, with the drone charging station ell meters away.
struct AreaModel {
    double radius_m = 50.0;
    double user_density_per_m2 = 0.075; // lambda; not a measured value, see README
    double station_distance_m = 1000.0; // ell; not a measured value, see README
};

// Human-body blockage geometry: bodies are cylinders of height
// blocker_height_m and radius blocker_radius_m; the UE is carried at
// ue_height_m, ue_body_distance_m away from its own body.
struct BodyModel {
    double blocker_height_m = 1.7;
    double ue_height_m = 1.3;
    double blocker_radius_m = 0.22;
    double ue_body_distance_m = 0.3;
};

struct RadioModel {
    double f_c_ghz = 28.0;
    double bandwidth_hz = 1e9;
    double tx_power_dbm = 23.0;
    double ap_gain_db = 15.0;
    double ue_gain_db = 5.0;
    double blockage_loss_db = 20.0;
    double pathloss_exponent = 2.1;
    double noise_power_dbm = -84.0;  // over the configured bandwidth
    double noise_figure_db = 5.0;
};

struct FleetModel {
    int n_drones = 4;
    int n_max = 12;                   // fleet-size cap for min-drones searches
    double airborne_height_m = 10.0;  // service height, hovering
    double landed_height_m = 15.0;    // service height, perched
    double flight_time_h = 1.0;       // T, on one battery charge
    double charge_time_h = 1.0;       // T_C, full recharge
    double cruise_speed_kmh = 40.0;   // nu, en-route stage
    double flight_power_w = 871.0;    // P_E, engines while cruising
    double hover_power_w = 1024.0;    // P_H, engines while hovering
    double payload_power_w = 47.0;    // P_T, the mmWave AP itself
};

// The full parameter set for one run. Immutable after load; all other
// modules read from it. Fields keep the units of the config file; SI
// conversion happens once, where derived quantities are built.
struct ScenarioConfig {
    AreaModel area;
    BodyModel body;
    RadioModel radio;
    FleetModel fleet;
};

struct Violation {
    std::string field;
    std::string rule;
};

// Empty result iff every invariant holds. Pure: violations are data.
std::vector<Violation> validate(const ScenarioConfig& config);

// Parses `section.key = value` text with '#' comments. Unknown or duplicate
// keys are hard errors. Missing keys keep defaults.
ScenarioConfig parse_config(const std::string& text);

// Applies a single `section.key=value` assignment (CLI overrides).
void apply_override(ScenarioConfig& config, const std::string& assignment);

// parse + validate; throws ConfigError or ValidationError.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig load_config_text(const std::string& text);

// Full key=value dump; load_config_text(serialize(c)) reproduces c exactly.
std::string serialize(const ScenarioConfig& config);

}  // namespace dronecell
