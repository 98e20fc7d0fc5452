#pragma once

#include <cmath>

namespace dronecell {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
constexpr double hours_to_seconds(double h) { return h * 3600.0; }
constexpr double seconds_to_hours(double s) { return s / 3600.0; }

// Thermal noise power over bandwidth_hz at -174 dBm/Hz. The default noise
// figure of the scenario is configured separately; use this helper when the
// bandwidth is changed away from the 1 GHz it was calibrated for.
inline double thermal_noise_dbm(double bandwidth_hz) {
    return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

}  // namespace dronecell
