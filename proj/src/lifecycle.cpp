#include "dronecell/lifecycle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dronecell/errors.hpp"
#include "dronecell/units.hpp"

namespace dronecell {

CycleResult serving_fraction(DeploymentOption option, const FleetModel& fleet,
                             double station_distance_m) {
    const double t_s = hours_to_seconds(fleet.flight_time_h);
    const double tc_s = hours_to_seconds(fleet.charge_time_h);
    const double nu = kmh_to_mps(fleet.cruise_speed_kmh);
    const double ell = station_distance_m;
    const double p_e = fleet.flight_power_w;
    const double p_t = fleet.payload_power_w;
    const double p_h = fleet.hover_power_w;

    const double reach = t_s * nu / 2.0;
    if (ell >= reach) {
        throw InfeasibleCycleError("infeasible cycle: ell >= T*nu/2 (ell = " +
                                   std::to_string(ell) + " m, T*nu/2 = " +
                                   std::to_string(reach) + " m)");
    }

    const double drain = (option == DeploymentOption::Airborne) ? p_t + p_h : p_t;
    const double numerator = t_s * p_e * nu - 2.0 * p_e * ell;
    const double denominator = t_s * p_e * nu + 2.0 * ell * (drain - p_e) + tc_s * nu * drain;

    CycleResult r;
    r.option = option;
    r.rho = numerator / denominator;
    r.flight_time_h = seconds_to_hours(ell / nu);
    r.serving_time_h = seconds_to_hours((t_s * p_e - 2.0 * (ell / nu) * p_e) / drain);
    r.n_serving = serving_count(fleet.n_drones, r.rho);
    return r;
}

int serving_count(int n_drones, double rho) {
    if (n_drones < 1) throw std::domain_error("fleet size must be at least 1");
    if (rho < 0.0 || rho > 1.0) throw std::domain_error("rho must lie in [0, 1]");
    return static_cast<int>(std::floor(n_drones * rho));
}

}  // namespace dronecell
