#pragma once

#include "dronecell/geometry.hpp"
#include "dronecell/scenario.hpp"

namespace dronecell {

// One operation cycle: serve, fly back, recharge, fly out. rho is the
// long-run fraction of the cycle spent serving.
struct CycleResult {
    DeploymentOption option;
    double rho = 0.0;
    double flight_time_h = 0.0;   // one-way en-route time T_F
    double serving_time_h = 0.0;  // serving time per cycle T_S
    int n_serving = 0;            // floor(N * rho), guaranteed concurrent servers
};

// Serving-time fraction from the energy budget
//   T_S * P_drain + 2 * T_F * P_E = T * P_E,
// with P_drain = P_T (landed) or P_T + P_H (airborne).
// Throws InfeasibleCycleError when ell >= T*nu/2.
CycleResult serving_fraction(DeploymentOption option, const FleetModel& fleet,
                             double station_distance_m);

int serving_count(int n_drones, double rho);

}  // namespace dronecell
