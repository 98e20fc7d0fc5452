#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dronecell/channel.hpp"
#include "dronecell/geometry.hpp"
#include "dronecell/lifecycle.hpp"
#include "dronecell/scenario.hpp"

namespace dronecell {

enum class Provenance { Analytic, MonteCarlo };

struct CapacityReport {
    DeploymentOption option = DeploymentOption::Airborne;
    int m_serving = 0;
    double height_m = 0.0;
    double rho = 0.0;
    double mean_se_bps_hz = 0.0;
    double network_capacity_bps = 0.0;
    std::optional<double> user_capacity_bps;  // empty when user density is zero
    Provenance provenance = Provenance::Analytic;
    bool no_coverage = false;    // floor(N rho) collapsed to zero servers
    bool serving_capped = false; // guaranteed servers exceeded the supported 6 placements
};

// Service height selection: a fixed value, or the per-option argmax of the
// mean spectral efficiency.
struct HeightSpec {
    static HeightSpec automatic() { return {true, 0.0}; }
    static HeightSpec fixed(double height_m) { return {false, height_m}; }
    bool is_auto = true;
    double value = 0.0;
};

// Placements exist for at most six concurrent serving APs.
inline constexpr int kMaxServingAps = 6;

// Search window used by automatic height optimization.
std::pair<double, double> auto_height_range(const ScenarioConfig& config);

// E[S(X)] against the link-distance pdf, adaptive quadrature split at the
// pdf breakpoints.
double mean_se(DeploymentOption option, int m, const ScenarioConfig& config, double height_m,
               double rel_tol = 1e-8);
double mean_se_over(const LinkDistancePdf& pdf, const LinkBudget& budget,
                    const BlockageGeometry& geom, double density_per_m2,
                    double rel_tol = 1e-8);

// Golden-section maximization of mean_se over [h_lo, h_hi]; returns
// (height, mean SE). Height resolved to 0.05 m.
std::pair<double, double> optimize_height(DeploymentOption option, int m,
                                          const ScenarioConfig& config, double h_lo,
                                          double h_hi);

double resolve_height(DeploymentOption option, int m, const ScenarioConfig& config,
                      HeightSpec spec);

// rho -> guaranteed servers -> M * B * mean SE.
CapacityReport network_capacity(DeploymentOption option, const ScenarioConfig& config,
                                HeightSpec height = HeightSpec::automatic());

// Mean per-user rate with the AP bandwidth equally shared among a Poisson
// number of users; the blockage term sees the realized density K / (pi R^2).
double user_capacity(DeploymentOption option, const ScenarioConfig& config,
                     HeightSpec height = HeightSpec::automatic());
double user_capacity_at(DeploymentOption option, int m, const ScenarioConfig& config,
                        double height_m, double rel_tol = 1e-8);

// Everything the CLI prints for one option, computed from one cycle.
CapacityReport analyze(DeploymentOption option, const ScenarioConfig& config,
                       HeightSpec height = HeightSpec::automatic());

struct BoundaryPoint {
    enum class Status { Crossing, LandedAlways, AirborneAlways, Infeasible, MultipleCrossings };
    double flight_time_h = 0.0;
    double ell_star_m = 0.0;  // meaningful only for Status::Crossing
    Status status = Status::Infeasible;
};

const char* to_string(BoundaryPoint::Status status);

// For each battery life T, the station distance where airborne and landed
// network capacities cross (bisection, resolved to 1 m). Sign-constant rows
// report which option dominates.
std::vector<BoundaryPoint> tradeoff_boundary(const ScenarioConfig& config,
                                             const std::vector<double>& t_grid_h,
                                             double ell_lo_m, double ell_hi_m, int n_drones);

// Smallest fleet size meeting the target mean user capacity at battery life
// flight_time_h; throws TargetUnreachableError naming the best achievable.
int min_drones_for_target(const ScenarioConfig& config, double target_user_capacity_bps,
                          double flight_time_h, DeploymentOption option);

}  // namespace dronecell
