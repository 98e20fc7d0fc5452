#pragma once

#include <cstdint>
#include <utility>

#include "dronecell/geometry.hpp"
#include "dronecell/scenario.hpp"

namespace dronecell {

struct SimConfig {
    int replications = 20;
    std::uint64_t seed = 1;
    long long drops_per_replication = 50000;
};

struct SimEstimate {
    double mean = 0.0;
    double ci95_halfwidth = 0.0;  // normal approximation over replication means
    long long n_samples = 0;
};

// Empirical blockage probability for a UE at 2D distance x from its AP:
// blockers dropped as a PPP in a disc covering the shadow strip, plus an
// independent self-blockage draw.
SimEstimate simulate_blockage(const ScenarioConfig& config, const SimConfig& sim,
                              double distance_2d_m, double ap_height_m);

// Same estimate computed twice from one superposed PPP: once seeing only the
// standard drop disc, once seeing it enlarged by region_scale. Any gap is
// edge-truncation bias.
std::pair<SimEstimate, SimEstimate> simulate_blockage_region_check(
    const ScenarioConfig& config, const SimConfig& sim, double distance_2d_m,
    double ap_height_m, double region_scale);

// Empirical mean SE: uniform UE drops, nearest-AP association, per-link
// blockage sampling.
SimEstimate simulate_mean_se(DeploymentOption option, int m, const ScenarioConfig& config,
                             double ap_height_m, const SimConfig& sim);

// Empirical mean user capacity: K ~ Poisson users per replication, equal
// bandwidth sharing, the other K-1 bodies acting as blockers. Replications
// with K = 0 contribute no samples.
SimEstimate simulate_user_capacity(DeploymentOption option, const ScenarioConfig& config,
                                   double ap_height_m, const SimConfig& sim);

}  // namespace dronecell
