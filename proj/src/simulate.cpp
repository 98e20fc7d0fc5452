#include "dronecell/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dronecell/capacity.hpp"
#include "dronecell/channel.hpp"
#include "dronecell/lifecycle.hpp"
#include "dronecell/rng.hpp"

namespace dronecell {

namespace {

constexpr double kPi = std::numbers::pi;

// Substream roles keep the per-function streams independent.
enum Role : std::uint64_t { kBlockage = 1, kMeanSe = 2, kUserCapacity = 3, kAnnulus = 4 };

void require_sim(const SimConfig& sim, bool needs_drops) {
    if (sim.replications < 1) throw std::domain_error("replications must be at least 1");
    if (needs_drops && sim.drops_per_replication < 1) {
        throw std::domain_error("drops_per_replication must be at least 1");
    }
}

SimEstimate from_rep_means(const std::vector<double>& means, long long n_samples) {
    SimEstimate est;
    est.n_samples = n_samples;
    if (means.empty()) return est;
    double sum = 0.0;
    for (double m : means) sum += m;
    est.mean = sum / means.size();
    if (means.size() >= 2) {
        double ss = 0.0;
        for (double m : means) ss += (m - est.mean) * (m - est.mean);
        double sd = std::sqrt(ss / (means.size() - 1));
        est.ci95_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(means.size()));
    }
    return est;
}

struct DiscPoint {
    double x, y;
};

DiscPoint uniform_in_disc(std::mt19937_64& g, double radius) {
    double r = radius * std::sqrt(uniform01(g));
    double ang = 2.0 * kPi * uniform01(g);
    return {r * std::cos(ang), r * std::sin(ang)};
}

// A pedestrian at (along, cross) relative to the UE (axis pointing at the
// AP) blocks the link when its center falls in the shadow strip
// [0, shadow + r_B] x [-r_B, r_B] -- the same region the analytic void
// probability integrates over.
bool in_strip(double along, double cross, double strip_len, double r_b) {
    return along >= 0.0 && along <= strip_len && std::fabs(cross) <= r_b;
}

// One pedestrian-blockage draw for a link of shadow strip length strip_len.
// Blockers are dropped in a disc centered mid-strip that covers the strip
// with margin.
bool sample_pedestrian_block(std::mt19937_64& g, double density, double strip_len, double r_b) {
    const double disc_r = 0.5 * strip_len + r_b + 0.5;
    const long long n = sample_poisson(g, density * kPi * disc_r * disc_r);
    for (long long i = 0; i < n; ++i) {
        DiscPoint p = uniform_in_disc(g, disc_r);
        if (in_strip(p.x + 0.5 * strip_len, p.y, strip_len, r_b)) return true;
    }
    return false;
}

int nearest_ap(const DeploymentLayout& layout, double x, double y, double* dist) {
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < layout.ap_xy.size(); ++i) {
        double dx = layout.ap_xy[i].x - x;
        double dy = layout.ap_xy[i].y - y;
        double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(i);
        }
    }
    *dist = std::sqrt(best_d2);
    return best;
}

}  // namespace

SimEstimate simulate_blockage(const ScenarioConfig& config, const SimConfig& sim,
                              double distance_2d_m, double ap_height_m) {
    require_sim(sim, true);
    const auto geom = BlockageGeometry::from(config.body, ap_height_m);
    const double p_self = geom.self_block_angle_rad / (2.0 * kPi);
    const double strip_len = geom.shadow_length_m(distance_2d_m) + geom.blocker_radius_m;
    const double lambda = config.area.user_density_per_m2;

    std::vector<double> rep_means;
    rep_means.reserve(sim.replications);
    for (int rep = 0; rep < sim.replications; ++rep) {
        auto g = make_stream(sim.seed, rep, kBlockage);
        long long blocked = 0;
        for (long long i = 0; i < sim.drops_per_replication; ++i) {
            bool b = uniform01(g) < p_self;
            if (!b && lambda > 0.0) {
                b = sample_pedestrian_block(g, lambda, strip_len, geom.blocker_radius_m);
            }
            blocked += b;
        }
        rep_means.push_back(static_cast<double>(blocked) / sim.drops_per_replication);
    }
    return from_rep_means(rep_means,
                          static_cast<long long>(sim.replications) * sim.drops_per_replication);
}

std::pair<SimEstimate, SimEstimate> simulate_blockage_region_check(
    const ScenarioConfig& config, const SimConfig& sim, double distance_2d_m,
    double ap_height_m, double region_scale) {
    if (region_scale < 1.0) throw std::domain_error("region_scale must be >= 1");
    require_sim(sim, true);
    const auto geom = BlockageGeometry::from(config.body, ap_height_m);
    const double p_self = geom.self_block_angle_rad / (2.0 * kPi);
    const double strip_len = geom.shadow_length_m(distance_2d_m) + geom.blocker_radius_m;
    const double r_b = geom.blocker_radius_m;
    const double lambda = config.area.user_density_per_m2;
    const double r1 = 0.5 * strip_len + r_b + 0.5;
    const double r2 = r1 * region_scale;

    std::vector<double> base_means, big_means;
    for (int rep = 0; rep < sim.replications; ++rep) {
        auto g = make_stream(sim.seed, rep, kBlockage);
        auto g_ann = make_stream(sim.seed, rep, kAnnulus);
        long long base_blocked = 0, big_blocked = 0;
        for (long long i = 0; i < sim.drops_per_replication; ++i) {
            bool self = uniform01(g) < p_self;
            bool base = self, big = self;
            if (lambda > 0.0) {
                long long n = sample_poisson(g, lambda * kPi * r1 * r1);
                for (long long k = 0; k < n; ++k) {
                    DiscPoint p = uniform_in_disc(g, r1);
                    if (in_strip(p.x + 0.5 * strip_len, p.y, strip_len, r_b)) {
                        base = true;
                        big = true;
                    }
                }
                // independent annulus points complete the enlarged-disc PPP
                long long n_ann = sample_poisson(g_ann, lambda * kPi * (r2 * r2 - r1 * r1));
                for (long long k = 0; k < n_ann; ++k) {
                    double rr = std::sqrt(r1 * r1 + uniform01(g_ann) * (r2 * r2 - r1 * r1));
                    double ang = 2.0 * kPi * uniform01(g_ann);
                    if (in_strip(rr * std::cos(ang) + 0.5 * strip_len, rr * std::sin(ang),
                                 strip_len, r_b)) {
                        big = true;
                    }
                }
            }
            base_blocked += base;
            big_blocked += big;
        }
        base_means.push_back(static_cast<double>(base_blocked) / sim.drops_per_replication);
        big_means.push_back(static_cast<double>(big_blocked) / sim.drops_per_replication);
    }
    long long n = static_cast<long long>(sim.replications) * sim.drops_per_replication;
    return {from_rep_means(base_means, n), from_rep_means(big_means, n)};
}

SimEstimate simulate_mean_se(DeploymentOption option, int m, const ScenarioConfig& config,
                             double ap_height_m, const SimConfig& sim) {
    require_sim(sim, true);
    const auto layout = make_layout(option, m, config, ap_height_m);
    const auto budget = LinkBudget::from_radio(config.radio);
    const auto geom = BlockageGeometry::from(config.body, ap_height_m);
    const double p_self = geom.self_block_angle_rad / (2.0 * kPi);
    const double lambda = config.area.user_density_per_m2;
    const double radius = config.area.radius_m;

    std::vector<double> rep_means;
    rep_means.reserve(sim.replications);
    for (int rep = 0; rep < sim.replications; ++rep) {
        auto g = make_stream(sim.seed, rep, kMeanSe);
        double acc = 0.0;
        for (long long i = 0; i < sim.drops_per_replication; ++i) {
            DiscPoint ue = uniform_in_disc(g, radius);
            double x = 0.0;
            nearest_ap(layout, ue.x, ue.y, &x);
            bool blocked = uniform01(g) < p_self;
            if (!blocked && lambda > 0.0) {
                double strip_len = geom.shadow_length_m(x) + geom.blocker_radius_m;
                blocked = sample_pedestrian_block(g, lambda, strip_len, geom.blocker_radius_m);
            }
            double d = std::hypot(x, geom.relative_height_m);
            acc += std::log2(1.0 + snr_linear(budget, d, blocked));
        }
        rep_means.push_back(acc / sim.drops_per_replication);
    }
    return from_rep_means(rep_means,
                          static_cast<long long>(sim.replications) * sim.drops_per_replication);
}

SimEstimate simulate_user_capacity(DeploymentOption option, const ScenarioConfig& config,
                                   double ap_height_m, const SimConfig& sim) {
    require_sim(sim, false);
    const double lambda = config.area.user_density_per_m2;
    if (lambda <= 0.0) {
        throw std::domain_error("user capacity is undefined at zero user density");
    }
    const CycleResult cycle =
        serving_fraction(option, config.fleet, config.area.station_distance_m);
    const int m = std::min(cycle.n_serving, kMaxServingAps);
    if (m == 0) return SimEstimate{};

    const auto layout = make_layout(option, m, config, ap_height_m);
    const auto budget = LinkBudget::from_radio(config.radio);
    const auto geom = BlockageGeometry::from(config.body, ap_height_m);
    const double p_self = geom.self_block_angle_rad / (2.0 * kPi);
    const double radius = config.area.radius_m;
    const double mean_users = lambda * kPi * radius * radius;
    const double bandwidth = config.radio.bandwidth_hz;
    const double r_b = geom.blocker_radius_m;

    std::vector<double> rep_means;
    long long n_samples = 0;
    std::vector<DiscPoint> users;
    for (int rep = 0; rep < sim.replications; ++rep) {
        auto g = make_stream(sim.seed, rep, kUserCapacity);
        long long k = sample_poisson(g, mean_users);
        if (k == 0) continue;  // empty area: no samples
        users.clear();
        users.reserve(k);
        for (long long i = 0; i < k; ++i) users.push_back(uniform_in_disc(g, radius));

        double acc = 0.0;
        for (long long i = 0; i < k; ++i) {
            double x = 0.0;
            int ap = nearest_ap(layout, users[i].x, users[i].y, &x);
            bool blocked = uniform01(g) < p_self;
            if (!blocked && x > 0.0) {
                double ux = (layout.ap_xy[ap].x - users[i].x) / x;
                double uy = (layout.ap_xy[ap].y - users[i].y) / x;
                double strip_len = geom.shadow_length_m(x) + r_b;
                double pre = strip_len + r_b;
                for (long long j = 0; j < k && !blocked; ++j) {
                    if (j == i) continue;
                    double dx = users[j].x - users[i].x;
                    double dy = users[j].y - users[i].y;
                    if (std::fabs(dx) > pre || std::fabs(dy) > pre) continue;
                    double along = dx * ux + dy * uy;
                    double cross = dx * uy - dy * ux;
                    blocked = in_strip(along, cross, strip_len, r_b);
                }
            }
            double d = std::hypot(x, geom.relative_height_m);
            double se = std::log2(1.0 + snr_linear(budget, d, blocked));
            acc += bandwidth * (static_cast<double>(m) / k) * se;
        }
        rep_means.push_back(acc / k);
        n_samples += k;
    }
    return from_rep_means(rep_means, n_samples);
}

}  // namespace dronecell
