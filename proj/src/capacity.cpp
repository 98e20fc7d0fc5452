#include "dronecell/capacity.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dronecell/errors.hpp"
#include "dronecell/quadrature.hpp"
#include "dronecell/units.hpp"

namespace dronecell {

namespace {

constexpr double kPi = std::numbers::pi;

int capped_serving(const CycleResult& cycle, bool* capped) {
    if (capped) *capped = cycle.n_serving > kMaxServingAps;
    return std::min(cycle.n_serving, kMaxServingAps);
}

// Poisson pmf over k = 1..k_max with tail mass below 1e-9; terms under
// 1e-18 are dropped.
std::vector<std::pair<long long, double>> poisson_terms(double mean) {
    const long long k_max =
        static_cast<long long>(std::ceil(mean + 12.0 * std::sqrt(mean) + 20.0));
    std::vector<std::pair<long long, double>> terms;
    const double log_mean = std::log(mean);
    for (long long k = 1; k <= k_max; ++k) {
        double logp = k * log_mean - mean - std::lgamma(static_cast<double>(k) + 1.0);
        double p = std::exp(logp);
        if (p > 1e-18) terms.emplace_back(k, p);
    }
    return terms;
}

}  // namespace

std::pair<double, double> auto_height_range(const ScenarioConfig& config) {
    double lo = config.body.ue_height_m + 0.7;
    double hi = std::max(150.0, config.body.ue_height_m + 100.0);
    return {lo, hi};
}

double mean_se_over(const LinkDistancePdf& pdf, const LinkBudget& budget,
                    const BlockageGeometry& geom, double density_per_m2, double rel_tol) {
    auto integrand = [&](double x) {
        return spectral_efficiency(budget, geom, x, density_per_m2) * pdf.density(x);
    };
    return integrate_piecewise(integrand, 0.0, pdf.x_max(), pdf.breakpoints(), rel_tol);
}

double mean_se(DeploymentOption option, int m, const ScenarioConfig& config, double height_m,
               double rel_tol) {
    const auto pdf = pdf_numeric(option, m, config.area.radius_m);
    const auto budget = LinkBudget::from_radio(config.radio);
    const auto geom = BlockageGeometry::from(config.body, height_m);
    return mean_se_over(pdf, budget, geom, config.area.user_density_per_m2, rel_tol);
}

std::pair<double, double> optimize_height(DeploymentOption option, int m,
                                          const ScenarioConfig& config, double h_lo,
                                          double h_hi) {
    if (!(h_lo > config.body.ue_height_m) || !(h_hi > h_lo)) {
        throw std::domain_error("height range must satisfy h_U < h_lo < h_hi");
    }
    const auto pdf = pdf_numeric(option, m, config.area.radius_m);
    const auto budget = LinkBudget::from_radio(config.radio);
    const double density = config.area.user_density_per_m2;
    auto se_at = [&](double h) {
        double se = mean_se_over(pdf, budget, BlockageGeometry::from(config.body, h), density);
        if (!std::isfinite(se)) {
            throw std::runtime_error("mean SE is not finite at height " + std::to_string(h));
        }
        return se;
    };

    constexpr double kGolden = 0.6180339887498949;
    constexpr double kTolM = 0.05;
    double a = h_lo, b = h_hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = se_at(c), fd = se_at(d);
    while (b - a > kTolM) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = se_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = se_at(d);
        }
    }
    double h_star = 0.5 * (a + b);
    return {h_star, se_at(h_star)};
}

double resolve_height(DeploymentOption option, int m, const ScenarioConfig& config,
                      HeightSpec spec) {
    if (!spec.is_auto) return spec.value;
    auto [lo, hi] = auto_height_range(config);
    return optimize_height(option, m, config, lo, hi).first;
}

CapacityReport network_capacity(DeploymentOption option, const ScenarioConfig& config,
                                HeightSpec height) {
    const CycleResult cycle =
        serving_fraction(option, config.fleet, config.area.station_distance_m);

    CapacityReport report;
    report.option = option;
    report.rho = cycle.rho;
    report.m_serving = capped_serving(cycle, &report.serving_capped);
    if (report.m_serving == 0) {
        report.no_coverage = true;
        report.height_m = height.is_auto ? 0.0 : height.value;
        return report;
    }
    report.height_m = resolve_height(option, report.m_serving, config, height);
    report.mean_se_bps_hz = mean_se(option, report.m_serving, config, report.height_m);
    report.network_capacity_bps =
        report.m_serving * config.radio.bandwidth_hz * report.mean_se_bps_hz;
    return report;
}

double user_capacity_at(DeploymentOption option, int m, const ScenarioConfig& config,
                        double height_m, double rel_tol) {
    const double lambda = config.area.user_density_per_m2;
    if (lambda <= 0.0) {
        throw std::domain_error("user capacity is undefined at zero user density");
    }
    const double r = config.area.radius_m;
    const double area = kPi * r * r;
    const double mean_users = lambda * area;

    const auto pdf = pdf_numeric(option, m, r);
    const auto budget = LinkBudget::from_radio(config.radio);
    const auto geom = BlockageGeometry::from(config.body, height_m);
    const auto terms = poisson_terms(mean_users);
    const double self_clear =
        (2.0 * kPi - geom.self_block_angle_rad) / (2.0 * kPi);

    auto integrand = [&](double x) {
        const double d = std::hypot(x, geom.relative_height_m);
        const double se_clear = std::log2(1.0 + snr_linear(budget, d, false));
        const double se_blocked = std::log2(1.0 + snr_linear(budget, d, true));
        const double delta = se_clear - se_blocked;
        // per-user blockage exponent: p_B(x, K) = 1 - self_clear * exp(-c K)
        const double c = 2.0 * geom.blocker_radius_m *
                         (geom.shadow_length_m(x) + geom.blocker_radius_m) / area;
        double acc = 0.0;
        for (const auto& [k, p] : terms) {
            double pb = 1.0 - self_clear * std::exp(-c * static_cast<double>(k));
            acc += p / static_cast<double>(k) * (se_clear - delta * pb);
        }
        return acc * pdf.density(x);
    };
    const double integral =
        integrate_piecewise(integrand, 0.0, pdf.x_max(), pdf.breakpoints(), rel_tol);
    return config.radio.bandwidth_hz * m * integral;
}

double user_capacity(DeploymentOption option, const ScenarioConfig& config, HeightSpec height) {
    if (config.area.user_density_per_m2 <= 0.0) {
        throw std::domain_error("user capacity is undefined at zero user density");
    }
    const CycleResult cycle =
        serving_fraction(option, config.fleet, config.area.station_distance_m);
    int m = capped_serving(cycle, nullptr);
    if (m == 0) return 0.0;
    double h = resolve_height(option, m, config, height);
    return user_capacity_at(option, m, config, h);
}

CapacityReport analyze(DeploymentOption option, const ScenarioConfig& config,
                       HeightSpec height) {
    CapacityReport report = network_capacity(option, config, height);
    if (!report.no_coverage && config.area.user_density_per_m2 > 0.0) {
        report.user_capacity_bps =
            user_capacity_at(option, report.m_serving, config, report.height_m);
    }
    return report;
}

const char* to_string(BoundaryPoint::Status status) {
    switch (status) {
        case BoundaryPoint::Status::Crossing: return "crossing";
        case BoundaryPoint::Status::LandedAlways: return "landed_always";
        case BoundaryPoint::Status::AirborneAlways: return "airborne_always";
        case BoundaryPoint::Status::Infeasible: return "infeasible";
        case BoundaryPoint::Status::MultipleCrossings: return "multiple_crossings";
    }
    return "unknown";
}

std::vector<BoundaryPoint> tradeoff_boundary(const ScenarioConfig& config,
                                             const std::vector<double>& t_grid_h,
                                             double ell_lo_m, double ell_hi_m, int n_drones) {
    if (n_drones < 1) throw std::domain_error("n_drones must be at least 1");

    // Heights and mean SE depend on (option, m) only; share them across the grid.
    std::map<std::pair<int, int>, double> se_cache;
    auto se_of = [&](DeploymentOption option, int m) {
        auto key = std::make_pair(option == DeploymentOption::Airborne ? 0 : 1, m);
        auto it = se_cache.find(key);
        if (it != se_cache.end()) return it->second;
        auto [lo, hi] = auto_height_range(config);
        double se = optimize_height(option, m, config, lo, hi).second;
        se_cache.emplace(key, se);
        return se;
    };

    std::vector<BoundaryPoint> out;
    out.reserve(t_grid_h.size());
    for (double t_h : t_grid_h) {
        ScenarioConfig c = config;
        c.fleet.flight_time_h = t_h;
        c.fleet.n_drones = n_drones;

        BoundaryPoint point;
        point.flight_time_h = t_h;

        const double reach_m =
            hours_to_seconds(t_h) * kmh_to_mps(c.fleet.cruise_speed_kmh) / 2.0;
        const double lo = std::max(ell_lo_m, 0.0);
        const double hi = std::min(ell_hi_m, reach_m * (1.0 - 1e-9));
        if (hi <= lo) {
            point.status = BoundaryPoint::Status::Infeasible;
            out.push_back(point);
            continue;
        }

        auto capacity_of = [&](DeploymentOption option, double ell) {
            CycleResult cycle = serving_fraction(option, c.fleet, ell);
            int m = std::min(cycle.n_serving, kMaxServingAps);
            if (m == 0) return 0.0;
            return m * c.radio.bandwidth_hz * se_of(option, m);
        };
        auto gap = [&](double ell) {
            return capacity_of(DeploymentOption::Airborne, ell) -
                   capacity_of(DeploymentOption::Landed, ell);
        };

        constexpr int kScan = 64;
        int sign_changes = 0;
        double bracket_lo = lo, bracket_hi = hi;
        double prev_g = gap(lo);
        for (int i = 1; i <= kScan; ++i) {
            double ell = lo + (hi - lo) * i / kScan;
            double g = gap(ell);
            if ((prev_g > 0.0) != (g > 0.0)) {
                if (sign_changes == 0) {
                    bracket_lo = lo + (hi - lo) * (i - 1) / kScan;
                    bracket_hi = ell;
                }
                ++sign_changes;
            }
            prev_g = g;
        }

        if (sign_changes == 0) {
            point.status = gap(lo) > 0.0 ? BoundaryPoint::Status::AirborneAlways
                                         : BoundaryPoint::Status::LandedAlways;
        } else if (sign_changes > 1) {
            point.status = BoundaryPoint::Status::MultipleCrossings;
        } else {
            double a = bracket_lo, b = bracket_hi;
            double ga = gap(a);
            while (b - a > 1.0) {
                double mid = 0.5 * (a + b);
                double gm = gap(mid);
                if ((ga > 0.0) == (gm > 0.0)) {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            point.status = BoundaryPoint::Status::Crossing;
            point.ell_star_m = 0.5 * (a + b);
        }
        out.push_back(point);
    }
    return out;
}

int min_drones_for_target(const ScenarioConfig& config, double target_user_capacity_bps,
                          double flight_time_h, DeploymentOption option) {
    if (target_user_capacity_bps <= 0.0) {
        throw std::domain_error("target user capacity must be positive");
    }
    ScenarioConfig c = config;
    c.fleet.flight_time_h = flight_time_h;
    const double rho =
        serving_fraction(option, c.fleet, c.area.station_distance_m).rho;

    std::map<int, double> capacity_by_m;
    auto capacity_at = [&](int m) {
        auto it = capacity_by_m.find(m);
        if (it != capacity_by_m.end()) return it->second;
        double h = resolve_height(option, m, c, HeightSpec::automatic());
        double cu = user_capacity_at(option, m, c, h);
        capacity_by_m.emplace(m, cu);
        return cu;
    };

    int best_n = 0;
    double best = 0.0;
    for (int n = 1; n <= c.fleet.n_max; ++n) {
        int m = std::min(serving_count(n, rho), kMaxServingAps);
        if (m < 1) continue;
        double cu = capacity_at(m);
        if (cu >= target_user_capacity_bps) return n;
        if (cu > best) {
            best = cu;
            best_n = n;
        }
    }
    throw TargetUnreachableError(
        "target user capacity " + std::to_string(target_user_capacity_bps) +
            " bit/s unreachable with n_max = " + std::to_string(c.fleet.n_max) +
            "; best achievable " + std::to_string(best) + " bit/s at N = " +
            std::to_string(best_n),
        best_n, best);
}

}  // namespace dronecell
