#include "dronecell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dronecell/errors.hpp"
#include "dronecell/quadrature.hpp"
#include "dronecell/rng.hpp"

namespace dronecell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Angular intervals of the circle of radius x around the AP (at distance
// rho0 from the center, on the +x axis) that lie inside the sector
// {|theta| <= beta, r <= R}. Interval endpoints come from exact
// circle/circle and circle/line intersections; coverage counting turns them
// into a total in-sector angle. with_edges is false for m = 1 (full disc).
double sector_arc_angle(double rho0, double area_radius, double beta, bool with_edges, double x) {
    if (x <= 0.0) return kTwoPi;

    struct Event {
        double angle;
        int delta;
    };
    std::vector<Event> events;
    int n_constraints = 0;

    auto add_allowed = [&](double s, double e) {
        // allowed interval [s, e] on the circle, endpoints already in [0, 2pi]
        events.push_back({s, +1});
        events.push_back({e, -1});
    };
    auto add_allowed_wrapped = [&](double s, double e) {
        s = std::fmod(s, kTwoPi);
        if (s < 0) s += kTwoPi;
        e = std::fmod(e, kTwoPi);
        if (e < 0) e += kTwoPi;
        if (s <= e) {
            add_allowed(s, e);
        } else {
            add_allowed(0.0, e);
            add_allowed(s, kTwoPi);
        }
    };

    // Disc constraint |P| <= R.
    if (rho0 == 0.0) {
        if (x > area_radius) return 0.0;
    } else {
        double w = (area_radius * area_radius - rho0 * rho0 - x * x) / (2.0 * rho0 * x);
        if (w <= -1.0) return 0.0;
        if (w < 1.0) {
            double psi = std::acos(w);
            ++n_constraints;
            add_allowed(psi, kTwoPi - psi);
        }
    }

    if (with_edges) {
        double u = rho0 * std::sin(beta) / x;
        if (u < 1.0) {
            double au = std::asin(clamp_unit(u));
            // beyond the upper edge: t in (beta + au, beta + pi - au)
            ++n_constraints;
            add_allowed_wrapped(beta + kPi - au, kTwoPi + beta + au);
            // beyond the lower edge: t in (pi + au - beta, 2pi - au - beta)
            ++n_constraints;
            add_allowed_wrapped(kTwoPi - au - beta, kTwoPi + kPi + au - beta);
        }
    }

    if (n_constraints == 0) return kTwoPi;

    events.push_back({0.0, 0});
    events.push_back({kTwoPi, 0});
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.angle < b.angle; });

    double total = 0.0;
    int cover = 0;
    double prev = 0.0;
    for (const auto& ev : events) {
        if (cover == n_constraints && ev.angle > prev) total += ev.angle - prev;
        cover += ev.delta;
        prev = ev.angle;
    }
    return total;
}

}  // namespace

const char* to_string(DeploymentOption option) {
    return option == DeploymentOption::Airborne ? "airborne" : "landed";
}

double packing_radius(int m, double radius_m) {
    switch (m) {
        case 1: return radius_m;
        case 2: return radius_m / 2.0;
        case 3: return (2.0 * std::sqrt(3.0) - 3.0) * radius_m;
        case 4: return (std::sqrt(2.0) - 1.0) * radius_m;
        case 5: return radius_m / (1.0 + std::sqrt(2.0 + 2.0 / std::sqrt(5.0)));
        case 6: return radius_m / 3.0;
        default:
            throw UnsupportedLayoutError("no packing for m = " + std::to_string(m) +
                                         " (supported: 1..6)");
    }
}

DeploymentLayout make_layout(DeploymentOption option, int m, const ScenarioConfig& config,
                             double height_m) {
    const double r = config.area.radius_m;
    const double r_pack = packing_radius(m, r);  // validates m

    DeploymentLayout layout;
    layout.option = option;
    layout.m_serving = m;
    layout.height_m = height_m;
    layout.sector_angle_rad = kTwoPi / m;

    double ring_radius;
    if (option == DeploymentOption::Airborne) {
        layout.r_pack_m = r_pack;
        ring_radius = (m == 1) ? 0.0 : r - r_pack;
    } else {
        layout.r_pack_m = r * std::sin(kPi / m);
        ring_radius = r;
    }
    layout.ap_xy.reserve(m);
    for (int k = 0; k < m; ++k) {
        double ang = layout.sector_angle_rad * k;
        layout.ap_xy.push_back({ring_radius * std::cos(ang), ring_radius * std::sin(ang)});
    }
    return layout;
}

LinkDistancePdf::LinkDistancePdf(Kind kind, DeploymentOption option, int m, double radius_m,
                                 int resolution)
    : kind_(kind), option_(option), m_(m), radius_(radius_m) {
    if (m < 1 || m > 6) {
        throw UnsupportedLayoutError("no layout for m = " + std::to_string(m) +
                                     " (supported: 1..6)");
    }
    if (radius_m <= 0.0) throw std::invalid_argument("area radius must be positive");

    beta_ = kPi / m;
    rho0_ = (option == DeploymentOption::Airborne)
                ? (m == 1 ? 0.0 : radius_m - packing_radius(m, radius_m))
                : radius_m;
    sector_area_ = kPi * radius_m * radius_m / m;
    r_edge_ = rho0_ * std::sin(beta_);
    d_corner_ = std::sqrt(std::max(
        0.0, rho0_ * rho0_ + radius_m * radius_m - 2.0 * rho0_ * radius_m * std::cos(beta_)));
    x_max_ = (m == 1) ? rho0_ + radius_m : std::max(rho0_, d_corner_);

    std::vector<double> cuts;
    if (m >= 2) {
        cuts.push_back(r_edge_);
        cuts.push_back(rho0_);
    }
    if (rho0_ > 0.0 && rho0_ < radius_m) cuts.push_back(radius_m - rho0_);
    cuts.push_back(d_corner_);
    std::sort(cuts.begin(), cuts.end());
    breakpoints_.push_back(0.0);
    for (double c : cuts) {
        if (c > 1e-12 * x_max_ && c < x_max_ * (1.0 - 1e-12) &&
            c - breakpoints_.back() > 1e-12 * x_max_) {
            breakpoints_.push_back(c);
        }
    }
    breakpoints_.push_back(x_max_);

    build_tables(resolution);

    double total = mass(0.0, x_max_, 1e-11);
    if (std::fabs(total - 1.0) > 1e-9) {
        throw std::logic_error("link-distance pdf does not normalize: integral = " +
                               std::to_string(total));
    }
}

double LinkDistancePdf::density(double x) const {
    if (x < 0.0 || x > x_max_) return 0.0;
    const double q = sector_area_;

    if (kind_ == Kind::Numeric) {
        return x * sector_arc_angle(rho0_, radius_, beta_, m_ >= 2, x) / q;
    }

    if (kind_ == Kind::ClosedAirborne) {
        // m = 5 ring packing: breakpoints [0, r_pack, d_corner, rho0].
        const double r_pack = radius_ - rho0_;
        if (x < r_pack) return kTwoPi * x / q;
        if (x < d_corner_) {
            double outside_disc =
                x * (kTwoPi -
                     2.0 * std::acos(clamp_unit((x * x + rho0_ * rho0_ - radius_ * radius_) /
                                                (2.0 * x * rho0_))));
            double per_edge = 2.0 * x * std::acos(clamp_unit(r_edge_ / x));
            return (kTwoPi * x - outside_disc - 2.0 * per_edge) / q;
        }
        return x * (kPi - 2.0 * beta_ - 2.0 * std::acos(clamp_unit(r_edge_ / x))) / q;
    }

    // ClosedLanded, m >= 3: breakpoints [0, R sin(beta), R sqrt(2 - 2 cos beta), R].
    const double in_disc = 2.0 * x * std::acos(clamp_unit(x / (2.0 * radius_)));
    if (x < r_edge_) return in_disc / q;
    if (x < d_corner_) return (in_disc - 4.0 * x * std::acos(clamp_unit(r_edge_ / x))) / q;
    return x * (kPi - 2.0 * beta_ - 2.0 * std::acos(clamp_unit(r_edge_ / x))) / q;
}

double LinkDistancePdf::mass(double a, double b, double rel_tol) const {
    a = std::max(a, 0.0);
    b = std::min(b, x_max_);
    if (b <= a) return 0.0;
    return integrate_piecewise([this](double x) { return density(x); }, a, b, breakpoints_,
                               rel_tol);
}

void LinkDistancePdf::build_tables(int resolution) {
    if (resolution < 64) resolution = 64;
    std::vector<double> xs;
    xs.reserve(resolution + 64);
    static const double offsets[] = {1e-8, 1e-6, 1e-4, 1e-3, 1e-2};
    for (std::size_t b = 0; b + 1 < breakpoints_.size(); ++b) {
        double lo = breakpoints_[b];
        double hi = breakpoints_[b + 1];
        double len = hi - lo;
        int n = std::max(33, static_cast<int>(std::lround(resolution * len / x_max_)));
        for (int i = 0; i <= n; ++i) xs.push_back(lo + len * i / n);
        for (double f : offsets) {
            xs.push_back(lo + f * len);
            xs.push_back(hi - f * len);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [this](double a, double b) { return b - a < 1e-13 * x_max_; }),
             xs.end());

    grid_x_ = std::move(xs);
    grid_f_.resize(grid_x_.size());
    for (std::size_t i = 0; i < grid_x_.size(); ++i) grid_f_[i] = density(grid_x_[i]);

    grid_cdf_.resize(grid_x_.size());
    grid_cdf_[0] = 0.0;
    for (std::size_t i = 1; i < grid_x_.size(); ++i) {
        grid_cdf_[i] = grid_cdf_[i - 1] + 0.5 * (grid_f_[i] + grid_f_[i - 1]) *
                                              (grid_x_[i] - grid_x_[i - 1]);
    }
    double total = grid_cdf_.back();
    for (double& c : grid_cdf_) c /= total;
}

double LinkDistancePdf::sample(std::mt19937_64& rng) const {
    double u = uniform01(rng);
    auto it = std::upper_bound(grid_cdf_.begin(), grid_cdf_.end(), u);
    std::size_t i = std::min<std::size_t>(std::distance(grid_cdf_.begin(), it),
                                          grid_cdf_.size() - 1);
    if (i == 0) return grid_x_.front();
    std::size_t lo = i - 1;
    double h = grid_x_[i] - grid_x_[lo];
    double cell_mass = grid_cdf_[i] - grid_cdf_[lo];
    if (cell_mass <= 0.0 || h <= 0.0) return grid_x_[lo];
    double t = (u - grid_cdf_[lo]) / cell_mass;  // in [0, 1)
    double f0 = grid_f_[lo];
    double f1 = grid_f_[i];
    double fsum = f0 + f1;
    if (fsum <= 0.0) return grid_x_[lo] + t * h;
    // density linear within the cell: invert f0*s + (f1-f0)*s^2/2 = t*(f0+f1)/2
    double target = t * 0.5 * fsum;
    double df = f1 - f0;
    double s;
    if (std::fabs(df) < 1e-14 * fsum) {
        s = target / f0;
    } else {
        double disc = f0 * f0 + 2.0 * df * target;
        s = 2.0 * target / (f0 + std::sqrt(std::max(disc, 0.0)));
    }
    return grid_x_[lo] + std::clamp(s, 0.0, 1.0) * h;
}

LinkDistancePdf pdf_closed_form(DeploymentOption option, int m, double radius_m) {
    if (option == DeploymentOption::Airborne) {
        if (m != 5) {
            throw UnsupportedLayoutError(
                "closed-form airborne pdf exists only for m = 5; use pdf_numeric");
        }
        return LinkDistancePdf(LinkDistancePdf::Kind::ClosedAirborne, option, m, radius_m, 4096);
    }
    if (m < 3) {
        throw UnsupportedLayoutError(
            "closed-form landed pdf requires m >= 3; use pdf_numeric");
    }
    return LinkDistancePdf(LinkDistancePdf::Kind::ClosedLanded, option, m, radius_m, 4096);
}

LinkDistancePdf pdf_numeric(DeploymentOption option, int m, double radius_m, int resolution) {
    return LinkDistancePdf(LinkDistancePdf::Kind::Numeric, option, m, radius_m, resolution);
}

double sample_distance(const LinkDistancePdf& pdf, std::mt19937_64& rng) {
    return pdf.sample(rng);
}

}  // namespace dronecell
