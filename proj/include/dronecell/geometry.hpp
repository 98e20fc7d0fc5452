#pragma once

#include <random>
#include <vector>

#include "dronecell/scenario.hpp"

namespace dronecell {

enum class DeploymentOption { Airborne, Landed };

const char* to_string(DeploymentOption option);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// AP positions for one serving round, in the area-centered frame.
struct DeploymentLayout {
    DeploymentOption option;
    int m_serving = 0;
    std::vector<Vec2> ap_xy;
    double height_m = 0.0;
    double r_pack_m = 0.0;       // packed-circle radius (airborne) / chord parameter (landed)
    double sector_angle_rad = 0.0;
};

// Radius of each of m equal circles optimally packed in a disc of the given
// radius. Supported for m in 1..6; these are the ring packings, tangent to
// the disc and to each other.
double packing_radius(int m, double radius_m);

// Airborne: ring of radius R - r_pack (m = 1 at the center).
// Landed: ring on the circumference. Vertices start at angle 0.
DeploymentLayout make_layout(DeploymentOption option, int m, const ScenarioConfig& config,
                             double height_m);

// Distribution of the 2D distance between a uniformly random UE and its
// nearest AP. The density is evaluated exactly on demand; a tabulated grid
// backs inverse-CDF sampling and debug dumps.
class LinkDistancePdf {
  public:
    DeploymentOption option() const { return option_; }
    int m() const { return m_; }
    double radius() const { return radius_; }
    double x_max() const { return x_max_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    double density(double x) const;

    // Probability mass on [a, b] (adaptive quadrature split at breakpoints).
    double mass(double a, double b, double rel_tol = 1e-10) const;

    double sample(std::mt19937_64& rng) const;

    const std::vector<double>& grid_x() const { return grid_x_; }
    const std::vector<double>& grid_f() const { return grid_f_; }

  private:
    enum class Kind { ClosedAirborne, ClosedLanded, Numeric };

    LinkDistancePdf(Kind kind, DeploymentOption option, int m, double radius_m, int resolution);
    void build_tables(int resolution);

    friend LinkDistancePdf pdf_closed_form(DeploymentOption, int, double);
    friend LinkDistancePdf pdf_numeric(DeploymentOption, int, double, int);

    Kind kind_;
    DeploymentOption option_;
    int m_;
    double radius_;
    double rho0_;     // AP distance from the area center
    double beta_;     // sector half-angle, pi/m
    double sector_area_;
    double r_edge_;   // distance from the AP to the sector edge lines
    double d_corner_; // distance from the AP to the sector corners
    double x_max_;
    std::vector<double> breakpoints_;
    std::vector<double> grid_x_;
    std::vector<double> grid_f_;
    std::vector<double> grid_cdf_;  // normalized, for sampling only
};

// Exact piecewise densities. Airborne is available for m = 5, landed for
// m >= 3; other combinations throw UnsupportedLayoutError and callers fall
// back to pdf_numeric.
LinkDistancePdf pdf_closed_form(DeploymentOption option, int m, double radius_m);

// General method for all m in 1..6 and both options: the in-sector arc
// length of the circle around the AP, from analytic circle/line and
// circle/circle intersection angles.
LinkDistancePdf pdf_numeric(DeploymentOption option, int m, double radius_m,
                            int resolution = 4096);

double sample_distance(const LinkDistancePdf& pdf, std::mt19937_64& rng);

}  // namespace dronecell
