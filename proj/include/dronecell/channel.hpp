#pragma once

#include "dronecell/scenario.hpp"

namespace dronecell {

// Link-budget constants in linear units. Attenuation follows the UMi
// street-canyon close-in form: A_N = 10^-3.24 * f_GHz^-2 with distance in
// meters. The blocked state applies the extra configured body loss.
struct LinkBudget {
    double eirp_w = 0.0;
    double atten_nonblocked = 0.0;
    double atten_blocked = 0.0;
    double pathloss_exponent = 0.0;
    double noise_w = 0.0;  // thermal noise times noise figure

    static LinkBudget from_radio(const RadioModel& radio);
};

// Geometry of body blockage for one service height.
struct BlockageGeometry {
    double relative_height_m = 0.0;    // h_T: AP height above the UE plane
    double shadow_slope = 0.0;         // (h_B - h_U) / h_T
    double self_block_angle_rad = 0.0; // asin(r_B / (r_B + r_U))
    double blocker_radius_m = 0.0;

    // Ground shadow length behind a UE at 2D distance x from its AP.
    double shadow_length_m(double distance_2d_m) const {
        return distance_2d_m * shadow_slope;
    }

    static BlockageGeometry from(const BodyModel& body, double ap_height_m);
};

// P = EIRP * A * d^-gamma for the blocked or non-blocked LoS state.
double received_power_w(const LinkBudget& budget, double distance_3d_m, bool blocked);

double snr_linear(const LinkBudget& budget, double distance_3d_m, bool blocked);

// Probability that the LoS link of a UE at 2D distance x is blocked, by its
// own body or by other pedestrians of the given density.
double blockage_probability(const BlockageGeometry& geom, double distance_2d_m,
                            double density_per_m2);

// Mixture spectral efficiency at 2D distance x; the 3D link length is
// sqrt(x^2 + h_T^2).
double spectral_efficiency(const LinkBudget& budget, const BlockageGeometry& geom,
                           double distance_2d_m, double density_per_m2);

}  // namespace dronecell
