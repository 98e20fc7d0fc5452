#include "dronecell/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dronecell/units.hpp"

namespace dronecell {

LinkBudget LinkBudget::from_radio(const RadioModel& radio) {
    LinkBudget b;
    b.eirp_w = dbm_to_watts(radio.tx_power_dbm) * db_to_linear(radio.ap_gain_db) *
               db_to_linear(radio.ue_gain_db);
    b.atten_nonblocked = std::pow(10.0, -3.24) / (radio.f_c_ghz * radio.f_c_ghz);
    b.atten_blocked = b.atten_nonblocked * db_to_linear(-radio.blockage_loss_db);
    b.pathloss_exponent = radio.pathloss_exponent;
    b.noise_w = dbm_to_watts(radio.noise_power_dbm) * db_to_linear(radio.noise_figure_db);
    return b;
}

BlockageGeometry BlockageGeometry::from(const BodyModel& body, double ap_height_m) {
    if (ap_height_m <= body.ue_height_m) {
        throw std::domain_error("AP height must exceed the UE height");
    }
    BlockageGeometry g;
    g.relative_height_m = ap_height_m - body.ue_height_m;
    g.shadow_slope = (body.blocker_height_m - body.ue_height_m) / g.relative_height_m;
    g.self_block_angle_rad =
        std::asin(body.blocker_radius_m / (body.blocker_radius_m + body.ue_body_distance_m));
    g.blocker_radius_m = body.blocker_radius_m;
    return g;
}

double received_power_w(const LinkBudget& budget, double distance_3d_m, bool blocked) {
    if (distance_3d_m <= 0.0) throw std::domain_error("link distance must be positive");
    double atten = blocked ? budget.atten_blocked : budget.atten_nonblocked;
    return budget.eirp_w * atten * std::pow(distance_3d_m, -budget.pathloss_exponent);
}

double snr_linear(const LinkBudget& budget, double distance_3d_m, bool blocked) {
    return received_power_w(budget, distance_3d_m, blocked) / budget.noise_w;
}

double blockage_probability(const BlockageGeometry& geom, double distance_2d_m,
                            double density_per_m2) {
    if (distance_2d_m < 0.0 || density_per_m2 < 0.0) {
        throw std::domain_error("blockage probability needs x >= 0 and density >= 0");
    }
    const double self_clear = (2.0 * std::numbers::pi - geom.self_block_angle_rad) /
                              (2.0 * std::numbers::pi);
    const double strip = geom.shadow_length_m(distance_2d_m) + geom.blocker_radius_m;
    const double pedestrians_clear =
        std::exp(-2.0 * geom.blocker_radius_m * density_per_m2 * strip);
    return 1.0 - self_clear * pedestrians_clear;
}

double spectral_efficiency(const LinkBudget& budget, const BlockageGeometry& geom,
                           double distance_2d_m, double density_per_m2) {
    const double d = std::hypot(distance_2d_m, geom.relative_height_m);
    const double pb = blockage_probability(geom, distance_2d_m, density_per_m2);
    const double se_blocked = std::log2(1.0 + snr_linear(budget, d, true));
    const double se_clear = std::log2(1.0 + snr_linear(budget, d, false));
    return pb * se_blocked + (1.0 - pb) * se_clear;
}

}  // namespace dronecell
