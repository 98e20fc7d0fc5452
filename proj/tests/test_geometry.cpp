#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dronecell/errors.hpp"
#include "dronecell/geometry.hpp"
#include "dronecell/quadrature.hpp"
#include "dronecell/rng.hpp"
#include "test_support.hpp"

using namespace dronecell;

namespace {
constexpr double kPi = std::numbers::pi;
const ScenarioConfig kDefaults{};
}  // namespace

TEST_CASE("packing radii match the published ratios") {
    CHECK(packing_radius(1, 50.0) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(packing_radius(2, 50.0) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(packing_radius(3, 50.0) == doctest::Approx((2.0 * std::sqrt(3.0) - 3.0) * 50.0));
    CHECK(packing_radius(4, 50.0) == doctest::Approx(20.7107).epsilon(1e-5));
    CHECK(packing_radius(5, 50.0) == doctest::Approx(18.5096).epsilon(1e-5));
    CHECK(packing_radius(6, 50.0) == doctest::Approx(50.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(packing_radius(0, 50.0), UnsupportedLayoutError);
    CHECK_THROWS_AS(packing_radius(7, 50.0), UnsupportedLayoutError);
}

TEST_CASE("packed circles are pairwise feasible and stay inside the area") {
    const double r_area = 50.0;
    for (int m = 1; m <= 6; ++m) {
        double r = packing_radius(m, r_area);
        auto layout = make_layout(DeploymentOption::Airborne, m, kDefaults, 10.0);
        for (int i = 0; i < m; ++i) {
            double norm = std::hypot(layout.ap_xy[i].x, layout.ap_xy[i].y);
            CHECK(norm + r <= r_area * (1.0 + 1e-12));
            for (int j = i + 1; j < m; ++j) {
                double d = std::hypot(layout.ap_xy[i].x - layout.ap_xy[j].x,
                                      layout.ap_xy[i].y - layout.ap_xy[j].y);
                CHECK(d >= 2.0 * r * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("landed layout of four sits on the axes") {
    auto layout = make_layout(DeploymentOption::Landed, 4, kDefaults, 15.0);
    REQUIRE(layout.ap_xy.size() == 4);
    CHECK(layout.ap_xy[0].x == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(layout.ap_xy[0].y == doctest::Approx(0.0).scale(50));
    CHECK(layout.ap_xy[1].x == doctest::Approx(0.0).scale(50));
    CHECK(layout.ap_xy[1].y == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(layout.ap_xy[2].x == doctest::Approx(-50.0).epsilon(1e-12));
    CHECK(layout.ap_xy[3].y == doctest::Approx(-50.0).epsilon(1e-12));
    CHECK(layout.sector_angle_rad == doctest::Approx(kPi / 2.0));
}

TEST_CASE("airborne layouts ride the packing ring") {
    auto five = make_layout(DeploymentOption::Airborne, 5, kDefaults, 10.0);
    for (const auto& p : five.ap_xy) {
        CHECK(std::hypot(p.x, p.y) == doctest::Approx(31.4904).epsilon(1e-5));
    }
    auto one = make_layout(DeploymentOption::Airborne, 1, kDefaults, 10.0);
    REQUIRE(one.ap_xy.size() == 1);
    CHECK(one.ap_xy[0].x == 0.0);
    CHECK(one.ap_xy[0].y == 0.0);

    for (int m = 2; m <= 6; ++m) {
        auto layout = make_layout(DeploymentOption::Airborne, m, kDefaults, 10.0);
        std::sort(layout.ap_xy.begin(), layout.ap_xy.end(),
                  [](const Vec2& a, const Vec2& b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
        for (std::size_t i = 1; i < layout.ap_xy.size(); ++i) {
            double d = std::hypot(layout.ap_xy[i].x - layout.ap_xy[i - 1].x,
                                  layout.ap_xy[i].y - layout.ap_xy[i - 1].y);
            CHECK(d > 1e-9);  // pairwise distinct
        }
    }
}

TEST_CASE("corner distance from the cosine rule equals the coordinate distance") {
    const double r_area = 50.0;
    const double alpha = kPi / 5.0;
    const double psi = (kPi - alpha) / 2.0;
    const double r_a = packing_radius(5, r_area);
    const double chord = 2.0 * r_area * std::sin(alpha / 2.0);
    const double d_a =
        std::sqrt(r_a * r_a + chord * chord - 2.0 * r_a * chord * std::cos(psi));

    auto layout = make_layout(DeploymentOption::Airborne, 5, kDefaults, 10.0);
    double fx = r_area * std::cos(alpha), fy = r_area * std::sin(alpha);
    double d_coord = std::hypot(layout.ap_xy[0].x - fx, layout.ap_xy[0].y - fy);
    CHECK(std::fabs(d_a - d_coord) < 1e-9);

    auto pdf = pdf_closed_form(DeploymentOption::Airborne, 5, r_area);
    REQUIRE(pdf.breakpoints().size() == 4);
    CHECK(pdf.breakpoints()[2] == doctest::Approx(d_a).epsilon(1e-12));
}

TEST_CASE("closed-form airborne m=5 first branch is linear") {
    auto pdf = pdf_closed_form(DeploymentOption::Airborne, 5, 50.0);
    const double q = kPi * 50.0 * 50.0 / 5.0;
    for (double x : {1.0, 5.0, 10.0, 18.0}) {
        CHECK(pdf.density(x) == doctest::Approx(2.0 * kPi * x / q).epsilon(1e-12));
    }
    CHECK(pdf.x_max() == doctest::Approx(50.0 - 18.5096).epsilon(1e-4));
}

TEST_CASE("closed-form landed m=4 has the expected corner distance") {
    auto pdf = pdf_closed_form(DeploymentOption::Landed, 4, 50.0);
    REQUIRE(pdf.breakpoints().size() == 4);
    CHECK(pdf.breakpoints()[1] == doctest::Approx(50.0 * std::sin(kPi / 4.0)).epsilon(1e-12));
    CHECK(pdf.breakpoints()[2] == doctest::Approx(38.2683).epsilon(1e-5));
    CHECK(pdf.breakpoints()[2] ==
          doctest::Approx(50.0 * std::sqrt(2.0 - 2.0 * std::cos(kPi / 4.0))).epsilon(1e-12));
    CHECK(pdf.mass(0.0, pdf.x_max()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("every pdf normalizes to one") {
    for (auto opt : {DeploymentOption::Airborne, DeploymentOption::Landed}) {
        for (int m = 1; m <= 6; ++m) {
            auto pdf = pdf_numeric(opt, m, 50.0);
            CHECK(pdf.mass(0.0, pdf.x_max(), 1e-11) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(pdf.density(-1.0) == 0.0);
            CHECK(pdf.density(pdf.x_max() * 1.0000001) == 0.0);
        }
    }
}

TEST_CASE("closed forms agree with the arc-length method away from breakpoints") {
    auto sup_gap = [](DeploymentOption opt, int m) {
        auto cf = pdf_closed_form(opt, m, 50.0);
        auto nu = pdf_numeric(opt, m, 50.0);
        double sup = 0.0;
        for (int i = 0; i < 5000; ++i) {
            double x = (i + 0.5) / 5000.0 * cf.x_max();
            bool near_bp = false;
            for (double b : cf.breakpoints()) {
                if (std::fabs(x - b) < 1e-6 * cf.x_max()) near_bp = true;
            }
            if (near_bp) continue;
            sup = std::max(sup, std::fabs(cf.density(x) - nu.density(x)));
        }
        return sup;
    };
    CHECK(sup_gap(DeploymentOption::Airborne, 5) < 1e-6);
    for (int m = 3; m <= 6; ++m) CHECK(sup_gap(DeploymentOption::Landed, m) < 1e-6);
}

TEST_CASE("closed-form branches join continuously") {
    // evaluate the adjacent branch expressions at the same breakpoint; the
    // one-sided derivatives are infinite there, so nearby-point probing
    // cannot resolve continuity
    const double r_area = 50.0;

    {
        const double alpha = kPi / 5.0;
        const double r_a = packing_radius(5, r_area);
        const double rho0 = r_area - r_a;
        const double q = kPi * r_area * r_area / 5.0;
        auto pdf = pdf_closed_form(DeploymentOption::Airborne, 5, r_area);
        const double d_a = pdf.breakpoints()[2];

        auto branch1 = [&](double x) { return 2.0 * kPi * x / q; };
        auto branch2 = [&](double x) {
            double outside = x * (2.0 * kPi -
                                  2.0 * std::acos(std::clamp(
                                            (x * x + rho0 * rho0 - r_area * r_area) /
                                                (2.0 * x * rho0),
                                            -1.0, 1.0)));
            double edges = 4.0 * x * std::acos(std::clamp(rho0 * std::sin(alpha) / x, -1.0, 1.0));
            return (2.0 * kPi * x - outside - edges) / q;
        };
        auto branch3 = [&](double x) {
            return x * (kPi - 2.0 * alpha -
                        2.0 * std::acos(std::clamp(rho0 * std::sin(alpha) / x, -1.0, 1.0))) / q;
        };
        CHECK(std::fabs(branch1(r_a) - branch2(r_a)) < 1e-9);
        CHECK(std::fabs(branch2(d_a) - branch3(d_a)) < 1e-9);
    }

    for (int m : {3, 4, 5, 6}) {
        const double beta = kPi / m;
        const double r_l = r_area * std::sin(beta);
        const double d_l = r_area * std::sqrt(2.0 - 2.0 * std::cos(beta));
        const double q = kPi * r_area * r_area / m;
        auto branch1 = [&](double x) { return 2.0 * x * std::acos(x / (2.0 * r_area)) / q; };
        auto branch2 = [&](double x) {
            return (2.0 * x * std::acos(x / (2.0 * r_area)) -
                    4.0 * x * std::acos(std::clamp(r_l / x, -1.0, 1.0))) / q;
        };
        auto branch3 = [&](double x) {
            return x * (kPi - 2.0 * beta - 2.0 * std::acos(std::clamp(r_l / x, -1.0, 1.0))) / q;
        };
        CHECK(std::fabs(branch1(r_l) - branch2(r_l)) < 1e-9);
        CHECK(std::fabs(branch2(d_l) - branch3(d_l)) < 1e-9);
    }
}

TEST_CASE("third airborne branch matches its law-of-cosines form") {
    // Same arc through the triangle identity: the in-sector angle at the AP
    // equals pi - alpha minus the angle at the near edge intersection.
    const double r_area = 50.0;
    const double alpha = kPi / 5.0;
    const double r_a = packing_radius(5, r_area);
    const double rho0 = r_area - r_a;
    auto pdf = pdf_closed_form(DeploymentOption::Airborne, 5, r_area);
    const double q = kPi * r_area * r_area / 5.0;
    for (double x : {30.75, 30.9, 31.1, 31.3, 31.45}) {
        double z = rho0 * std::cos(alpha) -
                   std::sqrt(x * x - rho0 * rho0 * std::sin(alpha) * std::sin(alpha));
        double l3 = 2.0 * x *
                    (kPi - std::acos((x * x + z * z - rho0 * rho0) / (2.0 * x * z)) - kPi / 5.0);
        CHECK(pdf.density(x) == doctest::Approx(l3 / q).epsilon(1e-10));
    }
}

TEST_CASE("single central AP gives the uniform-disc distance law") {
    auto pdf = pdf_numeric(DeploymentOption::Airborne, 1, 50.0);
    CHECK(pdf.x_max() == doctest::Approx(50.0));
    for (double x : {5.0, 20.0, 49.0}) {
        CHECK(pdf.density(x) == doctest::Approx(2.0 * x / 2500.0).epsilon(1e-12));
    }
}

TEST_CASE("single landed AP follows the perimeter distance law") {
    auto pdf = pdf_numeric(DeploymentOption::Landed, 1, 50.0);
    CHECK(pdf.x_max() == doctest::Approx(100.0));
    for (double x : {5.0, 40.0, 80.0, 99.0}) {
        double expect = 2.0 * x * std::acos(x / 100.0) / (kPi * 2500.0);
        CHECK(pdf.density(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("landed single-AP pdf matches a large uniform drop") {
    auto pdf = pdf_numeric(DeploymentOption::Landed, 1, 50.0);
    auto layout = make_layout(DeploymentOption::Landed, 1, kDefaults, 15.0);
    auto samples = testsupport::nearest_distances(layout, 50.0, 10000000, 20240521);
    auto [chi2, df] = testsupport::chi2_against_pdf(samples, pdf, 100);
    CHECK(chi2 < testsupport::chi2_critical_99(df));
}

TEST_CASE("unsupported closed forms point to the numeric method") {
    CHECK_THROWS_AS(pdf_closed_form(DeploymentOption::Airborne, 4, 50.0), UnsupportedLayoutError);
    CHECK_THROWS_AS(pdf_closed_form(DeploymentOption::Landed, 2, 50.0), UnsupportedLayoutError);
    CHECK_THROWS_AS(pdf_numeric(DeploymentOption::Landed, 0, 50.0), UnsupportedLayoutError);
    CHECK_THROWS_AS(pdf_numeric(DeploymentOption::Airborne, 7, 50.0), UnsupportedLayoutError);
}

TEST_CASE("normalization holds away from the default radius and resolution") {
    for (double r : {20.0, 120.0}) {
        for (auto opt : {DeploymentOption::Airborne, DeploymentOption::Landed}) {
            for (int m : {2, 5}) {
                auto pdf = pdf_numeric(opt, m, r, 512);
                CHECK(pdf.mass(0.0, pdf.x_max(), 1e-11) == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(pdf.x_max() <= 2.0 * r + 1e-9);
            }
        }
    }
    auto coarse = pdf_numeric(DeploymentOption::Landed, 4, 50.0, 16);  // floor kicks in
    CHECK(coarse.grid_x().size() >= 64);
}

TEST_CASE("sampling reproduces the distribution") {
    auto pdf = pdf_numeric(DeploymentOption::Airborne, 5, 50.0);
    const double mean_expect = integrate_piecewise(
        [&](double x) { return x * pdf.density(x); }, 0.0, pdf.x_max(), pdf.breakpoints(), 1e-10);
    const double m2 = integrate_piecewise(
        [&](double x) { return x * x * pdf.density(x); }, 0.0, pdf.x_max(), pdf.breakpoints(),
        1e-10);
    const double sd = std::sqrt(m2 - mean_expect * mean_expect);

    const long long n = 1000000;
    auto g = make_stream(7, 0, 0);
    double sum = 0.0;
    std::vector<double> samples;
    samples.reserve(n);
    for (long long i = 0; i < n; ++i) {
        double s = sample_distance(pdf, g);
        CHECK(s >= 0.0);
        CHECK(s <= pdf.x_max());
        sum += s;
        samples.push_back(s);
    }
    double mean = sum / n;
    CHECK(std::fabs(mean - mean_expect) < 3.0 * sd / std::sqrt(static_cast<double>(n)));

    // grid Kolmogorov-Smirnov against the quadrature CDF
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    double cdf = 0.0;
    int grid = 2048;
    for (int i = 1; i <= grid; ++i) {
        double a = pdf.x_max() * (i - 1) / grid;
        double b = pdf.x_max() * i / grid;
        cdf += pdf.mass(a, b, 1e-9);
        auto it = std::upper_bound(samples.begin(), samples.end(), b);
        double emp = static_cast<double>(it - samples.begin()) / n;
        ks = std::max(ks, std::fabs(emp - cdf));
    }
    CHECK(ks < 0.002);
}
