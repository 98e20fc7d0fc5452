#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dronecell {

// Gauss-7 / Kronrod-15 pair on [x0-m, x0+m]; err is the usual scaled
// |G7-K15|^(3/2) estimate.
template <class F>
double quad_g7k15(F&& f, double a, double b, double& err) {
    static const double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0,               0.204432940075298},
        {0.586087235467691, 0.0,               0.169004726639267},
        {0.864864423359769, 0.0,               0.104790010322250},
        {0.991455371120813, 0.0,               0.022935322010529},
    };
    const double x0 = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    double y0 = f(x0);
    double g7 = nw[0][1] * y0;
    double k15 = nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = m * nw[i][0];
        const double yi = f(x0 + dx) + f(x0 - dx);
        g7 += nw[i][1] * yi;
        k15 += nw[i][2] * yi;
    }
    g7 *= m;
    k15 *= m;
    err = 200.0 * std::fabs(g7 - k15);
    err = err * std::sqrt(err);
    return k15;
}

// Adaptive bisection on [a, b]. Each subinterval must satisfy the local
// tolerance; throws if the interval budget is exhausted.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9,
                          double abs_tol = 1e-14, int max_intervals = 20000) {
    if (!(b > a)) return 0.0;
    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    stack.reserve(64);
    double sum = 0.0;
    int used = 0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double err = 0.0;
        double v = quad_g7k15(f, s.a, s.b, err);
        if (err <= rel_tol * std::fabs(v) || err <= abs_tol ||
            (s.b - s.a) <= 1e-15 * (b - a)) {
            sum += v;
            continue;
        }
        if (++used > max_intervals) {
            throw std::runtime_error("adaptive quadrature did not converge");
        }
        double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
    }
    return sum;
}

// Integral over [lo, hi] with mandatory subdivision at the given interior
// breakpoints (kinks of the integrand).
template <class F>
double integrate_piecewise(F&& f, double lo, double hi, std::span<const double> breakpoints,
                           double rel_tol = 1e-9) {
    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] > cuts[i]) {
            sum += integrate_adaptive(f, cuts[i], cuts[i + 1], rel_tol);
        }
    }
    return sum;
}

}  // namespace dronecell
