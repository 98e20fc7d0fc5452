#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dronecell {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Replication-indexed substream: the (seed, stream, role) triple fully
// determines the engine state, so results do not depend on scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t role = 0) {
    std::uint64_t s = splitmix64(seed ^ splitmix64(stream ^ splitmix64(role)));
    return std::mt19937_64(s);
}

// Uniform double in [0, 1) from the top 53 bits; identical across platforms.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

namespace detail {

// Hoermann's PTRS transformed-rejection sampler, valid for mean >= 10.
inline long long poisson_ptrs(std::mt19937_64& g, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = uniform01(g) - 0.5;
        double v = uniform01(g);
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return static_cast<long long>(kf);
        }
    }
}

inline long long poisson_knuth(std::mt19937_64& g, double mean) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01(g);
    } while (p > limit);
    return k - 1;
}

}  // namespace detail

inline long long sample_poisson(std::mt19937_64& g, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) return detail::poisson_knuth(g, mean);
    return detail::poisson_ptrs(g, mean);
}

}  // namespace dronecell
