#pragma once

#include <stdexcept>
#include <string>

namespace dronecell {

// Config file unreadable, malformed, or contains unknown/duplicate keys.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scenario invariant does not hold; message lists the violations.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The operation cycle cannot close: ell >= T*nu/2.
struct InfeasibleCycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No supported placement / closed form for the requested AP count.
struct UnsupportedLayoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A capacity target cannot be met within the fleet-size cap.
struct TargetUnreachableError : std::runtime_error {
    TargetUnreachableError(const std::string& msg, int best_n, double best_bps)
        : std::runtime_error(msg), best_n(best_n), best_bps(best_bps) {}
    int best_n;
    double best_bps;
};

}  // namespace dronecell
