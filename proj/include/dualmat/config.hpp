#pragma once

#include <algorithm>
#include <cmath>

namespace dualmat {

// Every tolerance used by the library flows from this record.  Callers that
// need different thresholds construct their own instance and pass it down;
// the defaults below are the ones the test suite and the CLI pin.
struct ToleranceConfig {
    // A dual scalar is appreciable when |standard part| > appreciable * max(1, scale).
    double appreciable = 1e-12;
    // Defining-equation, reconstruction and cross-method residual threshold.
    double residual = 1e-9;
    // Composite identity chains accumulate more rounding, so they get more slack.
    double identity = 1e-8;
    // Relative gap below which two singular values are treated as a repeated group.
    double grouping = 1e-8;
    // A quantity within this factor of its threshold counts as borderline.
    double borderline_factor = 10.0;
    // Sweep cap for the Jacobi iterations.
    int max_sweeps = 64;
};

inline const ToleranceConfig& default_tolerances() {
    static const ToleranceConfig cfg{};
    return cfg;
}

// Shared borderline rule: value v sits too close to threshold t to trust the
// comparison when it lands inside [t / factor, t * factor].
inline bool near_threshold(double value, double threshold, double factor) {
    if (threshold <= 0.0) return false;
    return value >= threshold / factor && value <= threshold * factor;
}

}  // namespace dualmat
