#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace holowidths {

struct RatePoint {
    double m = 0.0;
    double error = 0.0;
};

/// Least squares line through (log m, log error).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<RatePoint> points;  // the points actually fitted
    std::size_t excluded = 0;       // points dropped for a non-positive error

    [[nodiscard]] double predict(double m) const;
};

/// Requires at least 3 points with positive error and positive m; others are
/// excluded and counted.
[[nodiscard]] RateFit fit_rate(std::span<const RatePoint> points);

}  // namespace holowidths
