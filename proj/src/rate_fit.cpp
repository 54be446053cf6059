#include "holowidths/rate_fit.hpp"

#include "holowidths/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holowidths {

double RateFit::predict(double m) const { return std::exp(intercept + slope * std::log(m)); }

RateFit fit_rate(std::span<const RatePoint> points) {
    RateFit fit;
    for (const auto& p : points) {
        if (p.error > 0.0 && p.m > 0.0 && std::isfinite(p.error))
            fit.points.push_back(p);
        else
            ++fit.excluded;
    }
    if (fit.points.size() < 3)
        throw PreconditionError("rate fit needs at least 3 points with positive error, got " +
                                std::to_string(fit.points.size()));

    const double n = static_cast<double>(fit.points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : fit.points) {
        mx += std::log(p.m);
        my += std::log(p.error);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : fit.points) {
        const double dx = std::log(p.m) - mx;
        const double dy = std::log(p.error) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw PreconditionError("rate fit needs at least two distinct abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace holowidths
