#pragma once

#include "holowidths/rate_fit.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holowidths {

struct Series {
    std::string label;
    std::vector<RatePoint> points;  // non-positive values are skipped
};

/// Static log-log line chart. Output depends only on the arguments.
void write_loglog_svg(std::ostream& os, std::string_view title, std::string_view x_label,
                      std::string_view y_label, std::span<const Series> series);

}  // namespace holowidths
