#include "holowidths/plot.hpp"

#include "holowidths/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

namespace holowidths {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double x) { return format_double(std::round(x * 100.0) / 100.0); }

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_loglog_svg(std::ostream& os, std::string_view title, std::string_view x_label,
                      std::string_view y_label, std::span<const Series> series) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (const auto& p : s.points)
            if (p.m > 0 && p.error > 0 && std::isfinite(p.error)) {
                x0 = std::min(x0, std::log10(p.m));
                x1 = std::max(x1, std::log10(p.m));
                y0 = std::min(y0, std::log10(p.error));
                y1 = std::max(y1, std::log10(p.error));
            }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
    y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
    auto sy = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = x0; d <= x1; d += 1.0)
        os << "<text x=\"" << fmt(sx(d)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">1e"
           << static_cast<int>(d) << "</text>\n";
    for (double d = y0; d <= y1; d += 1.0)
        os << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(sy(d) + 4) << "\" text-anchor=\"end\">1e"
           << static_cast<int>(d) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 10) << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << fmt(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kColors[i % kColors.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& p : series[i].points) {
            if (!(p.m > 0 && p.error > 0 && std::isfinite(p.error))) continue;
            os << (first ? "" : " ") << fmt(sx(std::log10(p.m))) << ',' << fmt(sy(std::log10(p.error)));
            first = false;
        }
        os << "\"/>\n";
        const double ly = kTop + 16.0 * static_cast<double>(i + 1);
        os << "<line x1=\"" << fmt(kLeft + pw + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(kLeft + pw + 30)
           << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(kLeft + pw + 34) << "\" y=\"" << fmt(ly) << "\">" << escape(series[i].label)
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace holowidths
