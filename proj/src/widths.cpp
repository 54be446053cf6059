#include "holowidths/widths.hpp"

#include "holowidths/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace holowidths {

double stesin_width(const WidthQuery& query) {
    const auto& w = query.weights;
    detail::require(!w.empty(), "width query needs weights");
    detail::require(query.m < w.size(), "width query needs m < N");
    detail::require(query.q >= 1.0 && query.q < query.p, "Stesin formula needs 1 <= q < p");
    for (double x : w) detail::require(x > 0.0 && std::isfinite(x), "weights must be positive and finite");

    const double r = std::isinf(query.p) ? query.q : query.p * query.q / (query.p - query.q);
    std::vector<double> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    const double top = sorted[w.size() - query.m - 1];
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size() - query.m; ++i) sum += std::pow(sorted[i] / top, r);
    return top * std::pow(sum, 1.0 / r);
}

std::vector<double> top_entries(const AnisotropySequence& b, std::size_t N) {
    std::vector<double> head = b.head();
    std::sort(head.begin(), head.end(), std::greater<>());
    std::vector<double> out;
    out.reserve(N);
    std::size_t h = 0, t = 0;
    while (out.size() < N) {
        const double tail_next = b.has_tail() ? b[b.head_size() + 1 + t] : 0.0;
        if (h < head.size() && head[h] >= tail_next)
            out.push_back(head[h++]);
        else {
            out.push_back(tail_next);
            ++t;
        }
    }
    return out;
}

double discrete_width_chain(const AnisotropySequence& b, std::size_t N, std::size_t m) {
    detail::require(m < N, "width chain needs m < N");
    const auto top = top_entries(b, N);
    double sum = 0.0;
    for (std::size_t j = N; j-- > m;) sum += top[j] * top[j];
    return std::sqrt(sum);
}

double gelfand_lower_bound(std::size_t N, std::size_t m, double p, double q) {
    detail::require(p > 0.0 && p <= 1.0, "Gelfand bound needs 0 < p <= 1");
    detail::require(q > p, "Gelfand bound needs q > p");
    detail::require(m < N, "Gelfand bound needs m < N");
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double exponent = 1.0 / p - inv_q;
    double ratio = 1.0;
    if (m > 0) {
        const double md = static_cast<double>(m);
        const double log_const = 8.0 * std::log(3.0) + 1.0;
        ratio = std::min(1.0, (2.0 * p / log_const) * std::log(std::numbers::e * static_cast<double>(N) / md) / md);
    }
    return std::pow(0.5, 2.0 / p - inv_q) * std::pow(ratio, exponent);
}

Moments measure_moments(Measure measure) {
    switch (measure) {
        case Measure::Uniform: return {0.0, 1.0 / std::sqrt(3.0)};
        case Measure::Chebyshev: return {0.0, 1.0 / std::sqrt(2.0)};
    }
    throw PreconditionError("unknown measure");
}

Moments measure_moments(std::string_view name) {
    if (name == "uniform") return measure_moments(Measure::Uniform);
    if (name == "chebyshev") return measure_moments(Measure::Chebyshev);
    throw PreconditionError("unknown measure '" + std::string(name) + "'");
}

double known_constant(const AnisotropySequence& b, Moments moments) {
    return moments.sigma / (1.0 + (1.0 + std::abs(moments.tau)) * lp_norm(b, 1.0));
}

double known_constant_lp(const AnisotropySequence& b, double p, Moments moments) {
    return moments.sigma / (1.0 + (1.0 + std::abs(moments.tau)) * lp_norm(b, p));
}

double theta_lower_bound_known(const AnisotropySequence& b, std::size_t m, Moments moments) {
    const double c = known_constant(b, moments);
    return c * best_s_term_error(b, m, 2.0);
}

double unknown_constant(Moments moments) { return moments.sigma / (2.0 + std::abs(moments.tau)); }

double theta_lower_bound_unknown(double p, Moments moments) {
    detail::require(p > 0.0 && p < 1.0, "unknown-anisotropy bound needs 0 < p < 1");
    return unknown_constant(moments) * std::pow(2.0, 0.5 - 2.0 / p);
}

}  // namespace holowidths
