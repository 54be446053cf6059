#include "holowidths/anisotropy.hpp"

#include "holowidths/error.hpp"
#include "holowidths/legendre.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>
#include <numeric>

namespace holowidths {

namespace {

// sum_{i >= first} i^(-s) for s > 1.
double hurwitz_zeta(double s, double first) {
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;
    gsl_sf_result r;
    if (gsl_sf_hzeta_e(s, first, &r) != GSL_SUCCESS)
        throw DivergenceError("Hurwitz zeta evaluation failed for s=" + std::to_string(s));
    return r.val;
}

void require_exponent(double p, const char* what) {
    if (!(p > 0.0)) throw PreconditionError(std::string(what) + " exponent must be positive");
}

// sum over the algebraic tail of b_i^p, i > head_size.
double tail_power_sum(const AnisotropySequence& b, double p) {
    if (!b.has_tail()) return 0.0;
    const Tail& t = b.tail();
    if (t.alpha * p <= 1.0)
        throw DivergenceError("algebraic tail not summable: alpha*p = " + std::to_string(t.alpha * p));
    return std::pow(t.scale, p) * hurwitz_zeta(t.alpha * p, static_cast<double>(b.head_size() + 1));
}

}  // namespace

Tail Tail::algebraic(double alpha, double scale) {
    detail::require(alpha > 0.0 && std::isfinite(alpha), "tail exponent must be positive");
    detail::require(scale >= 0.0 && std::isfinite(scale), "tail scale must be non-negative");
    return {Kind::Algebraic, alpha, scale};
}

AnisotropySequence::AnisotropySequence(std::vector<double> head, Tail tail)
    : head_(std::move(head)), tail_(tail) {
    for (double x : head_)
        detail::require(x >= 0.0 && std::isfinite(x), "anisotropy entries must be finite and non-negative");
    if (tail_.kind == Tail::Kind::Algebraic) tail_ = Tail::algebraic(tail.alpha, tail.scale);
}

double AnisotropySequence::operator[](std::size_t i) const {
    detail::require(i >= 1, "anisotropy index is 1-based");
    if (i <= head_.size()) return head_[i - 1];
    if (!has_tail()) return 0.0;
    return tail_.scale * std::pow(static_cast<double>(i), -tail_.alpha);
}

std::string AnisotropySequence::to_json() const {
    nlohmann::json j;
    j["head"] = head_;
    if (tail_.kind == Tail::Kind::Zero)
        j["tail"] = {{"kind", "zero"}};
    else
        j["tail"] = {{"kind", "algebraic"}, {"alpha", tail_.alpha}, {"scale", tail_.scale}};
    return j.dump();
}

AnisotropySequence AnisotropySequence::from_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        auto head = j.at("head").get<std::vector<double>>();
        Tail tail;
        if (j.contains("tail")) {
            const auto& t = j.at("tail");
            const auto kind = t.at("kind").get<std::string>();
            if (kind == "algebraic")
                tail = Tail::algebraic(t.at("alpha").get<double>(), t.at("scale").get<double>());
            else if (kind != "zero")
                throw ParseError("unknown tail kind '" + kind + "'");
        }
        return AnisotropySequence(std::move(head), tail);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("anisotropy JSON: ") + e.what());
    }
}

double lp_norm(const AnisotropySequence& b, double p) {
    require_exponent(p, "norm");
    const auto& h = b.head();
    if (std::isinf(p)) {
        double m = h.empty() ? 0.0 : *std::max_element(h.begin(), h.end());
        return std::max(m, b[h.size() + 1]);
    }
    double sum = 0.0;
    for (double x : h) sum += std::pow(x, p);
    sum += tail_power_sum(b, p);
    return std::pow(sum, 1.0 / p);
}

double monotone_lp_norm(const AnisotropySequence& b, double p) {
    std::vector<double> head = monotone_majorant(b.head());
    const double tail_start = b[b.head_size() + 1];
    for (double& x : head) x = std::max(x, tail_start);
    return lp_norm(AnisotropySequence(std::move(head), b.tail()), p);
}

double best_s_term_error(const AnisotropySequence& b, std::size_t s, double q) {
    require_exponent(q, "best s-term");
    detail::require(!std::isinf(q), "best s-term error requires finite q");
    if (b.has_tail() && b.tail().alpha * q <= 1.0)
        throw DivergenceError("algebraic tail not summable in l^q");

    const auto& h = b.head();
    std::vector<std::size_t> order(h.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return h[a] > h[c]; });

    // Merge the sorted head with the (decreasing) tail; head wins ties since its
    // indices are smaller.
    std::size_t taken_head = 0;
    std::size_t taken_tail = 0;
    for (std::size_t k = 0; k < s; ++k) {
        const double tail_next = b.has_tail() ? b[h.size() + 1 + taken_tail] : 0.0;
        if (taken_head < h.size() && h[order[taken_head]] >= tail_next)
            ++taken_head;
        else if (b.has_tail())
            ++taken_tail;
        else
            break;
    }

    double sum = 0.0;
    for (std::size_t k = h.size(); k-- > taken_head;) sum += std::pow(h[order[k]], q);
    if (b.has_tail()) {
        const Tail& t = b.tail();
        sum += std::pow(t.scale, q) *
               hurwitz_zeta(t.alpha * q, static_cast<double>(h.size() + 1 + taken_tail));
    }
    return std::pow(sum, 1.0 / q);
}

double stechkin_bound(const AnisotropySequence& b, double p, std::size_t m) {
    detail::require(p > 0.0 && p < 2.0, "Stechkin bound requires 0 < p < 2");
    return lp_norm(b, p) * std::pow(static_cast<double>(m) + 1.0, 0.5 - 1.0 / p);
}

AnisotropySequence make_flat_b(std::size_t m, double p) {
    detail::require(m >= 1, "flat sequence requires m >= 1");
    detail::require(p > 0.0 && p < 1.0, "flat sequence requires 0 < p < 1");
    const double n = 2.0 * static_cast<double>(m);
    return AnisotropySequence(std::vector<double>(2 * m, std::pow(n, -1.0 / p)));
}

AnisotropySequence make_algebraic_b(double p_star, double scale, std::size_t dims) {
    detail::require(p_star > 0.0 && p_star < 1.0, "algebraic sequence requires 0 < p_star < 1");
    detail::require(scale > 0.0, "algebraic sequence requires scale > 0");
    std::vector<double> head(dims);
    for (std::size_t i = 0; i < dims; ++i) head[i] = scale * std::pow(static_cast<double>(i + 1), -1.0 / p_star);
    return AnisotropySequence(std::move(head));
}

double slow_growth(SlowGrowth g, double n) {
    const double l = std::log1p(n);
    switch (g) {
        case SlowGrowth::LogSquared: return l * l;
        case SlowGrowth::LogTimesLogLogSquared: {
            const double ll = std::log(l);
            return l * ll * ll;
        }
        case SlowGrowth::Log: return l;
    }
    throw PreconditionError("unknown slow-growth function");
}

std::string_view to_string(SlowGrowth g) {
    switch (g) {
        case SlowGrowth::LogSquared: return "log2";
        case SlowGrowth::LogTimesLogLogSquared: return "loglog2";
        case SlowGrowth::Log: return "log";
    }
    return "?";
}

SlowGrowth slow_growth_from_string(std::string_view name) {
    if (name == "log2") return SlowGrowth::LogSquared;
    if (name == "loglog2") return SlowGrowth::LogTimesLogLogSquared;
    if (name == "log") return SlowGrowth::Log;
    throw PreconditionError("unknown slow-growth function '" + std::string(name) + "'");
}

namespace {

// Tail integral of 1/(x g(x)) over [N, inf) after the substitution
// x = exp(1/w) (or x = exp(exp(1/w)) for the log-log kind), which maps the
// tail onto (0, W] with a bounded integrand for the convergent kinds.
struct SubstitutedTail {
    SlowGrowth g;

    double upper(double n) const {
        return g == SlowGrowth::LogTimesLogLogSquared ? 1.0 / std::log(std::log(n)) : 1.0 / std::log(n);
    }

    double integrand(double w) const {
        const double inv = 1.0 / w;
        if (g == SlowGrowth::LogTimesLogLogSquared) {
            if (inv > 700.0) return 1.0;
            const double u = std::exp(inv);
            const double delta = std::log1p(std::exp(-u));
            const double d = 1.0 + w * std::log1p(delta / u);
            return 1.0 / ((1.0 + delta / u) * d * d);
        }
        const double d = 1.0 + w * std::log1p(std::exp(-inv));
        return g == SlowGrowth::LogSquared ? 1.0 / (d * d) : 1.0 / (w * d);
    }
};

struct TailIntegral {
    double value;
    double error;
};

TailIntegral tail_integral(SlowGrowth g, double n) {
    constexpr int kPieces = 60;
    constexpr double kCauchyTol = 1e-12;
    const SubstitutedTail sub{g};
    const auto& fine = cached_gauss_legendre_rule(20);
    const auto& coarse = cached_gauss_legendre_rule(10);

    auto piece = [&](const QuadratureRule& rule, double a, double b) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * sub.integrand(a + (b - a) * 0.5 * (rule.nodes[k] + 1.0));
        return s * (b - a);
    };

    double hi = sub.upper(n);
    double total = 0.0, total_coarse = 0.0, last = 0.0;
    for (int k = 0; k < kPieces; ++k) {
        const double lo = hi * 0.5;
        last = piece(fine, lo, hi);
        total += last;
        total_coarse += piece(coarse, lo, hi);
        hi = lo;
    }
    if (last > kCauchyTol)
        throw DivergenceError("series sum 1/(n g(n)) is not Cauchy for g = " + std::string(to_string(g)));
    // Remaining [0, hi]: integrand bounded by its limit 1.
    total += hi;
    total_coarse += hi;
    return {total, std::abs(total - total_coarse) + hi};
}

}  // namespace

LogSequence make_log_b(double p, SlowGrowth g, std::size_t cutoff) {
    detail::require(p > 0.0 && p < 1.0, "log sequence requires 0 < p < 1");
    detail::require(cutoff >= 1000, "log sequence requires cutoff >= 1000");

    const std::size_t shift = g == SlowGrowth::LogTimesLogLogSquared ? 1 : 0;
    auto h = [g](double n) { return 1.0 / (n * slow_growth(g, n)); };

    std::vector<double> terms(cutoff);
    for (std::size_t i = 0; i < cutoff; ++i) terms[i] = h(static_cast<double>(i + 1 + shift));
    double head_sum = 0.0;
    for (std::size_t i = cutoff; i-- > 0;) head_sum += terms[i];

    // Euler-Maclaurin from n = N: integral + h(N)/2 - h'(N)/12.
    const double n = static_cast<double>(cutoff + 1 + shift);
    const TailIntegral integral = tail_integral(g, n);
    const double step = 0.01 * n;
    const double dh = (h(n + step) - h(n - step)) / (2.0 * step);
    const double d3h = (h(n + 2) - 3.0 * h(n + 1) + 3.0 * h(n) - h(n - 1));
    const double tail_sum = integral.value + 0.5 * h(n) - dh / 12.0;
    const double series = head_sum + tail_sum;

    LogSequence out;
    out.index_shift = shift;
    out.series_sum = series;
    out.c_pg = std::pow(series, -1.0 / p);
    for (double& t : terms) t = out.c_pg * std::pow(t, 1.0 / p);
    out.b = AnisotropySequence(std::move(terms));
    out.tail_mass = tail_sum / series;
    out.normalization_error =
        (integral.error + std::abs(d3h) / 720.0 + 1e-15 * static_cast<double>(cutoff) * head_sum) / series;
    if (out.normalization_error > 1e-6)
        throw DivergenceError("normalization of the log sequence is not accurate to 1e-6");
    return out;
}

}  // namespace holowidths
