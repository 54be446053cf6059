#include "holowidths/legendre.hpp"

#include "holowidths/coefficients.hpp"
#include "holowidths/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace holowidths {

void legendre_values(std::uint32_t max_degree, double y, std::span<double> out) {
    // Classical recurrence n P_n = (2n-1) y P_{n-1} - (n-1) P_{n-2}, then scale.
    double p_prev = 1.0;
    double p = y;
    out[0] = 1.0;
    if (max_degree >= 1) out[1] = std::sqrt(3.0) * y;
    for (std::uint32_t n = 2; n <= max_degree; ++n) {
        const double next = ((2.0 * n - 1.0) * y * p - (n - 1.0) * p_prev) / n;
        p_prev = p;
        p = next;
        out[n] = std::sqrt(2.0 * n + 1.0) * p;
    }
}

double legendre_eval(std::uint32_t degree, double y) {
    if (!(std::abs(y) <= 1.0)) throw DomainError("Legendre argument outside [-1,1]: " + std::to_string(y));
    std::vector<double> values(degree + 1);
    legendre_values(degree, y, values);
    return values[degree];
}

double tensor_legendre_eval(const MultiIndex& nu, std::span<const double> y) {
    if (nu.max_dim() > y.size())
        throw PreconditionError("point has " + std::to_string(y.size()) + " coordinates, index needs " +
                                std::to_string(nu.max_dim()));
    double prod = 1.0;
    for (const auto& e : nu.entries()) prod *= legendre_eval(e.exponent, y[e.dim - 1]);
    return prod;
}

QuadratureRule gauss_legendre_rule(std::uint32_t q) {
    detail::require(q >= 1, "quadrature rule needs at least one node");
    if (q == 1) return {{0.0}, {1.0}};
    QuadratureRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    const std::uint32_t half = (q + 1) / 2;
    for (std::uint32_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::uint32_t n = 2; n <= q; ++n) {
                const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-14) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (std::uint32_t n = 2; n <= q; ++n) {
            const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
            p0 = p1;
            p1 = p2;
        }
        dp = q * (x * p1 - p0) / (x * x - 1.0);
        const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // half the classical weight
        rule.nodes[i] = -x;
        rule.nodes[q - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[q - 1 - i] = w;
    }
    if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
    return rule;
}

const QuadratureRule& cached_gauss_legendre_rule(std::uint32_t q) {
    static std::mutex mutex;
    static std::map<std::uint32_t, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, gauss_legendre_rule(q)).first;
    return it->second;
}

TestFunction::TestFunction(std::size_t active_dims, std::size_t codomain_dim, Evaluator evaluate)
    : active_dims_(active_dims), codomain_dim_(codomain_dim), evaluate_(std::move(evaluate)) {
    detail::require(codomain_dim_ >= 1, "codomain dimension must be positive");
    detail::require(static_cast<bool>(evaluate_), "test function needs an evaluator");
}

Codomain TestFunction::operator()(std::span<const double> y) const {
    Codomain out(static_cast<Eigen::Index>(codomain_dim_));
    evaluate_into(y, out);
    return out;
}

void TestFunction::evaluate_into(std::span<const double> y, Eigen::Ref<Codomain> out) const {
    if (y.size() < active_dims_)
        throw PreconditionError("point has " + std::to_string(y.size()) + " coordinates, function needs " +
                                std::to_string(active_dims_));
    evaluate_(y, out);
}

TestFunction& TestFunction::with_truth(CoefficientVector coeffs) {
    if (coeffs.codomain_dim() != codomain_dim_) throw DimensionMismatch("truth codomain dimension differs");
    truth_ = std::make_shared<const CoefficientVector>(std::move(coeffs));
    return *this;
}

TestFunction& TestFunction::with_anisotropy(AnisotropySequence b) {
    anisotropy_ = std::move(b);
    return *this;
}

TestFunction& TestFunction::with_sup_bound(double bound) {
    detail::require(bound >= 0.0, "sup bound must be non-negative");
    sup_bound_ = bound;
    return *this;
}

TestFunction TestFunction::expansion(CoefficientVector coeffs) {
    auto shared = std::make_shared<const CoefficientVector>(std::move(coeffs));
    TestFunction f(shared->index_set().max_dim(), std::max<std::size_t>(1, shared->codomain_dim()),
                   [shared](std::span<const double> y, Eigen::Ref<Codomain> out) { out = shared->evaluate(y); });
    f.truth_ = shared;
    return f;
}

TestFunction TestFunction::zero(std::size_t codomain_dim) {
    return expansion(CoefficientVector::zeros(IndexSet({MultiIndex{}}), codomain_dim));
}

TestFunction TestFunction::constant(Codomain v) {
    Eigen::MatrixXd blocks = v.transpose();
    return expansion(CoefficientVector(IndexSet({MultiIndex{}}), std::move(blocks)));
}

namespace {

// Sum of two expansions over the union of their index sets.
CoefficientVector combine(double alpha, const CoefficientVector& a, double beta, const CoefficientVector& b) {
    std::vector<MultiIndex> members(a.index_set().begin(), a.index_set().end());
    for (const auto& nu : b.index_set())
        if (!a.index_set().contains(nu)) members.push_back(nu);
    IndexSet uni(std::move(members));
    CoefficientVector ra = a.restricted_to(uni);
    CoefficientVector rb = b.restricted_to(uni);
    return CoefficientVector(uni, alpha * ra.blocks() + beta * rb.blocks());
}

}  // namespace

TestFunction linear_combination(double alpha, const TestFunction& f, double beta, const TestFunction& g) {
    if (f.codomain_dim() != g.codomain_dim()) throw DimensionMismatch("codomain dimensions differ");
    TestFunction h(std::max(f.active_dims(), g.active_dims()), f.codomain_dim(),
                   [alpha, beta, f, g](std::span<const double> y, Eigen::Ref<Codomain> out) {
                       Codomain a(static_cast<Eigen::Index>(f.codomain_dim()));
                       f.evaluate_into(y, a);
                       g.evaluate_into(y, out);
                       out = alpha * a + beta * out;
                   });
    if (f.truth() && g.truth()) h.with_truth(combine(alpha, *f.truth(), beta, *g.truth()));
    return h;
}

TestFunction order_one_test_function(std::span<const double> c, const Codomain& v, Moments moments) {
    detail::require(v.size() >= 1 && v.norm() > 0.0, "order-one test function needs a nonzero v");
    detail::require(moments.sigma > 0.0, "sigma must be positive");
    std::vector<double> coeffs(c.begin(), c.end());
    const std::size_t d = coeffs.size();
    double c1 = 0.0, csum = 0.0;
    for (double x : coeffs) {
        c1 += std::abs(x);
        csum += x;
    }

    std::vector<MultiIndex> members{MultiIndex{}};
    for (std::size_t i = 1; i <= d; ++i) members.push_back(MultiIndex::unit(static_cast<Dim>(i)));
    IndexSet set(std::move(members));
    Eigen::MatrixXd blocks(static_cast<Eigen::Index>(set.size()), v.size());
    blocks.row(0) = (-moments.tau * csum / moments.sigma) * v.transpose();
    for (std::size_t i = 1; i <= d; ++i) {
        const auto pos = *set.position(MultiIndex::unit(static_cast<Dim>(i)));
        blocks.row(static_cast<Eigen::Index>(pos)) =
            (coeffs[i - 1] / (moments.sigma * std::sqrt(3.0))) * v.transpose();
    }

    TestFunction f(d, static_cast<std::size_t>(v.size()),
                   [coeffs = std::move(coeffs), v, moments](std::span<const double> y, Eigen::Ref<Codomain> out) {
                       double s = 0.0;
                       for (std::size_t i = 0; i < coeffs.size(); ++i)
                           if (coeffs[i] != 0.0) s += coeffs[i] * (y[i] - moments.tau);
                       out = (s / moments.sigma) * v;
                   });
    f.with_truth(CoefficientVector(std::move(set), std::move(blocks)));
    f.with_sup_bound((v.norm() / moments.sigma) * (1.0 + (std::abs(moments.tau) + 1.0) * c1));
    return f;
}

TestFunction order_one_test_function(std::span<const double> c, const Codomain& v, Moments moments,
                                     AnisotropySequence b) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (std::abs(c[i]) > b[i + 1])
            throw PreconditionError("coefficient " + std::to_string(i + 1) + " exceeds the anisotropy bound");
    TestFunction f = order_one_test_function(c, v, moments);
    f.with_anisotropy(std::move(b));
    return f;
}

}  // namespace holowidths
