#include "holowidths/sampling.hpp"

#include "holowidths/csv.hpp"
#include "holowidths/error.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace holowidths {

SketchOperator::SketchOperator(std::size_t rows, IndexSet set, std::uint64_t seed)
    : set_(std::move(set)), seed_(seed) {
    detail::require(rows >= 1, "sketch needs at least one row");
    detail::require(!set_.empty(), "sketch needs a nonempty index set");
    const auto m = static_cast<Eigen::Index>(rows);
    const auto n = static_cast<Eigen::Index>(set_.size());
    matrix_.resize(m, n);
    boost::random::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) matrix_(i, j) = scale * normal(rng);
}

Eigen::MatrixXd SketchOperator::apply(const Eigen::MatrixXd& blocks) const {
    if (blocks.rows() != matrix_.cols())
        throw DimensionMismatch("sketch has " + std::to_string(matrix_.cols()) + " columns, got " +
                                std::to_string(blocks.rows()) + " blocks");
    return matrix_ * blocks;
}

Eigen::MatrixXd SketchOperator::apply(const CoefficientVector& coeffs) const {
    if (!(coeffs.index_set() == set_)) throw DimensionMismatch("coefficients live on a different index set");
    return apply(coeffs.blocks());
}

void SketchOperator::write(std::ostream& os) const {
    os << rows() << ' ' << cols() << ' ' << seed_ << '\n';
    set_.write(os);
}

SketchOperator SketchOperator::read(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("sketch header missing");
    std::istringstream hs(header);
    std::size_t m = 0, n = 0;
    std::uint64_t seed = 0;
    if (!(hs >> m >> n >> seed)) throw ParseError("sketch header must be 'm N seed'");
    IndexSet set = IndexSet::read(is);
    if (set.size() != n) throw ParseError("sketch header says N=" + std::to_string(n) + ", index set has " +
                                          std::to_string(set.size()));
    return SketchOperator(m, std::move(set), seed);
}

void Measurements::write_csv(std::ostream& os) const {
    CsvWriter w(os, {"row", "k", "value"});
    for (Eigen::Index i = 0; i < blocks.rows(); ++i)
        for (Eigen::Index k = 0; k < blocks.cols(); ++k) w << static_cast<long long>(i) << static_cast<long long>(k) << blocks(i, k);
}

IndexSet choose_set_known(const AnisotropySequence& b, std::size_t s) {
    detail::require(s >= 1, "set size must be positive");
    (void)lp_norm(b, 1.0);  // finite l^1 norm required

    // Weights l_k from the monotone majorant, so l is nondecreasing in k and
    // every index has a predecessor of no larger weight that precedes it.
    constexpr double kFloor = 1e-12;
    const std::vector<double> head_majorant = monotone_majorant(b.head());
    const double tail_start = b[b.head_size() + 1];
    auto weight = [&](Dim k) {
        const double bk = k <= head_majorant.size() ? std::max(head_majorant[k - 1], tail_start) : b[k];
        return std::log1p(1.0 / std::max(bk, kFloor));
    };
    std::vector<double> l{0.0};
    auto l_at = [&](Dim k) {
        while (l.size() <= k) l.push_back(weight(static_cast<Dim>(l.size())));
        return l[k];
    };
    auto u_of = [&](const MultiIndex& nu) {
        double u = 0.0;
        for (const auto& e : nu.entries()) u += e.exponent * l_at(e.dim);
        return u;
    };

    struct Candidate {
        double u;
        MultiIndex nu;
    };
    auto later = [](const Candidate& a, const Candidate& c) {
        if (a.u != c.u) return a.u > c.u;
        return GradedOrder{}(c.nu, a.nu);
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(later)> queue(later);
    std::unordered_set<MultiIndex, MultiIndexHash> seen;
    auto push = [&](MultiIndex nu) {
        if (seen.insert(nu).second) queue.push({u_of(nu), std::move(nu)});
    };

    push(MultiIndex{});
    std::vector<MultiIndex> chosen;
    while (chosen.size() < s) {
        Candidate top = queue.top();
        queue.pop();
        const Dim K = top.nu.max_dim();
        for (Dim k = 1; k <= K + 1; ++k) push(top.nu.incremented(k));
        if (K > 0 && top.nu[K] == 1) push(top.nu.decremented(K).incremented(K + 1));
        chosen.push_back(std::move(top.nu));
    }
    IndexSet out(std::move(chosen));
    if (!is_anchored(out)) throw std::logic_error("choose_set_known produced a non-anchored set");
    return out;
}

CoefficientVector known_sample(const TestFunction& f, const IndexSet& S, const QuadratureOptions& opts) {
    return compute_coefficients(f, S, opts);
}

TestFunction known_reconstruct(CoefficientVector coeffs) { return TestFunction::expansion(std::move(coeffs)); }

SketchOperator gaussian_sketch(std::size_t m, IndexSet set, std::uint64_t seed) {
    return SketchOperator(m, std::move(set), seed);
}

std::uint32_t search_space_order(std::size_t m) {
    detail::require(m >= 3, "search space order needs m >= 3");
    const double lm = std::log(static_cast<double>(m));
    return static_cast<std::uint32_t>(std::ceil(static_cast<double>(m) / (lm * lm)));
}

UnknownSample unknown_sample(const TestFunction& f, std::size_t m, std::uint64_t seed,
                             const QuadratureOptions& opts) {
    IndexSet lambda = hyperbolic_cross(search_space_order(m));
    return unknown_sample(compute_coefficients(f, lambda, opts), m, seed);
}

UnknownSample unknown_sample(CoefficientVector c_lambda, std::size_t m, std::uint64_t seed) {
    SketchOperator sketch(m, hyperbolic_cross(search_space_order(m)), seed);
    Measurements meas{sketch.apply(c_lambda)};
    return {std::move(meas), std::move(sketch), std::move(c_lambda)};
}

std::size_t measurement_bound(std::size_t s, std::size_t N, double eps, double c_const) {
    detail::require(N >= 1 && s <= N, "measurement bound needs 0 <= s <= N, N >= 1");
    detail::require(eps > 0.0 && eps <= 1.0, "measurement bound needs 0 < eps <= 1");
    detail::require(c_const > 0.0, "measurement constant must be positive");
    const double sd = static_cast<double>(s);
    const double sparse = s == 0 ? 0.0 : sd * std::log(2.0 * static_cast<double>(N) / sd);
    return static_cast<std::size_t>(std::ceil(c_const * (sparse + std::log(2.0 / eps))));
}

}  // namespace holowidths
