#include "doctest.h"

#include "holowidths/anisotropy.hpp"
#include "holowidths/coefficients.hpp"
#include "holowidths/error.hpp"
#include "holowidths/legendre.hpp"
#include "holowidths/multiindex.hpp"
#include "holowidths/quadrature.hpp"
#include "holowidths/sampling.hpp"

#include <algorithm>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <sstream>

using namespace holowidths;

namespace {

const Moments kUniform{0.0, 1.0 / std::sqrt(3.0)};

double surrogate(const MultiIndex& nu, const std::vector<double>& l) {
    double u = 0.0;
    for (const auto& e : nu.entries()) u += e.exponent * l[e.dim];
    return u;
}

// Rank every index of the box [0, cap]^d by surrogate weight, graded order on ties.
std::vector<MultiIndex> ranked_box(const std::vector<double>& l, Dim d, Exponent cap) {
    std::vector<std::pair<double, MultiIndex>> all;
    std::vector<Exponent> v(d, 0);
    while (true) {
        MultiIndex nu = MultiIndex::from_dense(v);
        all.emplace_back(surrogate(nu, l), std::move(nu));
        std::size_t k = 0;
        while (k < d && ++v[k] > cap) v[k++] = 0;
        if (k == d) break;
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : GradedOrder{}(a.second, b.second);
    });
    std::vector<MultiIndex> out;
    for (auto& [u, nu] : all) out.push_back(std::move(nu));
    return out;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("known-anisotropy set selection on examples") {
    const AnisotropySequence b({0.9, 0.8, 0.7, 0.6});
    CHECK(choose_set_known(b, 3) == IndexSet({MultiIndex{}, MultiIndex::unit(1), MultiIndex::unit(2)}));
    CHECK(choose_set_known(b, 1) == IndexSet({MultiIndex{}}));
    CHECK(choose_set_known(make_algebraic_b(0.5, 1, 100), 1) == IndexSet({MultiIndex{}}));
    CHECK_THROWS_AS((void)choose_set_known(b, 0), PreconditionError);
    CHECK_THROWS_AS((void)choose_set_known(AnisotropySequence({}, Tail::algebraic(1, 1)), 3), DivergenceError);
}

TEST_CASE("known-anisotropy set selection matches exhaustive ranking") {
    boost::random::mt19937_64 rng(23);
    boost::random::uniform_real_distribution<double> u(0.05, 0.95);
    for (int t = 0; t < 30; ++t) {
        std::vector<double> head(5);
        for (auto& x : head) x = u(rng);
        std::sort(head.begin(), head.end(), std::greater<>());
        const AnisotropySequence b(head);
        std::vector<double> l{0.0};
        for (std::size_t k = 1; k <= 6; ++k) l.push_back(std::log1p(1.0 / std::max(b[k], 1e-12)));
        const Exponent cap = 7;
        const auto ranked = ranked_box(l, 6, cap);
        for (std::size_t s : {1u, 2u, 5u, 12u, 30u}) {
            const IndexSet got = choose_set_known(b, s);
            double worst = 0.0;
            for (const auto& nu : got) worst = std::max(worst, surrogate(nu, l));
            // The box holds every index lighter than the heaviest chosen one.
            REQUIRE(worst < std::min((cap + 1) * l[1], l[6]));
            CHECK(got == IndexSet(std::vector<MultiIndex>(ranked.begin(), ranked.begin() + static_cast<long>(s))));
        }
    }
}

TEST_CASE("known-anisotropy sets are anchored and nested") {
    boost::random::mt19937_64 rng(24);
    boost::random::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> head(12);
        for (auto& x : head) x = u(rng);  // not sorted: the majorant takes over
        const AnisotropySequence b(head, Tail::algebraic(2.0, 0.5));
        IndexSet prev;
        for (std::size_t s = 1; s <= 80; s += 7) {
            const IndexSet cur = choose_set_known(b, s);
            CHECK(cur.size() == s);
            CHECK(is_anchored(cur));
            CHECK(prev.is_subset_of(cur));
            prev = cur;
        }
    }
    const auto alg = make_algebraic_b(0.5, 1, 10000);
    const IndexSet big = choose_set_known(alg, 512);
    CHECK(is_anchored(big));
    CHECK(choose_set_known(alg, 100).is_subset_of(big));
}

TEST_CASE("known sampling and reconstruction") {
    Eigen::VectorXd v(2);
    v << 1.5, -0.5;
    const IndexSet s{{MultiIndex{}, MultiIndex::unit(1)}};
    const TestFunction f(1, 2, [v](std::span<const double> y, Eigen::Ref<Codomain> out) { out = legendre_eval(1, y[0]) * v; });
    const auto c = known_sample(f, s);
    CHECK(c.block(0).norm() < 1e-15);
    CHECK((c.block(1).transpose() - v).norm() < 1e-14);

    const auto k = known_sample(TestFunction::constant(v), IndexSet({MultiIndex{}}));
    CHECK((k.block(0).transpose() - v).norm() < 1e-15);

    const std::vector<double> coeffs{0.5, 0.3, 0.2, 0.1, 0.05};
    Eigen::VectorXd one(1);
    one << 1.0;
    const auto g = order_one_test_function(coeffs, one, kUniform);
    const IndexSet sup = downward_closure(std::vector<MultiIndex>{MultiIndex::parse("1:1 5:1"), MultiIndex::parse("3:2"), MultiIndex::parse("2:1 4:1")});
    const auto sampled = known_sample(g, sup, {2, GridKind::PerIndex});
    CHECK(l2_distance(sampled, *g.truth()) < 1e-12);

    // Dropping e4 and e5 leaves exactly their squared coefficients as L2 error.
    const IndexSet partial{{MultiIndex{}, MultiIndex::unit(1), MultiIndex::unit(2), MultiIndex::unit(3), MultiIndex::parse("1:1 2:1")}};
    const auto rec = known_reconstruct(known_sample(g, partial, {2, GridKind::PerIndex}));
    const double err2 = squared_l2_norm(linear_combination(1.0, g, -1.0, rec), 5, 3);
    CHECK(std::abs(err2 - (0.1 * 0.1 + 0.05 * 0.05)) < 1e-12);
    CHECK(l2_distance(*rec.truth(), *g.truth()) == doctest::Approx(std::sqrt(0.0125)).epsilon(1e-12));

    const auto zero = known_reconstruct(CoefficientVector::zeros(partial, 2));
    CHECK(zero(std::vector<double>{0.1, 0.2, 0.3}).norm() == 0.0);
    Eigen::MatrixXd single = Eigen::MatrixXd::Zero(5, 2);
    single.row(4) = v.transpose();
    const auto sv = known_reconstruct(CoefficientVector(partial, single));
    const std::vector<double> y{0.3, -0.6, 0.2};
    CHECK((sv(y) - tensor_legendre_eval(partial[4], y) * v).norm() < 1e-14);
}

TEST_CASE("Gaussian sketch") {
    const IndexSet hc = hyperbolic_cross(9);
    REQUIRE(hc.size() >= 100);
    const IndexSet lam(std::vector<MultiIndex>(hc.begin(), hc.begin() + 100));
    const auto a = gaussian_sketch(200, lam, 99);
    const auto b = gaussian_sketch(200, lam, 99);
    CHECK(a.matrix() == b.matrix());
    CHECK(a.matrix() != gaussian_sketch(200, lam, 100).matrix());
    const Eigen::MatrixXd scaled = a.matrix() * std::sqrt(200.0);
    const Eigen::VectorXd means = scaled.colwise().mean();
    CHECK(std::abs(scaled.mean()) <= 0.02);
    CHECK(means.cwiseAbs().maxCoeff() <= 0.35);  // per column: 200 draws, ~5 standard errors
    const double var = (scaled.array() - scaled.mean()).square().sum() / double(scaled.size() - 1);
    CHECK(var >= 0.9);
    CHECK(var <= 1.1);

    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(100, 2);
    e(7, 0) = 2.0;
    e(7, 1) = -1.0;
    const Eigen::MatrixXd out = a.apply(e);
    CHECK((out.col(0) - 2.0 * a.matrix().col(7)).norm() == 0.0);
    CHECK((out.col(1) + a.matrix().col(7)).norm() == 0.0);
    CHECK_THROWS_AS((void)a.apply(Eigen::MatrixXd::Zero(99, 1)), DimensionMismatch);
    CHECK_THROWS_AS((void)a.apply(CoefficientVector::zeros(hyperbolic_cross(3), 1)), DimensionMismatch);

    std::stringstream ss;
    a.write(ss);
    const auto back = SketchOperator::read(ss);
    CHECK(back.matrix() == a.matrix());
    CHECK(back.index_set() == lam);
    std::istringstream bad("3 7 1\n\n1:1\n");
    CHECK_THROWS_AS((void)SketchOperator::read(bad), ParseError);
}

TEST_CASE("unknown sampling") {
    CHECK(search_space_order(16) == 3);
    CHECK(hyperbolic_cross(search_space_order(16)).size() == 5);
    const std::size_t ms[] = {32, 64, 128, 256};
    const std::uint32_t ns[] = {3, 4, 6, 9};
    for (std::size_t i = 0; i < 4; ++i) CHECK(search_space_order(ms[i]) == ns[i]);
    CHECK_THROWS_AS((void)search_space_order(2), PreconditionError);

    const auto z = unknown_sample(TestFunction::zero(2), 40, 1);
    CHECK(z.measurements.blocks.rows() == 40);
    CHECK(z.measurements.blocks.norm() == 0.0);

    const std::vector<double> c{0.6, -0.3, 0.2};
    Eigen::VectorXd v(2);
    v << 1.0, 2.0;
    const auto f = order_one_test_function(c, v, kUniform);
    const auto smp = unknown_sample(f, 64, 5);
    const Eigen::MatrixXd direct = smp.sketch.matrix() * f.truth()->restricted_to(smp.sketch.index_set()).blocks();
    CHECK((smp.measurements.blocks - direct).cwiseAbs().maxCoeff() < 1e-12);

    const auto g = TestFunction::expansion(CoefficientVector(hyperbolic_cross(4), Eigen::MatrixXd::Ones(13, 2)));
    const auto combo = unknown_sample(linear_combination(2.0, f, -0.5, g), 64, 5);
    const Eigen::MatrixXd expect = 2.0 * smp.measurements.blocks - 0.5 * unknown_sample(g, 64, 5).measurements.blocks;
    CHECK((combo.measurements.blocks - expect).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(unknown_sample(f, 64, 5).measurements.blocks == smp.measurements.blocks);

    std::ostringstream os;
    smp.measurements.write_csv(os);
    CHECK(os.str().rfind("row,k,value\n0,0,", 0) == 0);
}

TEST_CASE("measurement bound") {
    CHECK(measurement_bound(5, 200, 0.05) == 26);
    CHECK(measurement_bound(0, 10, 1.0) == 1);
    CHECK(measurement_bound(8, 200, 0.01) * 4 == 148);
    CHECK(kTheoreticalMeasurementConstant == doctest::Approx(1173.98471167584).epsilon(1e-12));
    for (std::size_t s = 1; s < 50; ++s) CHECK(measurement_bound(s + 1, 400, 0.1) >= measurement_bound(s, 400, 0.1));
    for (std::size_t N = 10; N < 500; N += 10) CHECK(measurement_bound(5, N + 10, 0.1) >= measurement_bound(5, N, 0.1));
    for (double eps = 0.01; eps < 0.99; eps += 0.01) CHECK(measurement_bound(5, 100, eps + 0.01) <= measurement_bound(5, 100, eps));
    CHECK(measurement_bound(5, 200, 0.05, 2.0) == 52);
    CHECK_THROWS_AS((void)measurement_bound(5, 4, 0.1), PreconditionError);
    CHECK_THROWS_AS((void)measurement_bound(1, 4, 0.0), PreconditionError);
}

}
