#include "doctest.h"
#include "oracles.hpp"

#include "holowidths/error.hpp"
#include "holowidths/multiindex.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <set>
#include <sstream>

using namespace holowidths;

namespace {

MultiIndex mi(std::initializer_list<Exponent> dense) {
    std::vector<Exponent> v(dense);
    return MultiIndex::from_dense(v);
}

IndexSet set_of(std::initializer_list<MultiIndex> members) { return IndexSet(std::vector<MultiIndex>(members)); }

}  // namespace

TEST_SUITE("multiindex") {

TEST_CASE("sparse storage drops zeros and rejects malformed entries") {
    MultiIndex nu({{3, 2}, {1, 0}, {2, 1}});
    CHECK(nu.support_size() == 2);
    CHECK(nu[1] == 0);
    CHECK(nu[2] == 1);
    CHECK(nu[3] == 2);
    CHECK(nu.total_degree() == 3);
    CHECK(nu.max_dim() == 3);
    CHECK(nu.hyperbolic_weight() == 6);
    CHECK(nu == mi({0, 1, 2}));
    CHECK_THROWS_AS(MultiIndex({{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(MultiIndex({{2, 1}, {2, 3}}), PreconditionError);
    CHECK(MultiIndex{}.is_zero());
    CHECK(MultiIndex::unit(4).unit_dim() == 4u);
    CHECK_FALSE(mi({2}).unit_dim().has_value());
}

TEST_CASE("increment, decrement and componentwise order") {
    const MultiIndex nu = mi({1, 0, 2});
    CHECK(nu.incremented(2) == mi({1, 1, 2}));
    CHECK(nu.decremented(1) == mi({0, 0, 2}));
    CHECK_THROWS_AS((void)nu.decremented(2), PreconditionError);
    CHECK(mi({1}).precedes_or_equals(nu));
    CHECK_FALSE(mi({0, 1}).precedes_or_equals(nu));
    CHECK(nu.dense(4) == std::vector<Exponent>{1, 0, 2, 0});
}

TEST_CASE("text form round trips and rejects garbage") {
    const MultiIndex nu = mi({0, 3, 0, 1});
    CHECK(nu.to_string() == "2:3 4:1");
    CHECK(MultiIndex::parse(nu.to_string()) == nu);
    CHECK(MultiIndex::parse("") == MultiIndex{});
    CHECK_THROWS_AS(MultiIndex::parse("2"), ParseError);
    CHECK_THROWS_AS(MultiIndex::parse("2:x"), ParseError);
    CHECK_THROWS_AS(MultiIndex::parse("2:1 2:3"), ParseError);
    CHECK_THROWS_AS(MultiIndex::parse("0:1"), ParseError);
    CHECK_THROWS_AS(MultiIndex::parse("1:0"), ParseError);
}

TEST_CASE("graded order lists lower degrees first, then earlier dimensions") {
    const IndexSet s = set_of({mi({0, 2}), mi({1, 1}), mi({}), mi({0, 1}), mi({2}), mi({1})});
    const std::vector<MultiIndex> expected{mi({}), mi({1}), mi({0, 1}), mi({2}), mi({1, 1}), mi({0, 2})};
    CHECK(s.members() == expected);
    CHECK_THROWS_AS(set_of({mi({1}), mi({1})}), PreconditionError);
}

TEST_CASE("hyperbolic cross small cases") {
    CHECK(hyperbolic_cross(1) == set_of({MultiIndex{}}));
    CHECK(hyperbolic_cross(3) == set_of({mi({}), mi({1}), mi({2}), mi({0, 1}), mi({0, 2})}));
    CHECK_THROWS_AS((void)hyperbolic_cross(0), PreconditionError);
}

TEST_CASE("hyperbolic cross equals box enumeration and known cardinalities") {
    const std::vector<std::size_t> cardinality{1, 2, 5, 13, 23, 56, 82, 190, 289, 454,
                                               581, 1442, 1817, 2406, 3109, 6771, 8277, 12598, 15064, 21452};
    for (unsigned n = 1; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(hyperbolic_cross(n) == IndexSet(oracle::hyperbolic_cross_box(n)));
    }
    for (unsigned n = 1; n <= 20; ++n) {
        CAPTURE(n);
        const IndexSet hc = hyperbolic_cross(n);
        CHECK(hc.size() == cardinality[n - 1]);
        CHECK(is_anchored(hc));
        if (n >= 2) CHECK(static_cast<double>(hc.size()) <= hyperbolic_cross_cardinality_bound(n));
    }
}

TEST_CASE("lower and anchored predicates on examples") {
    CHECK(is_lower(set_of({mi({}), mi({1})})));
    CHECK_FALSE(is_lower(set_of({mi({1})})));
    CHECK(is_anchored(set_of({mi({}), mi({1}), mi({0, 1})})));
    CHECK_FALSE(is_anchored(set_of({mi({}), mi({0, 1})})));
    CHECK(is_lower(set_of({mi({}), mi({0, 1})})));
    CHECK(is_lower(IndexSet{}));
}

TEST_CASE("downward closures are lower; removing a non-maximal member breaks that") {
    boost::random::mt19937_64 rng(11);
    boost::random::uniform_int_distribution<Exponent> digit(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<MultiIndex> seeds;
        for (int k = 0; k < 3; ++k) seeds.push_back(MultiIndex::from_dense(std::vector<Exponent>{digit(rng), digit(rng), digit(rng)}));
        const IndexSet closed = downward_closure(seeds);
        REQUIRE(is_lower(closed));
        for (const auto& s : seeds) CHECK(closed.contains(s));
        // Brute-force: everything in the box below a seed is present.
        for (const auto& s : seeds) {
            const auto top = s.dense(3);
            for (Exponent a = 0; a <= top[0]; ++a)
                for (Exponent b = 0; b <= top[1]; ++b)
                    for (Exponent c = 0; c <= top[2]; ++c)
                        CHECK(closed.contains(MultiIndex::from_dense(std::vector<Exponent>{a, b, c})));
        }
        for (std::size_t i = 0; i < closed.size(); ++i) {
            const MultiIndex& nu = closed[i];
            bool interior = false;
            for (Dim k = 1; k <= 4 && !interior; ++k) interior = closed.contains(nu.incremented(k));
            if (!interior) continue;
            std::vector<MultiIndex> rest;
            for (std::size_t j = 0; j < closed.size(); ++j)
                if (j != i) rest.push_back(closed[j]);
            CHECK_FALSE(is_lower(IndexSet(rest)));
            break;
        }
    }
}

TEST_CASE("random anchored growth stays anchored and inside the hyperbolic cross") {
    for (unsigned n = 1; n <= 8; ++n) {
        const IndexSet hc = hyperbolic_cross(n);
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const std::size_t size = 1 + seed % n;
            const IndexSet s = random_anchored_set(size, seed * 31 + n);
            REQUIRE(s.size() == size);
            REQUIRE(is_anchored(s));
            REQUIRE(s.is_subset_of(hc));
        }
    }
    CHECK(random_anchored_set(6, 3) == random_anchored_set(6, 3));
}

TEST_CASE("monotone majorant") {
    const std::vector<double> z{1, 0.5, 0.8, 0.1};
    CHECK(monotone_majorant(z) == std::vector<double>{1, 0.8, 0.8, 0.1});
    const std::vector<double> dec{3, 2, 2, 1, 0};
    CHECK(monotone_majorant(dec) == dec);
    CHECK(monotone_majorant(std::vector<double>{-2, 1}) == std::vector<double>{2, 1});

    boost::random::mt19937_64 rng(5);
    boost::random::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(1 + trial % 17);
        for (auto& v : x) v = u(rng);
        const auto mm = monotone_majorant(x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double sup = 0.0;
            for (std::size_t j = i; j < x.size(); ++j) sup = std::max(sup, std::abs(x[j]));
            CHECK(mm[i] == sup);
        }
        CHECK(monotone_majorant(mm) == mm);
    }
}

TEST_CASE("anchored majorant matches the two-case definition") {
    const IndexSet s = set_of({mi({}), mi({1}), mi({0, 1}), mi({1, 1})});
    const std::vector<double> norms{1, 0.2, 0.5, 0.3};
    CHECK(anchored_majorant(s, norms) == std::vector<double>{1, 0.5, 0.5, 0.3});
    CHECK(anchored_majorant(s, std::vector<double>(4, 0.7)) == std::vector<double>(4, 0.7));
    CHECK_THROWS_AS((void)anchored_majorant(set_of({mi({1})}), std::vector<double>{1}), PreconditionError);
    CHECK_THROWS_AS((void)anchored_majorant(s, std::vector<double>{1}), DimensionMismatch);

    boost::random::mt19937_64 rng(9);
    boost::random::uniform_int_distribution<Exponent> digit(0, 4);
    boost::random::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<MultiIndex> seeds;
        for (int k = 0; k < 3; ++k) seeds.push_back(MultiIndex::from_dense(std::vector<Exponent>{digit(rng), digit(rng)}));
        const IndexSet set = downward_closure(seeds);
        std::vector<double> c(set.size());
        for (auto& v : c) v = u(rng);
        const auto got = anchored_majorant(set, c);
        for (std::size_t i = 0; i < set.size(); ++i) {
            const MultiIndex& nu = set[i];
            double sup = 0.0;
            for (std::size_t j = 0; j < set.size(); ++j) {
                const MultiIndex& mu = set[j];
                bool counts = false;
                if (auto d = nu.unit_dim()) {
                    for (Dim k = *d; k <= 2; ++k) counts = counts || MultiIndex::unit(k).precedes_or_equals(mu);
                } else {
                    counts = nu.precedes_or_equals(mu);
                }
                if (counts) sup = std::max(sup, c[j]);
            }
            CHECK(got[i] == sup);
        }
        // Anchored-monotone: mu >= nu implies c~_mu <= c~_nu.
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = 0; j < set.size(); ++j)
                if (set[i].precedes_or_equals(set[j])) CHECK(got[j] <= got[i]);
    }
}

TEST_CASE("index set text format round trips") {
    const IndexSet hc = hyperbolic_cross(7);
    const std::string text = hc.serialize();
    CHECK(text.substr(0, 5) == "\n1:1\n");
    CHECK(IndexSet::parse(text) == hc);
    std::istringstream is("\n1:1\r\n2:1\n");
    CHECK(IndexSet::read(is) == set_of({mi({}), mi({1}), mi({0, 1})}));
    CHECK_THROWS_AS(IndexSet::parse("1:1\n1:1\n"), ParseError);
    CHECK_THROWS_AS(IndexSet::parse("1:a\n"), ParseError);
}

TEST_CASE("index set queries") {
    const IndexSet hc = hyperbolic_cross(6);
    CHECK(hc.active_dims() == std::vector<Dim>{1, 2, 3, 4, 5});
    CHECK(hc.max_degree(1) == 5);
    CHECK(hc.max_dim() == 5);
    CHECK(hc.position(MultiIndex{}) == 0u);
    CHECK_FALSE(hc.position(mi({6})).has_value());
    CHECK(hyperbolic_cross(4).is_subset_of(hc));
    CHECK_FALSE(hc.is_subset_of(hyperbolic_cross(4)));
}

}
