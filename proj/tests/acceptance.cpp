// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "oracles.hpp"

#include "holowidths/anisotropy.hpp"
#include "holowidths/experiments.hpp"
#include "holowidths/multiindex.hpp"
#include "holowidths/quadrature.hpp"
#include "holowidths/recovery.hpp"
#include "holowidths/sampling.hpp"
#include "holowidths/widths.hpp"

#include "CLI11.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace holowidths;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

Eigen::MatrixXd gaussian(boost::random::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    boost::random::normal_distribution<double> n;
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = n(rng);
    return M;
}

std::vector<Eigen::Index> shuffled(boost::random::mt19937_64& rng, Eigen::Index n) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = idx.size(); i > 1; --i) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(idx[i - 1], idx[pick(rng)]);
    }
    return idx;
}

Outcome width_oracle() {
    boost::random::mt19937_64 rng(1);
    boost::random::uniform_real_distribution<double> u(0.01, 10.0);
    const std::pair<double, double> pq[] = {{2, 1}, {kInfinity, 1}, {kInfinity, 2}};
    double worst = 0.0;
    for (std::size_t N = 1; N <= 8; ++N)
        for (int t = 0; t < 100; ++t) {
            std::vector<double> w(N);
            for (auto& x : w) x = u(rng);
            for (std::size_t m = 0; m < N; ++m)
                for (auto [p, q] : pq)
                    worst = std::max(worst, std::abs(stesin_width({w, m, p, q}) - oracle::stesin_by_subsets(w, m, p, q)));
        }
    return {worst <= 1e-10, "max deviation " + fmt(worst) + " (limit 1e-10)"};
}

Outcome flat_lower_bound() {
    double worst = 0.0;
    for (double p : {0.4, 0.5, 0.8})
        for (std::size_t m = 1; m <= 512; ++m) {
            const double exact = std::pow(2.0, -1.0 / p) * std::pow(static_cast<double>(m), 0.5 - 1.0 / p);
            worst = std::max(worst, std::abs(best_s_term_error(make_flat_b(m, p), m, 2.0) - exact));
        }
    return {worst <= 1e-12, "max deviation " + fmt(worst) + " (limit 1e-12)"};
}

Outcome hyperbolic_cross_checks() {
    std::size_t mismatches = 0, bound_violations = 0, escapes = 0;
    for (unsigned n = 1; n <= 12; ++n)
        if (!(hyperbolic_cross(n) == IndexSet(oracle::hyperbolic_cross_box(n)))) ++mismatches;
    for (unsigned n = 2; n <= 20; ++n)
        if (static_cast<double>(hyperbolic_cross(n).size()) > hyperbolic_cross_cardinality_bound(n)) ++bound_violations;
    for (unsigned n = 1; n <= 8; ++n) {
        const IndexSet hc = hyperbolic_cross(n);
        for (std::uint64_t t = 0; t < 1000; ++t) {
            const IndexSet s = random_anchored_set(1 + t % n, derive_seed(n, t));
            if (!is_anchored(s) || !s.is_subset_of(hc)) ++escapes;
        }
    }
    return {mismatches == 0 && bound_violations == 0 && escapes == 0,
            std::to_string(mismatches) + " enumeration mismatches, " + std::to_string(bound_violations) +
                " bound violations, " + std::to_string(escapes) + " anchored sets outside the cross"};
}

Outcome orthonormality() {
    const IndexSet hc = hyperbolic_cross(6);
    const Eigen::MatrixXd g = gram_matrix(hc, 6);
    const auto n = static_cast<Eigen::Index>(hc.size());
    const double dev = (g - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    return {dev <= 1e-10, "max |G - I| = " + fmt(dev) + " over " + std::to_string(n) + " indices (limit 1e-10)"};
}

Outcome known_rate() {
    ExperimentConfig cfg;
    cfg.pipeline = Pipeline::Known;
    cfg.m_grid = {8, 16, 32, 64, 128, 256, 512};
    cfg.p_star = 0.5;
    cfg.dims = 10000;
    const auto r = run_known_convergence(cfg);
    if (!r.fit) return {false, "no rate fit"};
    const bool ok = std::abs(r.fit->slope + 1.5) <= 0.2 && r.fit->r_squared >= 0.98;
    return {ok, "slope " + fmt(r.fit->slope) + " (target -1.5 +/- 0.2), r^2 " + fmt(r.fit->r_squared) + " (min 0.98)"};
}

Outcome exact_recovery() {
    const Eigen::Index N = 200, K = 3, m = 60;
    int exact = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        boost::random::mt19937_64 rng(derive_seed(6, trial));
        const Eigen::MatrixXd A = gaussian(rng, m, N) / std::sqrt(static_cast<double>(m));
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(N, K);
        const auto idx = shuffled(rng, N);
        for (int j = 0; j < 5; ++j) x.row(idx[static_cast<std::size_t>(j)]) = gaussian(rng, 1, K);
        if ((basis_pursuit_block(A, A * x).blocks - x).norm() < 1e-6) ++exact;
    }
    boost::random::mt19937_64 rng(66);
    const Eigen::MatrixXd A = gaussian(rng, m, N);
    const auto zero = basis_pursuit_block(A, Eigen::MatrixXd::Zero(m, K));
    const bool zero_ok = zero.blocks.norm() == 0.0 && zero.objective == 0.0;
    const Eigen::MatrixXd S = gaussian(rng, 40, 40);
    const Eigen::MatrixXd f = gaussian(rng, 40, K);
    const double square_err = (basis_pursuit_block(S, f).blocks - S.fullPivLu().solve(f)).norm();
    const bool ok = exact >= 18 && zero_ok && square_err < 1e-8;
    return {ok, std::to_string(exact) + "/20 exact (min 18), zero data " + (zero_ok ? "exact" : "wrong") +
                    ", square system error " + fmt(square_err)};
}

Outcome rnsp_proxy() {
    const bool constants = rnsp_c1(0.5) == 6.0 && rnsp_c2(0.5) == 9.0;
    const std::size_t s = 8, N = 200;
    const Eigen::Index K = 2;
    const std::size_t m = 4 * measurement_bound(s, N, 0.01, 1.0);
    int within = 0;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        boost::random::mt19937_64 rng(derive_seed(7, trial));
        const Eigen::MatrixXd A = gaussian(rng, static_cast<Eigen::Index>(m), N) / std::sqrt(static_cast<double>(m));
        Eigen::MatrixXd x(N, K);
        const auto idx = shuffled(rng, N);
        for (std::size_t i = 0; i < N; ++i) {
            const Eigen::RowVectorXd dir = gaussian(rng, 1, K);
            x.row(idx[i]) = dir.normalized() / std::pow(static_cast<double>(i + 1), 2.0);
        }
        const auto sol = basis_pursuit_block(A, A * x);
        const double err = (sol.blocks - x).norm();
        const double bound = rnsp_error_bounds(0.5, s, block_best_s_term_l1(x, s)).l2;
        if (err <= bound) ++within;
    }
    const bool ok = constants && within >= 38;
    return {ok, "m=" + std::to_string(m) + ", " + std::to_string(within) + "/40 within 9 sigma_s/sqrt(s) (min 38), C1=6 C2=9 " +
                    (constants ? "exact" : "wrong")};
}

Outcome unknown_rate() {
    ExperimentConfig cfg;
    cfg.pipeline = Pipeline::Unknown;
    cfg.m_grid = {16, 32, 64, 128, 256};
    cfg.trials = 10;
    cfg.p_star = 0.5;
    cfg.dims = 64;
    cfg.seed = 8;
    const auto r = run_unknown_convergence(cfg);
    if (!r.fit_vs_effective) return {false, "no rate fit"};
    const double slope = r.fit_vs_effective->slope;
    return {std::abs(slope + 1.5) <= 0.35,
            "slope vs m/log^2 m " + fmt(slope) + " (target -1.5 +/- 0.35), r^2 " + fmt(r.fit_vs_effective->r_squared)};
}

Outcome impossibility() {
    ExperimentConfig cfg;
    cfg.pipeline = Pipeline::Impossibility;
    cfg.m_grid = {16, 32, 64, 128};
    cfg.trials = 5;
    cfg.dims = 32;
    cfg.seed = 9;
    const auto r = run_impossibility_demo(cfg);
    double gap = 0.0;
    for (const auto& row : r.rows) gap = std::max(gap, row.max_orthogonality_gap);
    const bool ok = gap <= 1e-10 && r.control_improvement >= 10.0 && r.ratio_at_largest >= 10.0;
    return {ok, "max | error - ||f|| | = " + fmt(gap) + " (limit 1e-10), control improvement " +
                    fmt(r.control_improvement) + "x, out/in ratio at largest m " + fmt(r.ratio_at_largest) + "x (min 10)"};
}

std::map<fs::path, std::string> csv_contents(const fs::path& dir) {
    std::map<fs::path, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.path().extension() != ".csv") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), dir)] = ss.str();
    }
    return out;
}

Outcome determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no CLI path given"};
    const fs::path base = fs::temp_directory_path() / "holowidths_acceptance_determinism";
    fs::remove_all(base);
    fs::create_directories(base);
    for (const char* run : {"a", "b"}) {
        const std::string cmd = "\"" + cli + "\" selftest --seed 7 --out \"" + (base / run).string() + "\" > \"" +
                                (base / (std::string(run) + ".log")).string() + "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "selftest run failed: " + cmd};
    }
    const auto a = csv_contents(base / "a"), b = csv_contents(base / "b");
    const bool ok = !a.empty() && a == b;
    fs::remove_all(base);
    return {ok, std::to_string(a.size()) + " CSV files, " + (ok ? "byte-identical" : "differ")};
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    std::string cli;
    app.add_option("--only", only, "Run a single criterion (1-10)");
    app.add_option("--cli", cli, "Path to the holowidths executable");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "width oracle equivalence", 10, width_oracle},
        {2, "flat-b lower bound", 1, flat_lower_bound},
        {3, "hyperbolic-cross correctness", 30, hyperbolic_cross_checks},
        {4, "orthonormality", 20, orthonormality},
        {5, "known-anisotropy rate", 30, known_rate},
        {6, "block basis pursuit exact recovery", 120, exact_recovery},
        {7, "recovery error bound proxy", 240, rnsp_proxy},
        {8, "unknown-anisotropy rate", 600, unknown_rate},
        {9, "impossibility demonstration", 120, impossibility},
        {10, "determinism", 600, [&] { return determinism(cli); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << ": " << o.detail
                  << "; " << fmt(secs, 3) << " s (limit " << c.limit_seconds << " s)" << (in_time ? "" : " TIMEOUT")
                  << std::endl;
    }
    return all ? 0 : 1;
}
