#include "holowidths/experiments.hpp"

#include "holowidths/anisotropy.hpp"
#include "holowidths/csv.hpp"
#include "holowidths/error.hpp"
#include "holowidths/legendre.hpp"
#include "holowidths/parallel.hpp"
#include "holowidths/plot.hpp"
#include "holowidths/quadrature.hpp"
#include "holowidths/recovery.hpp"
#include "holowidths/sampling.hpp"
#include "holowidths/widths.hpp"

#include "json.hpp"

#include <algorithm>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <cmath>
#include <fstream>
#include <numeric>

namespace holowidths {

namespace fs = std::filesystem;

std::string_view to_string(Pipeline p) {
    switch (p) {
        case Pipeline::Known: return "known";
        case Pipeline::Unknown: return "unknown";
        case Pipeline::Widths: return "widths";
        case Pipeline::Impossibility: return "impossibility";
    }
    return "?";
}

Pipeline pipeline_from_string(std::string_view name) {
    for (auto p : {Pipeline::Known, Pipeline::Unknown, Pipeline::Widths, Pipeline::Impossibility})
        if (to_string(p) == name) return p;
    throw PreconditionError("unknown pipeline '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    detail::require(!m_grid.empty(), "m_grid must not be empty");
    for (std::size_t i = 1; i < m_grid.size(); ++i)
        detail::require(m_grid[i] > m_grid[i - 1], "m_grid must be strictly increasing");
    detail::require(m_grid.front() >= 1, "m_grid entries must be positive");
    if (pipeline == Pipeline::Unknown || pipeline == Pipeline::Impossibility)
        detail::require(m_grid.front() >= 3, "m_grid entries must be >= 3 for sketch pipelines");
    detail::require(trials >= 1, "trials must be >= 1");
    detail::require(p_star > 0.0 && p_star < 1.0, "p_star must lie in (0,1)");
    detail::require(K >= 1, "K must be >= 1");
    detail::require(dims >= 1, "dims must be >= 1");
    detail::require(quad_order >= 1, "quad_order must be >= 1");
    detail::require(c_const > 0.0, "c_const must be positive");
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    ExperimentConfig cfg;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_object()) throw ParseError("config must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            if (key == "pipeline") cfg.pipeline = pipeline_from_string(value.get<std::string>());
            else if (key == "m_grid") cfg.m_grid = value.get<std::vector<std::size_t>>();
            else if (key == "p_star") cfg.p_star = value.get<double>();
            else if (key == "K") cfg.K = value.get<std::size_t>();
            else if (key == "dims") cfg.dims = value.get<std::size_t>();
            else if (key == "trials") cfg.trials = value.get<std::size_t>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "quad_order") cfg.quad_order = value.get<std::uint32_t>();
            else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
            else if (key == "c_const") cfg.c_const = value.get<double>();
            else throw ParseError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    return cfg;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["pipeline"] = std::string(to_string(pipeline));
    j["m_grid"] = m_grid;
    j["p_star"] = p_star;
    j["K"] = K;
    j["dims"] = dims;
    j["trials"] = trials;
    j["seed"] = seed;
    j["quad_order"] = quad_order;
    j["output_dir"] = output_dir;
    j["c_const"] = c_const;
    return j.dump(2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

namespace {

void say(const Log& log, const std::string& msg) {
    if (log) log(msg);
}

Codomain unit_codomain(std::size_t K) {
    return Codomain::Constant(static_cast<Eigen::Index>(K), 1.0 / std::sqrt(static_cast<double>(K)));
}

// c_i = i^(-1/p_star), i = 1..dims, as an order-one function under the uniform measure.
TestFunction algebraic_order_one(const ExperimentConfig& cfg) {
    const AnisotropySequence b = make_algebraic_b(cfg.p_star, 1.0, cfg.dims);
    return order_one_test_function(b.head(), unit_codomain(cfg.K), measure_moments(Measure::Uniform), b);
}

TestFunction single_coordinate(Dim j, std::size_t K) {
    std::vector<double> c(j, 0.0);
    c[j - 1] = 1.0;
    return order_one_test_function(c, unit_codomain(K), measure_moments(Measure::Uniform));
}

struct SketchRun {
    double error;
    BPSolution solution;
};

SketchRun sketch_and_recover(const CoefficientVector& c_lambda, const CoefficientVector& truth, std::size_t m,
                             std::uint64_t seed) {
    UnknownSample sample = unknown_sample(c_lambda, m, seed);
    BPSolution sol = basis_pursuit_block(sample.sketch, sample.measurements);
    const double err = l2_distance(CoefficientVector(sample.sketch.index_set(), sol.blocks), truth);
    return {err, std::move(sol)};
}

std::ofstream open_out(const fs::path& path, std::vector<fs::path>& written) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
    return os;
}

void write_fit_row(CsvWriter& w, std::string_view abscissa, const std::optional<RateFit>& fit, double target) {
    if (fit)
        w << abscissa << fit->slope << fit->intercept << fit->r_squared << target
          << static_cast<unsigned long long>(fit->points.size()) << static_cast<unsigned long long>(fit->excluded);
    else
        w << abscissa << "nan" << "nan" << "nan" << target << 0ULL << 0ULL;
}

std::optional<RateFit> try_fit(const std::vector<RatePoint>& pts) {
    try {
        return fit_rate(pts);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

}  // namespace

KnownResult run_known_convergence(const ExperimentConfig& cfg, const Log& log) {
    cfg.validate();
    const AnisotropySequence b = make_algebraic_b(cfg.p_star, 1.0, cfg.dims);
    const TestFunction f = algebraic_order_one(cfg);
    const CoefficientVector& truth = *f.truth();

    KnownResult out;
    out.target_slope = 0.5 - 1.0 / cfg.p_star;
    std::vector<RatePoint> pts;
    for (std::size_t m : cfg.m_grid) {
        const IndexSet S = choose_set_known(b, m);
        const CoefficientVector coeffs =
            known_sample(f, S, {cfg.quad_order, GridKind::PerIndex, 1e8});
        KnownRow row;
        row.m = m;
        row.set_size = S.size();
        row.dims_used = S.max_dim();
        row.error = l2_distance(coeffs, truth);
        double tail = 0.0;
        for (std::size_t i = cfg.dims; i >= 1; --i)
            if (!S.contains(MultiIndex::unit(static_cast<Dim>(i)))) tail += b[i] * b[i];
        row.tail_oracle = std::sqrt(tail);
        say(log, "known m=" + std::to_string(m) + " |S|=" + std::to_string(S.size()) +
                     " error=" + format_double(row.error));
        out.rows.push_back(row);
        pts.push_back({static_cast<double>(m), row.error});
    }
    out.fit = try_fit(pts);
    return out;
}

UnknownResult run_unknown_convergence(const ExperimentConfig& cfg, const Log& log) {
    cfg.validate();
    const TestFunction f = algebraic_order_one(cfg);
    const CoefficientVector& truth = *f.truth();
    const double f_norm = truth.norm(2.0);

    UnknownResult out;
    out.target_slope = 0.5 - 1.0 / cfg.p_star;
    std::vector<RatePoint> eff, raw;
    for (std::size_t mi = 0; mi < cfg.m_grid.size(); ++mi) {
        const std::size_t m = cfg.m_grid[mi];
        const std::uint32_t n = search_space_order(m);
        const IndexSet lambda = hyperbolic_cross(n);
        const CoefficientVector c_lambda = compute_coefficients(f, lambda, {cfg.quad_order, GridKind::TensorUnion, 1e8});

        std::vector<UnknownTrial> trials(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const std::uint64_t seed = derive_seed(cfg.seed, m, t);
            SketchRun run = sketch_and_recover(c_lambda, truth, m, seed);
            trials[t] = {m, t, seed, run.error, run.solution.objective, run.solution.residual_norm,
                         run.solution.iterations, run.solution.converged};
        });

        UnknownRow row;
        row.m = m;
        row.n = n;
        row.lambda_size = lambda.size();
        row.truncation_error = l2_distance(c_lambda, truth);
        double sum = 0.0;
        for (const auto& t : trials) {
            sum += t.error;
            row.worst_error = std::max(row.worst_error, t.error);
            row.converged += t.converged ? 1 : 0;
            if (t.error > (f_norm + t.objective) * (1.0 + 1e-12)) ++row.ceiling_violations;
        }
        row.mean_error = sum / static_cast<double>(cfg.trials);
        say(log, "unknown m=" + std::to_string(m) + " n=" + std::to_string(n) + " |Lambda|=" +
                     std::to_string(lambda.size()) + " mean error=" + format_double(row.mean_error));
        out.rows.push_back(row);
        out.trials.insert(out.trials.end(), trials.begin(), trials.end());
        const double lm = std::log(static_cast<double>(m));
        eff.push_back({static_cast<double>(m) / (lm * lm), row.mean_error});
        raw.push_back({static_cast<double>(m), row.mean_error});
    }
    out.fit_vs_effective = try_fit(eff);
    out.fit_vs_m = try_fit(raw);
    return out;
}

WidthResult run_width_tables(const ExperimentConfig& cfg, const std::optional<RateFit>& upper) {
    cfg.validate();
    const double p = cfg.p_star;
    const Moments uniform = measure_moments(Measure::Uniform);
    WidthResult out;

    const std::size_t m_max = cfg.m_grid.back();
    const LogSequence log_b = make_log_b(p, SlowGrowth::LogSquared, std::max<std::size_t>(1000, 4 * m_max + 4));
    const AnisotropySequence alg_b = make_algebraic_b(p, 1.0, std::max(cfg.dims, 2 * m_max));
    const double c_log = known_constant(log_b.b, uniform);
    const double c_alg = known_constant(alg_b, uniform);

    for (std::size_t m : cfg.m_grid) {
        const AnisotropySequence flat = make_flat_b(m, p);
        WidthRow row;
        row.m = m;
        row.N = 2 * m;
        row.p = p;
        row.q = 2.0;
        row.stesin = stesin_width({flat.head(), m, 2.0, 1.0});
        row.gelfand_lb = gelfand_lower_bound(row.N, m, p, 2.0);
        row.theta_lb_known = theta_lower_bound_known(flat, m, uniform);
        row.theta_lb_unknown = theta_lower_bound_unknown(p, uniform);
        out.rows.push_back(row);

        const double md = static_cast<double>(m);
        out.families.push_back({m, "flat", best_s_term_error(flat, m, 2.0), row.theta_lb_known,
                                known_constant(flat, uniform) * std::pow(2.0, -1.0 / p) * std::pow(md, 0.5 - 1.0 / p),
                                0.0});
        const double n2 = static_cast<double>(2 * m + log_b.index_shift);
        const double log_ref = c_log * log_b.c_pg * std::sqrt(md) *
                               std::pow(n2 * slow_growth(SlowGrowth::LogSquared, n2), -1.0 / p);
        out.families.push_back({m, "log", best_s_term_error(log_b.b, m, 2.0),
                                theta_lower_bound_known(log_b.b, m, uniform), log_ref, 0.0});
        out.families.push_back({m, "algebraic", best_s_term_error(alg_b, m, 2.0),
                                theta_lower_bound_known(alg_b, m, uniform), c_alg * stechkin_bound(alg_b, p, m),
                                upper ? upper->predict(md) : 0.0});
    }
    return out;
}

ImpossibilityResult run_impossibility_demo(const ExperimentConfig& cfg, const Log& log) {
    cfg.validate();
    const std::uint32_t n_max = search_space_order(cfg.m_grid.back());
    detail::require(n_max >= 2, "largest m must give a search space with at least one active dimension");
    const Dim last_inside = n_max - 1;

    boost::random::mt19937_64 rng(derive_seed(cfg.seed, 0x1u));
    boost::random::uniform_int_distribution<Dim> out_pick(last_inside + 1, last_inside + static_cast<Dim>(cfg.dims));
    boost::random::uniform_int_distribution<Dim> in_pick(1, last_inside);
    std::vector<std::pair<Dim, Dim>> dims(cfg.trials);
    for (auto& d : dims) {
        d.first = out_pick(rng);
        d.second = in_pick(rng);
    }

    ImpossibilityResult out;
    for (std::size_t m : cfg.m_grid) {
        const IndexSet lambda = hyperbolic_cross(search_space_order(m));
        std::vector<ImpossibilityTrial> trials(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const auto [j_out, j_in] = dims[t];
            const std::uint64_t seed = derive_seed(cfg.seed, m, t);
            const QuadratureOptions q{cfg.quad_order, GridKind::TensorUnion, 1e8};
            const TestFunction f_out = single_coordinate(j_out, cfg.K);
            const TestFunction f_in = single_coordinate(j_in, cfg.K);
            const SketchRun r_out = sketch_and_recover(compute_coefficients(f_out, lambda, q), *f_out.truth(), m, seed);
            const SketchRun r_in = sketch_and_recover(compute_coefficients(f_in, lambda, q), *f_in.truth(), m, seed);
            trials[t] = {m, t, j_out, j_in, r_out.error, f_out.truth()->norm(2.0), r_in.error};
        });
        ImpossibilityRow row;
        row.m = m;
        row.lambda_size = lambda.size();
        for (const auto& t : trials) {
            row.mean_out_error += t.out_error / static_cast<double>(cfg.trials);
            row.mean_control_error += t.control_error / static_cast<double>(cfg.trials);
            row.max_orthogonality_gap = std::max(row.max_orthogonality_gap, std::abs(t.out_error - t.out_norm));
        }
        say(log, "impossibility m=" + std::to_string(m) + " out-of-range error=" + format_double(row.mean_out_error) +
                     " control error=" + format_double(row.mean_control_error));
        out.rows.push_back(row);
        out.trials.insert(out.trials.end(), trials.begin(), trials.end());
    }
    const auto& first = out.rows.front();
    const auto& last = out.rows.back();
    auto ratio = [](double a, double b) {
        if (b > 0.0) return a / b;
        return a > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    };
    out.control_improvement = ratio(first.mean_control_error, last.mean_control_error);
    out.ratio_at_largest = ratio(last.mean_out_error, last.mean_control_error);
    return out;
}

std::vector<fs::path> write_known(const KnownResult& r, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    {
        auto os = open_out(dir / "known.csv", written);
        CsvWriter w(os, {"m", "set_size", "dims_used", "error", "tail_oracle"});
        for (const auto& row : r.rows) w << row.m << row.set_size << row.dims_used << row.error << row.tail_oracle;
    }
    {
        auto os = open_out(dir / "known_fit.csv", written);
        CsvWriter w(os, {"abscissa", "slope", "intercept", "r_squared", "target_slope", "points", "excluded"});
        write_fit_row(w, "m", r.fit, r.target_slope);
    }
    {
        auto os = open_out(dir / "known.svg", written);
        Series s{"L2 error", {}};
        for (const auto& row : r.rows) s.points.push_back({static_cast<double>(row.m), row.error});
        std::vector<Series> all{s};
        write_loglog_svg(os, "Known anisotropy: error vs m", "m", "L2 error", all);
    }
    return written;
}

std::vector<fs::path> write_unknown(const UnknownResult& r, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    {
        auto os = open_out(dir / "unknown.csv", written);
        CsvWriter w(os, {"m", "n", "lambda_size", "mean_error", "worst_error", "truncation_error", "converged",
                         "ceiling_violations"});
        for (const auto& row : r.rows)
            w << row.m << row.n << row.lambda_size << row.mean_error << row.worst_error << row.truncation_error
              << row.converged << row.ceiling_violations;
    }
    {
        auto os = open_out(dir / "unknown_trials.csv", written);
        CsvWriter w(os, {"m", "trial", "seed", "error", "objective", "residual", "iterations", "converged"});
        for (const auto& t : r.trials)
            w << t.m << t.trial << static_cast<unsigned long long>(t.seed) << t.error << t.objective << t.residual
              << t.iterations << (t.converged ? 1 : 0);
    }
    {
        auto os = open_out(dir / "unknown_fit.csv", written);
        CsvWriter w(os, {"abscissa", "slope", "intercept", "r_squared", "target_slope", "points", "excluded"});
        write_fit_row(w, "m_over_log2_m", r.fit_vs_effective, r.target_slope);
        write_fit_row(w, "m", r.fit_vs_m, r.target_slope);
    }
    {
        auto os = open_out(dir / "unknown.svg", written);
        Series mean{"mean error", {}}, worst{"worst error", {}};
        for (const auto& row : r.rows) {
            mean.points.push_back({static_cast<double>(row.m), row.mean_error});
            worst.points.push_back({static_cast<double>(row.m), row.worst_error});
        }
        std::vector<Series> all{mean, worst};
        write_loglog_svg(os, "Unknown anisotropy: error vs m", "m", "L2 error", all);
    }
    return written;
}

std::vector<fs::path> write_widths(const WidthResult& r, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    {
        auto os = open_out(dir / "widths.csv", written);
        CsvWriter w(os, {"m", "N", "p", "q", "stesin", "gelfand_lb", "theta_lb_known", "theta_lb_unknown"});
        for (const auto& row : r.rows)
            w << row.m << row.N << row.p << row.q << row.stesin << row.gelfand_lb << row.theta_lb_known
              << row.theta_lb_unknown;
    }
    {
        auto os = open_out(dir / "width_families.csv", written);
        CsvWriter w(os, {"m", "family", "sigma_m", "theta_lb_known", "reference", "empirical_upper"});
        for (const auto& row : r.families)
            w << row.m << row.family << row.sigma_m << row.theta_lb_known << row.reference << row.empirical_upper;
    }
    return written;
}

std::vector<fs::path> write_impossibility(const ImpossibilityResult& r, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    {
        auto os = open_out(dir / "impossibility.csv", written);
        CsvWriter w(os, {"m", "lambda_size", "mean_out_error", "max_orthogonality_gap", "mean_control_error"});
        for (const auto& row : r.rows)
            w << row.m << row.lambda_size << row.mean_out_error << row.max_orthogonality_gap << row.mean_control_error;
    }
    {
        auto os = open_out(dir / "impossibility_trials.csv", written);
        CsvWriter w(os, {"m", "trial", "out_dim", "control_dim", "out_error", "out_norm", "control_error"});
        for (const auto& t : r.trials)
            w << t.m << t.trial << t.out_dim << t.control_dim << t.out_error << t.out_norm << t.control_error;
    }
    {
        auto os = open_out(dir / "impossibility_summary.csv", written);
        CsvWriter w(os, {"control_improvement", "ratio_at_largest"});
        w << r.control_improvement << r.ratio_at_largest;
    }
    {
        auto os = open_out(dir / "impossibility.svg", written);
        Series out{"out of range", {}}, control{"control", {}};
        for (const auto& row : r.rows) {
            out.points.push_back({static_cast<double>(row.m), row.mean_out_error});
            control.points.push_back({static_cast<double>(row.m), row.mean_control_error});
        }
        std::vector<Series> all{out, control};
        write_loglog_svg(os, "Out-of-range vs in-range recovery", "m", "L2 error", all);
    }
    return written;
}

std::vector<fs::path> run_selftest(std::uint64_t seed, const fs::path& dir, const Log& log) {
    std::vector<fs::path> written;
    auto append = [&](std::vector<fs::path> files) { written.insert(written.end(), files.begin(), files.end()); };

    ExperimentConfig known;
    known.pipeline = Pipeline::Known;
    known.m_grid = {4, 8, 16, 32, 64};
    known.dims = 200;
    known.seed = seed;
    const KnownResult kr = run_known_convergence(known, log);
    append(write_known(kr, dir / "known"));

    ExperimentConfig widths = known;
    widths.pipeline = Pipeline::Widths;
    widths.m_grid = {2, 4, 8, 16, 32};
    append(write_widths(run_width_tables(widths, kr.fit), dir / "widths"));

    ExperimentConfig unknown;
    unknown.pipeline = Pipeline::Unknown;
    unknown.m_grid = {16, 32, 64};
    unknown.dims = 16;
    unknown.K = 2;
    unknown.trials = 3;
    unknown.seed = seed;
    append(write_unknown(run_unknown_convergence(unknown, log), dir / "unknown"));

    ExperimentConfig imp = unknown;
    imp.pipeline = Pipeline::Impossibility;
    imp.dims = 8;
    imp.K = 1;
    imp.trials = 2;
    append(write_impossibility(run_impossibility_demo(imp, log), dir / "impossibility"));
    return written;
}

}  // namespace holowidths
