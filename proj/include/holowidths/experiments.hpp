// Convergence studies, width tables and the impossibility demonstration.
#pragma once

#include "holowidths/multiindex.hpp"
#include "holowidths/rate_fit.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holowidths {

enum class Pipeline { Known, Unknown, Widths, Impossibility };

[[nodiscard]] std::string_view to_string(Pipeline p);
[[nodiscard]] Pipeline pipeline_from_string(std::string_view name);

struct ExperimentConfig {
    Pipeline pipeline = Pipeline::Known;
    std::vector<std::size_t> m_grid;
    double p_star = 0.5;
    std::size_t K = 1;
    std::size_t dims = 64;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::uint32_t quad_order = 2;
    std::string output_dir = "out";
    double c_const = 1.0;

    /// Throws PreconditionError when the invariants fail.
    void validate() const;
    /// Unknown keys are rejected; absent keys keep their defaults.
    static ExperimentConfig from_json(std::string_view text);
    [[nodiscard]] std::string to_json() const;
};

/// Deterministic per-task seed derived from the run seed and task coordinates.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

using Log = std::function<void(const std::string&)>;

struct KnownRow {
    std::size_t m = 0;
    std::size_t set_size = 0;
    std::size_t dims_used = 0;  // largest dimension in S
    double error = 0.0;         // L2 error of the reconstruction
    double tail_oracle = 0.0;   // sqrt of sum of c_i^2 over e_i outside S
};

struct KnownResult {
    std::vector<KnownRow> rows;
    std::optional<RateFit> fit;
    double target_slope = 0.0;  // 1/2 - 1/p_star
};

struct UnknownRow {
    std::size_t m = 0;
    std::uint32_t n = 0;
    std::size_t lambda_size = 0;
    double mean_error = 0.0;
    double worst_error = 0.0;
    double truncation_error = 0.0;  // ||c - c_Lambda||
    std::size_t converged = 0;
    std::size_t ceiling_violations = 0;  // trials with error > ||f|| + objective
};

struct UnknownTrial {
    std::size_t m = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double error = 0.0;
    double objective = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct UnknownResult {
    std::vector<UnknownRow> rows;
    std::vector<UnknownTrial> trials;
    std::optional<RateFit> fit_vs_effective;  // abscissa m / log^2 m
    std::optional<RateFit> fit_vs_m;
    double target_slope = 0.0;
};

struct WidthRow {
    std::size_t m = 0;
    std::size_t N = 0;
    double p = 0.0;
    double q = 0.0;
    double stesin = 0.0;
    double gelfand_lb = 0.0;
    double theta_lb_known = 0.0;
    double theta_lb_unknown = 0.0;
};

struct FamilyRow {
    std::size_t m = 0;
    std::string family;
    double sigma_m = 0.0;
    double theta_lb_known = 0.0;
    double reference = 0.0;  // flat: exact formula; log: lower bound; algebraic: Stechkin upper bound
    double empirical_upper = 0.0;  // fitted c m^slope from a convergence run, 0 when absent
};

struct WidthResult {
    std::vector<WidthRow> rows;
    std::vector<FamilyRow> families;
};

struct ImpossibilityTrial {
    std::size_t m = 0;
    std::size_t trial = 0;
    Dim out_dim = 0;
    Dim control_dim = 0;
    double out_error = 0.0;
    double out_norm = 0.0;
    double control_error = 0.0;
};

struct ImpossibilityRow {
    std::size_t m = 0;
    std::size_t lambda_size = 0;
    double mean_out_error = 0.0;
    double max_orthogonality_gap = 0.0;  // max | error - ||f|| | over trials
    double mean_control_error = 0.0;
};

struct ImpossibilityResult {
    std::vector<ImpossibilityRow> rows;
    std::vector<ImpossibilityTrial> trials;
    double control_improvement = 0.0;  // control error at the first m over the last m
    double ratio_at_largest = 0.0;     // out-of-range over in-range error at the largest m
};

[[nodiscard]] KnownResult run_known_convergence(const ExperimentConfig& cfg, const Log& log = {});
[[nodiscard]] UnknownResult run_unknown_convergence(const ExperimentConfig& cfg, const Log& log = {});
[[nodiscard]] WidthResult run_width_tables(const ExperimentConfig& cfg, const std::optional<RateFit>& upper = {});
[[nodiscard]] ImpossibilityResult run_impossibility_demo(const ExperimentConfig& cfg, const Log& log = {});

/// Each writer creates `dir` and returns the files it wrote, in a fixed order.
std::vector<std::filesystem::path> write_known(const KnownResult& r, const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_unknown(const UnknownResult& r, const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_widths(const WidthResult& r, const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_impossibility(const ImpossibilityResult& r, const std::filesystem::path& dir);

/// Small runs of every pipeline into `dir`.
std::vector<std::filesystem::path> run_selftest(std::uint64_t seed, const std::filesystem::path& dir,
                                                const Log& log = {});

}  // namespace holowidths
