// Command-line driver for the convergence studies and width tables.
#include "holowidths/error.hpp"
#include "holowidths/experiments.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace hw = holowidths;
namespace fs = std::filesystem;

namespace {

hw::ExperimentConfig load_config(const std::string& path, hw::Pipeline expected) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::stringstream text;
    text << in.rdbuf();
    auto cfg = hw::ExperimentConfig::from_json(text.str());
    if (cfg.pipeline != expected)
        throw hw::PreconditionError("config pipeline is '" + std::string(hw::to_string(cfg.pipeline)) +
                                    "', subcommand is '" + std::string(hw::to_string(expected)) + "'");
    return cfg;
}

void report(const std::vector<fs::path>& files) {
    for (const auto& f : files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling numbers of anisotropic holomorphic function classes"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool verbose = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "Experiment config (JSON)");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Override the config seed");
        sub->add_option("--out", out_dir, "Override the output directory");
        sub->add_flag("--verbose,-v", verbose, "Progress messages on stderr");
    };

    auto* known = app.add_subcommand("known", "Known-anisotropy convergence study");
    auto* unknown = app.add_subcommand("unknown", "Unknown-anisotropy convergence study");
    auto* widths = app.add_subcommand("widths", "Width and lower-bound tables");
    auto* impossibility = app.add_subcommand("impossibility", "Out-of-search-space demonstration");
    auto* selftest = app.add_subcommand("selftest", "Small runs of every pipeline");
    std::string table_word;
    widths->add_option("what", table_word, "Optional 'table'")->check(CLI::IsMember({"table"}));
    for (auto* sub : {known, unknown, widths, impossibility}) add_common(sub, true);
    add_common(selftest, false);

    CLI11_PARSE(app, argc, argv);

    const hw::Log log = [&](const std::string& msg) {
        if (verbose) std::cerr << msg << '\n';
    };

    try {
        if (selftest->parsed()) {
            const fs::path dir = out_dir.empty() ? fs::path("selftest_out") : fs::path(out_dir);
            report(hw::run_selftest(seed.value_or(7), dir, log));
            return 0;
        }
        hw::Pipeline pipeline = known->parsed()         ? hw::Pipeline::Known
                                : unknown->parsed()     ? hw::Pipeline::Unknown
                                : widths->parsed()      ? hw::Pipeline::Widths
                                                        : hw::Pipeline::Impossibility;
        auto cfg = load_config(config_path, pipeline);
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        cfg.validate();
        const fs::path dir(cfg.output_dir);
        switch (pipeline) {
            case hw::Pipeline::Known: report(hw::write_known(hw::run_known_convergence(cfg, log), dir)); break;
            case hw::Pipeline::Unknown: report(hw::write_unknown(hw::run_unknown_convergence(cfg, log), dir)); break;
            case hw::Pipeline::Widths: report(hw::write_widths(hw::run_width_tables(cfg), dir)); break;
            case hw::Pipeline::Impossibility:
                report(hw::write_impossibility(hw::run_impossibility_demo(cfg, log), dir));
                break;
        }
    } catch (const std::exception& e) {
        std::cerr << "holowidths: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
