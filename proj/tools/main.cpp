// Command line front end: config + seed handling, subcommand dispatch, and
// the exit-code contract (0 success, 1 usage or config error, 2 runtime
// failure).
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gibbsmap/commands.hpp"
#include "gibbsmap/config.hpp"
#include "gibbsmap/csv_io.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<long> iterations;
    std::optional<int> chains;
};

gibbsmap::AppConfig resolve_config(const GlobalArgs& args, const std::string& subcommand) {
    gibbsmap::AppConfig config;
    if (!args.config_path.empty()) {
        config = gibbsmap::load_config(args.config_path);
    }
    if (args.seed) config.seed = *args.seed;
    if (args.chains) config.streams = *args.chains;
    if (args.iterations) {
        const long n = *args.iterations;
        if (subcommand == "map") {
            config.run.n_iterations = n;
            config.run.keep_every = std::min(config.run.keep_every, n);
        } else if (subcommand == "sample-posterior") {
            config.posterior.n_sweeps = n;
            config.posterior.discard = std::min(config.posterior.discard, n - 1);
        } else if (subcommand == "simulate") {
            config.simulate.n_samples = n;
        }
    }
    config.validate();
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MAP estimation for Gibbs point processes by annealed shadow sampling"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path,
                   "JSON config file; defaults are the shipped Strauss experiment");
    app.add_option("--seed", args.seed, "seed override for all chains");
    app.add_option("--out", args.out_dir, "output directory (created if absent)");
    app.add_option("--iterations", args.iterations,
                   "override the subcommand's main iteration count");
    app.add_option("--chains", args.chains, "independent annealing chains (map)");

    auto* simulate = app.add_subcommand(
        "simulate", "sample reference statistics from the configured model");
    bool dump_pattern = false;
    simulate->add_flag("--dump-pattern", dump_pattern, "also write the final pattern CSV");
    simulate->fallthrough();

    auto* stats = app.add_subcommand("stats", "statistics of a pattern CSV");
    std::string pattern_path;
    std::optional<double> r_override;
    stats->add_option("pattern", pattern_path, "pattern CSV file")->required();
    stats->add_option("--r", r_override, "interaction radius override");
    stats->fallthrough();

    auto* sample_posterior = app.add_subcommand(
        "sample-posterior", "fixed-temperature posterior sampling of the parameters");
    sample_posterior->fallthrough();

    auto* map_cmd = app.add_subcommand("map", "simulated-annealing MAP estimate");
    map_cmd->fallthrough();

    auto* plot = app.add_subcommand("plot", "render a trace CSV as SVG");
    std::string trace_path;
    plot->add_option("trace", trace_path, "trace CSV file")->required();
    plot->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) {
            const auto config = resolve_config(args, "simulate");
            gibbsmap::cmd_simulate(config, args.out_dir, std::cout, dump_pattern);
        } else if (stats->parsed()) {
            const auto config = resolve_config(args, "stats");
            gibbsmap::cmd_stats(config, pattern_path, r_override, std::cout);
        } else if (sample_posterior->parsed()) {
            const auto config = resolve_config(args, "sample-posterior");
            gibbsmap::cmd_sample_posterior(config, args.out_dir, std::cout);
        } else if (map_cmd->parsed()) {
            const auto config = resolve_config(args, "map");
            gibbsmap::cmd_map(config, args.out_dir, std::cout);
        } else if (plot->parsed()) {
            gibbsmap::cmd_plot(trace_path, args.out_dir, std::cout);
        }
    } catch (const gibbsmap::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gibbsmap::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
