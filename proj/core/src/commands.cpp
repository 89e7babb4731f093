#include "gibbsmap/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbsmap/csv_io.hpp"
#include "gibbsmap/sampler.hpp"
#include "gibbsmap/svg_plot.hpp"

namespace gibbsmap {

using nlohmann::json;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    double seconds() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void ensure_out_dir(const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory: " + out_dir.string());
    }
}

void write_summary(const std::filesystem::path& out_dir, const json& summary) {
    const std::filesystem::path path = out_dir / "summary.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file for writing: " + path.string());
    out << summary.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path.string());
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string vec_text(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += ", ";
        s += fmt6(v[i]);
    }
    return s + ")";
}

std::vector<double> column_mean(const std::vector<std::vector<double>>& rows) {
    std::vector<double> mean(rows.front().size(), 0.0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += row[i];
    }
    for (double& m : mean) m /= static_cast<double>(rows.size());
    return mean;
}

std::vector<double> column_sd(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& mean) {
    std::vector<double> var(mean.size(), 0.0);
    if (rows.size() < 2) return var;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < var.size(); ++i) {
            const double d = row[i] - mean[i];
            var[i] += d * d;
        }
    }
    for (double& v : var) v = std::sqrt(v / static_cast<double>(rows.size() - 1));
    return var;
}

} // namespace

void cmd_simulate(const AppConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& out, bool dump_pattern) {
    ensure_out_dir(out_dir);
    const Stopwatch watch;

    RngStream rng(config.seed, 0);
    PointPattern final_pattern(model_window(config.model));
    const std::vector<SufficientStats> samples = reference_sample_stats(
        config.model, config.theta0, config.simulate.burn_in, config.simulate.n_samples,
        config.simulate.spacing, rng, config.shadow.aux, &final_pattern);
    const std::vector<double> mean = column_mean(samples);

    write_stats_samples_csv(out_dir / "samples.csv", samples);
    write_config_echo(out_dir / "config.json", config);
    json artifacts = json::array({"config.json", "samples.csv", "summary.json"});
    if (dump_pattern) {
        write_pattern_csv(out_dir / "pattern.csv", final_pattern);
        artifacts.push_back("pattern.csv");
    }
    write_summary(out_dir, json{{"command", "simulate"},
                                {"n_samples", config.simulate.n_samples},
                                {"mean", mean},
                                {"artifacts", artifacts}});

    out << "simulate: " << samples.size() << " samples, mean stats " << vec_text(mean) << "\n";
    out << "wall time: " << fmt6(watch.seconds()) << " s\n";
}

SufficientStats cmd_stats(const AppConfig& config, const std::filesystem::path& pattern_path,
                          std::optional<double> r_override, std::ostream& out) {
    const PointPattern pattern = read_pattern_csv(pattern_path, model_window(config.model));
    SufficientStats stats;
    if (std::holds_alternative<StraussModel>(config.model)) {
        const double r =
            r_override.value_or(std::get<StraussModel>(config.model).interaction_radius());
        stats = suff_stats(pattern, r);
        out << "n=" << static_cast<long long>(stats[0])
            << " s_r=" << static_cast<long long>(stats[1]) << "\n";
    } else {
        if (r_override) {
            throw std::invalid_argument("stats: r applies only to an interaction model");
        }
        stats = model_stats(config.model, pattern);
        out << "n=" << static_cast<long long>(stats[0]) << "\n";
    }
    return stats;
}

void cmd_map(const AppConfig& config, const std::filesystem::path& out_dir, std::ostream& out) {
    ensure_out_dir(out_dir);
    const Stopwatch watch;

    const MapEstimate estimate =
        run_sa_multi(config.model, config.data_stats, config.prior, config.shadow,
                     config.anneal, config.run, config.theta0, config.seed, config.streams);

    write_trace_csv(out_dir / "trace.csv", estimate.trace);
    write_trace_svg(out_dir / "trace.svg", estimate.trace);
    write_config_echo(out_dir / "config.json", config);

    json summary{{"command", "map"},
                 {"theta_final", estimate.theta_final},
                 {"theta_best", estimate.theta_best},
                 {"accept_rate", estimate.inner_accept_rate},
                 {"n_iterations", config.run.n_iterations},
                 {"streams", config.streams},
                 {"artifacts",
                  json::array({"config.json", "summary.json", "trace.csv", "trace.svg"})}};
    summary["beta"] = std::exp(estimate.theta_final[0]);
    if (estimate.theta_final.size() > 1) summary["gamma"] = std::exp(estimate.theta_final[1]);
    write_summary(out_dir, summary);

    out << "map: theta_final " << vec_text(estimate.theta_final) << ", theta_best "
        << vec_text(estimate.theta_best) << "\n";
    out << "inner acceptance rate: " << fmt6(estimate.inner_accept_rate) << "\n";
    out << "wall time: " << fmt6(watch.seconds()) << " s\n";
}

void cmd_sample_posterior(const AppConfig& config, const std::filesystem::path& out_dir,
                          std::ostream& out) {
    ensure_out_dir(out_dir);
    const Stopwatch watch;

    const PosteriorConfig& post = config.posterior;
    RngStream rng(config.seed, 0);
    ShadowState state = make_initial_state(config.model, config.theta0);
    std::vector<std::pair<long, ParamVector>> kept;
    for (long sweep = 1; sweep <= post.n_sweeps; ++sweep) {
        SweepResult res = shadow_sweep(std::move(state), config.model, config.data_stats,
                                       config.shadow, config.prior, post.temperature, rng);
        state = std::move(res.state);
        if (sweep <= post.discard) continue;
        if ((sweep - post.discard) % post.keep_every == 0 || sweep == post.n_sweeps) {
            kept.emplace_back(sweep, state.theta);
        }
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(kept.size());
    for (const auto& [sweep, theta] : kept) rows.push_back(theta);
    const std::vector<double> mean = column_mean(rows);
    const std::vector<double> sd = column_sd(rows, mean);

    write_theta_samples_csv(out_dir / "theta_samples.csv", kept);
    write_config_echo(out_dir / "config.json", config);
    write_summary(out_dir,
                  json{{"command", "sample-posterior"},
                       {"temperature", post.temperature},
                       {"n_kept", kept.size()},
                       {"mean", mean},
                       {"sd", sd},
                       {"artifacts",
                        json::array({"config.json", "summary.json", "theta_samples.csv"})}});

    out << "sample-posterior: " << kept.size() << " samples kept, mean " << vec_text(mean)
        << ", sd " << vec_text(sd) << "\n";
    out << "wall time: " << fmt6(watch.seconds()) << " s\n";
}

void cmd_plot(const std::filesystem::path& trace_path, const std::filesystem::path& out_dir,
              std::ostream& out) {
    ensure_out_dir(out_dir);
    const std::vector<TraceRecord> trace = read_trace_csv(trace_path);
    const std::filesystem::path svg_path = out_dir / "trace.svg";
    write_trace_svg(svg_path, trace);
    out << "plot: wrote " << svg_path.string() << " (" << trace.size() << " records)\n";
}

} // namespace gibbsmap
