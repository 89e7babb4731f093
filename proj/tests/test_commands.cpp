#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gibbsmap/commands.hpp"
#include "gibbsmap/csv_io.hpp"

using namespace gibbsmap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("gibbsmap_cmd_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_summary(const fs::path& dir) { return json::parse(slurp(dir / "summary.json")); }

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        if (c == '\n') ++n;
    }
    return n;
}

AppConfig quick_map_config() {
    return parse_config_text(R"({
      "anneal": {"n_iterations": 200, "keep_every": 50},
      "rng": {"seed": 12}
    })",
                             ".");
}

} // namespace

TEST_CASE("stats command reports pattern statistics") {
    TempDir tmp("stats");
    const PointPattern pattern(Window::unit_square(),
                               {{0.10, 0.10}, {0.15, 0.10}, {0.90, 0.90}});
    write_pattern_csv(tmp.path / "p.csv", pattern);

    const AppConfig strauss = parse_config_text("{}", ".");
    std::ostringstream out;
    const SufficientStats t = cmd_stats(strauss, tmp.path / "p.csv", std::nullopt, out);
    CHECK(t == SufficientStats{3.0, 1.0});
    CHECK(out.str() == "n=3 s_r=1\n");

    // a wider radius captures the far point as well
    std::ostringstream wide;
    const SufficientStats tw = cmd_stats(strauss, tmp.path / "p.csv", 1.5, wide);
    CHECK(tw == SufficientStats{3.0, 3.0});

    const AppConfig poisson = parse_config_text(
        R"({"model": {"kind": "poisson"}, "data": {"stats": [10]}})", ".");
    std::ostringstream pout;
    CHECK(cmd_stats(poisson, tmp.path / "p.csv", std::nullopt, pout) == SufficientStats{3.0});
    CHECK(pout.str() == "n=3\n");
    CHECK_THROWS_AS(cmd_stats(poisson, tmp.path / "p.csv", 0.1, pout), std::invalid_argument);
    CHECK_THROWS_AS(cmd_stats(strauss, tmp.path / "absent.csv", std::nullopt, pout), ParseError);
}

TEST_CASE("simulate command writes samples and a reproducible echo") {
    TempDir tmp("simulate");
    const AppConfig config = parse_config_text(R"({
      "simulate": {"burn_in": 300, "n_samples": 10, "spacing": 5},
      "rng": {"seed": 7}
    })",
                                               ".");
    std::ostringstream out;
    cmd_simulate(config, tmp.path / "run", out, true);

    CHECK(fs::exists(tmp.path / "run" / "samples.csv"));
    CHECK(fs::exists(tmp.path / "run" / "config.json"));
    CHECK(fs::exists(tmp.path / "run" / "pattern.csv"));
    const json summary = read_summary(tmp.path / "run");
    CHECK(summary["command"] == "simulate");
    CHECK(summary["n_samples"] == 10);
    CHECK(summary["mean"].size() == 2);
    CHECK(line_count(slurp(tmp.path / "run" / "samples.csv")) == 11); // header + samples
    // the dumped pattern parses inside the model window
    const PointPattern dumped =
        read_pattern_csv(tmp.path / "run" / "pattern.csv", Window::unit_square());
    CHECK(dumped.size() > 0);
    // wall time is reported on the stream but kept out of the artifacts
    CHECK(out.str().find("wall time") != std::string::npos);
    CHECK(slurp(tmp.path / "run" / "summary.json").find("wall") == std::string::npos);

    // byte-identical rerun
    std::ostringstream out2;
    cmd_simulate(config, tmp.path / "rerun", out2, false);
    CHECK(slurp(tmp.path / "run" / "samples.csv") == slurp(tmp.path / "rerun" / "samples.csv"));
}

TEST_CASE("map command emits trace artifacts and reruns from its own echo") {
    TempDir tmp("map");
    const AppConfig config = quick_map_config();
    std::ostringstream out;
    cmd_map(config, tmp.path / "a", out);

    const std::string trace_text = slurp(tmp.path / "a" / "trace.csv");
    CHECK(line_count(trace_text) == 5); // header + records at 50, 100, 150, 200
    CHECK(trace_text.rfind("iter,theta_0,theta_1,temperature,delta_0,delta_1,accept_rate,"
                           "aux_stat_0,aux_stat_1\n",
                           0) == 0);
    CHECK(fs::exists(tmp.path / "a" / "trace.svg"));

    const json summary = read_summary(tmp.path / "a");
    CHECK(summary["command"] == "map");
    CHECK(summary["theta_final"].size() == 2);
    CHECK(summary["n_iterations"] == 200);
    CHECK(summary["streams"] == 1);
    const double theta0 = summary["theta_final"][0].get<double>();
    CHECK(summary["beta"].get<double>() == doctest::Approx(std::exp(theta0)).epsilon(1e-15));

    // the echoed config reproduces the trace byte for byte
    const AppConfig echoed = load_config(tmp.path / "a" / "config.json");
    std::ostringstream out2;
    cmd_map(echoed, tmp.path / "b", out2);
    CHECK(slurp(tmp.path / "a" / "trace.csv") == slurp(tmp.path / "b" / "trace.csv"));
    CHECK(slurp(tmp.path / "a" / "summary.json") == slurp(tmp.path / "b" / "summary.json"));

    const auto trace = read_trace_csv(tmp.path / "a" / "trace.csv");
    REQUIRE(trace.size() == 4);
    CHECK(trace.back().iteration == 200);
    CHECK(trace.back().theta ==
          std::vector<double>{summary["theta_final"][0].get<double>(),
                              summary["theta_final"][1].get<double>()});
}

TEST_CASE("multi-chain map stays deterministic") {
    TempDir tmp("map_multi");
    AppConfig config = parse_config_text(R"({
      "anneal": {"n_iterations": 120, "keep_every": 40},
      "rng": {"seed": 5, "streams": 3}
    })",
                                         ".");
    std::ostringstream out;
    cmd_map(config, tmp.path / "a", out);
    cmd_map(config, tmp.path / "b", out);
    CHECK(slurp(tmp.path / "a" / "trace.csv") == slurp(tmp.path / "b" / "trace.csv"));
    CHECK(read_summary(tmp.path / "a")["streams"] == 3);
}

TEST_CASE("sample-posterior keeps the thinned tail and summarizes it") {
    TempDir tmp("posterior");
    const AppConfig config = parse_config_text(R"({
      "posterior": {"n_sweeps": 30, "discard": 10, "keep_every": 5},
      "rng": {"seed": 3}
    })",
                                               ".");
    std::ostringstream out;
    cmd_sample_posterior(config, tmp.path / "run", out);

    const auto kept = read_theta_samples_csv(tmp.path / "run" / "theta_samples.csv");
    REQUIRE(kept.size() == 4); // sweeps 15, 20, 25, 30
    CHECK(kept.front().first == 15);
    CHECK(kept.back().first == 30);
    const json summary = read_summary(tmp.path / "run");
    CHECK(summary["command"] == "sample-posterior");
    CHECK(summary["n_kept"] == 4);
    CHECK(summary["temperature"] == 1.0);
    CHECK(summary["mean"].size() == 2);
    CHECK(summary["sd"].size() == 2);
}

TEST_CASE("plot command re-renders an existing trace") {
    TempDir tmp("plot");
    const AppConfig config = quick_map_config();
    std::ostringstream out;
    cmd_map(config, tmp.path / "run", out);
    cmd_plot(tmp.path / "run" / "trace.csv", tmp.path / "replot", out);
    const std::string svg = slurp(tmp.path / "replot" / "trace.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK_THROWS_AS(cmd_plot(tmp.path / "nope.csv", tmp.path / "replot", out), ParseError);
}
