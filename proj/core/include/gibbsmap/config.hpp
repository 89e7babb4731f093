#ifndef GIBBSMAP_CONFIG_HPP
#define GIBBSMAP_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "gibbsmap/anneal.hpp"
#include "gibbsmap/models.hpp"
#include "gibbsmap/shadow.hpp"

namespace gibbsmap {

// Invalid or inconsistent run configuration (bad JSON, unknown keys, values
// outside their domain, missing referenced files).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters of the `simulate` subcommand: a long birth/death chain from the
// empty pattern, statistics recorded every `spacing` steps after burn-in.
struct SimulateConfig {
    long burn_in = 100000;
    long n_samples = 1000;
    long spacing = 100;

    void validate() const;
};

// Parameters of the fixed-temperature `sample-posterior` subcommand.
struct PosteriorConfig {
    double temperature = 1.0;
    long n_sweeps = 2500;
    long discard = 500;   // initial sweeps dropped before summarizing
    long keep_every = 1;  // thinning of the written sample file

    void validate() const;
};

// Fully resolved run configuration. The defaults are the Strauss repulsion
// experiment: beta = 100, gamma = 0.5, r = 0.1 on the unit square, uniform
// prior on [0,7] x [-7,0], proposal widths 0.01, 200 inner updates per sweep,
// 100 auxiliary MH steps, geometric cooling from 1e4 with rate 0.9999, and
// observed statistics (45.30, 17.99).
struct AppConfig {
    GibbsModel model = StraussModel(0.1, Window::unit_square());
    ParamVector theta0 = {std::log(100.0), std::log(0.5)};
    PriorBox prior{{0.0, -7.0}, {7.0, 0.0}};
    ShadowConfig shadow{{0.01, 0.01}, 200, MhConfig{}, ProposalKind::box};
    AnnealSchedule anneal;
    RunConfig run;
    SufficientStats data_stats = {45.30, 17.99};
    std::uint64_t seed = 1;
    int streams = 1;
    SimulateConfig simulate;
    PosteriorConfig posterior;

    // Cross-field consistency: dimensions agree, theta0 lies in the prior
    // box, and a Strauss prior box keeps log gamma nonpositive. Throws
    // ConfigError.
    void validate() const;
};

// Reads and validates a JSON config file. Relative pattern paths in the data
// section resolve against the config file's directory; the pattern is loaded
// immediately and reduced to its statistics.
AppConfig load_config(const std::filesystem::path& path);

// Same, from an in-memory string (base_dir anchors relative pattern paths).
AppConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir);

// Canonical JSON form of a resolved config: one key per field, data always as
// statistics, the model parameter always as theta. Parsing the echo yields an
// equivalent AppConfig, so any run can be reproduced from its echo alone.
std::string echo_config_json(const AppConfig& config);

void write_config_echo(const std::filesystem::path& path, const AppConfig& config);

} // namespace gibbsmap

#endif // GIBBSMAP_CONFIG_HPP
