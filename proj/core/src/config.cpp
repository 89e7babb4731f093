#include "gibbsmap/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gibbsmap/csv_io.hpp"

namespace gibbsmap {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

const json* find(const json& section, const char* key) {
    const auto it = section.find(key);
    return it == section.end() ? nullptr : &*it;
}

void check_keys(const json& section, const std::string& name,
                std::initializer_list<const char*> allowed) {
    if (!section.is_object()) fail("section '" + name + "' must be an object");
    for (const auto& item : section.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key '" + item.key() + "' in section '" + name + "'");
    }
}

double as_double(const json& value, const std::string& where) {
    if (!value.is_number()) fail(where + " must be a number");
    return value.get<double>();
}

long as_long(const json& value, const std::string& where) {
    if (value.is_number_integer() || value.is_number_unsigned()) return value.get<long>();
    if (value.is_number_float()) {
        const double d = value.get<double>();
        // accept 1e6 and friends: JSON has no integer literal syntax for them
        if (std::floor(d) == d && std::abs(d) <= 9.007199254740992e15) {
            return static_cast<long>(d);
        }
    }
    fail(where + " must be an integer");
}

std::uint64_t as_u64(const json& value, const std::string& where) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
        const auto v = value.get<std::int64_t>();
        if (v < 0) fail(where + " must be >= 0");
        return static_cast<std::uint64_t>(v);
    }
    if (value.is_number_float()) {
        const double d = value.get<double>();
        if (d >= 0.0 && std::floor(d) == d && d <= 9.007199254740992e15) {
            return static_cast<std::uint64_t>(d);
        }
    }
    fail(where + " must be a nonnegative integer");
}

std::string as_string(const json& value, const std::string& where) {
    if (!value.is_string()) fail(where + " must be a string");
    return value.get<std::string>();
}

std::vector<double> as_double_array(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& el : value) out.push_back(as_double(el, where + " element"));
    return out;
}

// accepts either a scalar (applied to every coordinate) or a full vector
std::vector<double> as_scalar_or_array(const json& value, std::size_t dim,
                                       const std::string& where) {
    if (value.is_number()) return std::vector<double>(dim, as_double(value, where));
    auto v = as_double_array(value, where);
    if (v.size() != dim) {
        fail(where + " must have one entry per model parameter (" + std::to_string(dim) + ")");
    }
    return v;
}

Window parse_window(const json& section) {
    check_keys(section, "model.window", {"xmin", "xmax", "ymin", "ymax"});
    for (const char* k : {"xmin", "xmax", "ymin", "ymax"}) {
        if (!find(section, k)) fail(std::string("model.window requires '") + k + "'");
    }
    try {
        return Window(as_double(*find(section, "xmin"), "model.window.xmin"),
                      as_double(*find(section, "xmax"), "model.window.xmax"),
                      as_double(*find(section, "ymin"), "model.window.ymin"),
                      as_double(*find(section, "ymax"), "model.window.ymax"));
    } catch (const std::exception& e) {
        fail(std::string("model.window: ") + e.what());
    }
}

void parse_model(const json& section, AppConfig& config) {
    std::string kind = "strauss";
    if (const json* k = find(section, "kind")) kind = as_string(*k, "model.kind");
    if (kind != "strauss" && kind != "poisson") {
        fail("model.kind must be 'strauss' or 'poisson'");
    }

    Window window = Window::unit_square();
    if (const json* w = find(section, "window")) window = parse_window(*w);

    const json* beta = find(section, "beta");
    const json* gamma = find(section, "gamma");
    const json* theta = find(section, "theta");
    if (theta && (beta || gamma)) {
        fail("model: give either theta or beta/gamma, not both");
    }

    if (kind == "strauss") {
        check_keys(section, "model", {"kind", "beta", "gamma", "r", "theta", "window"});
        double r = 0.1;
        if (const json* rv = find(section, "r")) r = as_double(*rv, "model.r");
        try {
            config.model = StraussModel(r, window);
        } catch (const std::exception& e) {
            fail(std::string("model: ") + e.what());
        }
        if (theta) {
            config.theta0 = as_double_array(*theta, "model.theta");
            if (config.theta0.size() != 2) fail("model.theta must have 2 entries for strauss");
        } else if (beta || gamma) {
            if (!beta || !gamma) fail("model: strauss needs both beta and gamma");
            const double b = as_double(*beta, "model.beta");
            const double g = as_double(*gamma, "model.gamma");
            if (!(b > 0.0) || !std::isfinite(b)) fail("model.beta must be > 0");
            if (!(g > 0.0) || !std::isfinite(g)) fail("model.gamma must be > 0");
            config.theta0 = {std::log(b), std::log(g)};
        }
    } else {
        check_keys(section, "model", {"kind", "beta", "theta", "window"});
        config.model = PoissonModel(window);
        if (theta) {
            config.theta0 = as_double_array(*theta, "model.theta");
            if (config.theta0.size() != 1) fail("model.theta must have 1 entry for poisson");
        } else if (beta) {
            const double b = as_double(*beta, "model.beta");
            if (!(b > 0.0) || !std::isfinite(b)) fail("model.beta must be > 0");
            config.theta0 = {std::log(b)};
        } else {
            config.theta0 = {std::log(100.0)};
        }
    }
}

void parse_prior(const json& section, AppConfig& config) {
    check_keys(section, "prior", {"lower", "upper"});
    const json* lower = find(section, "lower");
    const json* upper = find(section, "upper");
    if (!lower || !upper) fail("prior requires both lower and upper");
    try {
        config.prior = PriorBox(as_double_array(*lower, "prior.lower"),
                                as_double_array(*upper, "prior.upper"));
    } catch (const std::exception& e) {
        fail(std::string("prior: ") + e.what());
    }
}

void parse_shadow(const json& section, AppConfig& config, std::size_t dim) {
    check_keys(section, "shadow", {"delta", "m", "aux_mh_steps", "birth_probability", "proposal"});
    if (const json* d = find(section, "delta")) {
        config.shadow.delta = as_scalar_or_array(*d, dim, "shadow.delta");
    }
    if (const json* m = find(section, "m")) {
        config.shadow.inner_steps = as_long(*m, "shadow.m");
    }
    if (const json* s = find(section, "aux_mh_steps")) {
        config.shadow.aux.steps = as_long(*s, "shadow.aux_mh_steps");
    }
    if (const json* b = find(section, "birth_probability")) {
        config.shadow.aux.birth_probability = as_double(*b, "shadow.birth_probability");
    }
    if (const json* p = find(section, "proposal")) {
        const std::string kind = as_string(*p, "shadow.proposal");
        if (kind == "box") {
            config.shadow.proposal = ProposalKind::box;
        } else if (kind == "ball") {
            config.shadow.proposal = ProposalKind::ball;
        } else {
            fail("shadow.proposal must be 'box' or 'ball'");
        }
    }
}

void parse_anneal(const json& section, AppConfig& config, std::size_t dim) {
    check_keys(section, "anneal",
               {"t0", "k_t", "k_delta", "t_min", "delta_min", "schedule_kind", "n_iterations",
                "keep_every"});
    if (const json* v = find(section, "t0")) config.anneal.t0 = as_double(*v, "anneal.t0");
    if (const json* v = find(section, "k_t")) config.anneal.k_t = as_double(*v, "anneal.k_t");
    if (const json* v = find(section, "k_delta")) {
        config.anneal.k_delta = as_double(*v, "anneal.k_delta");
    }
    if (const json* v = find(section, "t_min")) config.anneal.t_min = as_double(*v, "anneal.t_min");
    if (const json* v = find(section, "delta_min")) {
        config.anneal.delta_min = as_scalar_or_array(*v, dim, "anneal.delta_min");
    }
    if (const json* v = find(section, "schedule_kind")) {
        const std::string kind = as_string(*v, "anneal.schedule_kind");
        if (kind == "geometric") {
            config.anneal.kind = ScheduleKind::geometric;
        } else if (kind == "logarithmic") {
            config.anneal.kind = ScheduleKind::logarithmic;
        } else {
            fail("anneal.schedule_kind must be 'geometric' or 'logarithmic'");
        }
    }
    if (const json* v = find(section, "n_iterations")) {
        config.run.n_iterations = as_long(*v, "anneal.n_iterations");
    }
    if (const json* v = find(section, "keep_every")) {
        config.run.keep_every = as_long(*v, "anneal.keep_every");
    }
}

void parse_data(const json& section, AppConfig& config, const std::filesystem::path& base_dir) {
    check_keys(section, "data", {"stats", "pattern"});
    const json* stats = find(section, "stats");
    const json* pattern = find(section, "pattern");
    if (stats && pattern) fail("data: give either stats or pattern, not both");
    if (!stats && !pattern) fail("data: requires stats or pattern");
    if (stats) {
        config.data_stats = as_double_array(*stats, "data.stats");
        return;
    }
    std::filesystem::path path = as_string(*pattern, "data.pattern");
    if (path.is_relative()) path = base_dir / path;
    if (!std::filesystem::exists(path)) {
        fail("data.pattern file does not exist: " + path.string());
    }
    const PointPattern loaded = read_pattern_csv(path, model_window(config.model));
    config.data_stats = model_stats(config.model, loaded);
}

void parse_rng(const json& section, AppConfig& config) {
    check_keys(section, "rng", {"seed", "streams"});
    if (const json* v = find(section, "seed")) config.seed = as_u64(*v, "rng.seed");
    if (const json* v = find(section, "streams")) {
        config.streams = static_cast<int>(as_long(*v, "rng.streams"));
    }
}

void parse_simulate(const json& section, AppConfig& config) {
    check_keys(section, "simulate", {"burn_in", "n_samples", "spacing"});
    if (const json* v = find(section, "burn_in")) {
        config.simulate.burn_in = as_long(*v, "simulate.burn_in");
    }
    if (const json* v = find(section, "n_samples")) {
        config.simulate.n_samples = as_long(*v, "simulate.n_samples");
    }
    if (const json* v = find(section, "spacing")) {
        config.simulate.spacing = as_long(*v, "simulate.spacing");
    }
}

void parse_posterior(const json& section, AppConfig& config) {
    check_keys(section, "posterior", {"temperature", "n_sweeps", "discard", "keep_every"});
    if (const json* v = find(section, "temperature")) {
        config.posterior.temperature = as_double(*v, "posterior.temperature");
    }
    if (const json* v = find(section, "n_sweeps")) {
        config.posterior.n_sweeps = as_long(*v, "posterior.n_sweeps");
    }
    if (const json* v = find(section, "discard")) {
        config.posterior.discard = as_long(*v, "posterior.discard");
    }
    if (const json* v = find(section, "keep_every")) {
        config.posterior.keep_every = as_long(*v, "posterior.keep_every");
    }
}

json window_json(const Window& w) {
    return json{{"xmin", w.x_min()}, {"xmax", w.x_max()}, {"ymin", w.y_min()}, {"ymax", w.y_max()}};
}

} // namespace

void SimulateConfig::validate() const {
    if (burn_in < 1) throw ConfigError("config: simulate.burn_in must be >= 1");
    if (n_samples < 1) throw ConfigError("config: simulate.n_samples must be >= 1");
    if (spacing < 1) throw ConfigError("config: simulate.spacing must be >= 1");
}

void PosteriorConfig::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw ConfigError("config: posterior.temperature must be > 0");
    }
    if (n_sweeps < 1) throw ConfigError("config: posterior.n_sweeps must be >= 1");
    if (discard < 0 || discard >= n_sweeps) {
        throw ConfigError("config: posterior.discard must lie in [0, n_sweeps)");
    }
    if (keep_every < 1) throw ConfigError("config: posterior.keep_every must be >= 1");
}

void AppConfig::validate() const {
    const std::size_t dim = model_dim(model);
    if (theta0.size() != dim) {
        throw ConfigError("config: model parameter dimension mismatch");
    }
    for (double t : theta0) {
        if (!std::isfinite(t)) throw ConfigError("config: model parameters must be finite");
    }
    if (prior.dim() != dim) {
        throw ConfigError("config: prior box dimension must match the model");
    }
    if (!prior.contains(theta0)) {
        throw ConfigError("config: the initial parameter vector lies outside the prior box");
    }
    if (std::holds_alternative<StraussModel>(model)) {
        if (theta0[1] > 0.0) {
            throw ConfigError("config: strauss log gamma must be <= 0 (gamma <= 1)");
        }
        if (prior.upper()[1] > 0.0) {
            throw ConfigError(
                "config: strauss prior box must keep log gamma <= 0; densities with gamma > 1 "
                "are not integrable and cannot be sampled");
        }
    }
    if (data_stats.size() != dim) {
        throw ConfigError("config: data.stats dimension must match the model");
    }
    for (double s : data_stats) {
        if (!std::isfinite(s)) throw ConfigError("config: data.stats must be finite");
    }
    if (shadow.delta.size() != dim) {
        throw ConfigError("config: shadow.delta dimension must match the model");
    }
    if (streams < 1 || streams > 1024) {
        throw ConfigError("config: rng.streams must lie in [1, 1024]");
    }
    try {
        shadow.validate();
        anneal.validate();
        run.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    simulate.validate();
    posterior.validate();
}

AppConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    check_keys(root, "<top level>",
               {"model", "prior", "shadow", "anneal", "data", "rng", "simulate", "posterior"});

    AppConfig config;
    if (const json* s = find(root, "model")) parse_model(*s, config);
    const std::size_t dim = model_dim(config.model);

    // dimension-aware fallbacks when the model is not the shipped default
    if (dim == 1) {
        config.prior = PriorBox({0.0}, {7.0});
        config.shadow.delta = {0.01};
        config.data_stats.clear();
    }

    if (const json* s = find(root, "prior")) parse_prior(*s, config);
    if (const json* s = find(root, "shadow")) parse_shadow(*s, config, dim);
    if (const json* s = find(root, "anneal")) parse_anneal(*s, config, dim);
    if (const json* s = find(root, "data")) {
        parse_data(*s, config, base_dir);
    } else if (dim == 1) {
        fail("data: required for the poisson model (stats or pattern)");
    }
    if (const json* s = find(root, "rng")) parse_rng(*s, config);
    if (const json* s = find(root, "simulate")) parse_simulate(*s, config);
    if (const json* s = find(root, "posterior")) parse_posterior(*s, config);

    config.validate();
    return config;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.parent_path());
}

std::string echo_config_json(const AppConfig& config) {
    json root;

    json model;
    if (std::holds_alternative<StraussModel>(config.model)) {
        const auto& m = std::get<StraussModel>(config.model);
        model["kind"] = "strauss";
        model["r"] = m.interaction_radius();
        model["window"] = window_json(m.window());
    } else {
        const auto& m = std::get<PoissonModel>(config.model);
        model["kind"] = "poisson";
        model["window"] = window_json(m.window());
    }
    model["theta"] = config.theta0;
    root["model"] = model;

    root["prior"] = json{{"lower", config.prior.lower()}, {"upper", config.prior.upper()}};

    root["shadow"] = json{
        {"delta", config.shadow.delta},
        {"m", config.shadow.inner_steps},
        {"aux_mh_steps", config.shadow.aux.steps},
        {"birth_probability", config.shadow.aux.birth_probability},
        {"proposal", config.shadow.proposal == ProposalKind::box ? "box" : "ball"},
    };

    std::vector<double> delta_min = config.anneal.delta_min;
    if (delta_min.empty()) delta_min.assign(config.shadow.delta.size(), 1.0e-4);
    root["anneal"] = json{
        {"t0", config.anneal.t0},
        {"k_t", config.anneal.k_t},
        {"k_delta", config.anneal.k_delta},
        {"t_min", config.anneal.t_min},
        {"delta_min", delta_min},
        {"schedule_kind",
         config.anneal.kind == ScheduleKind::geometric ? "geometric" : "logarithmic"},
        {"n_iterations", config.run.n_iterations},
        {"keep_every", config.run.keep_every},
    };

    root["data"] = json{{"stats", config.data_stats}};
    root["rng"] = json{{"seed", config.seed}, {"streams", config.streams}};
    root["simulate"] = json{
        {"burn_in", config.simulate.burn_in},
        {"n_samples", config.simulate.n_samples},
        {"spacing", config.simulate.spacing},
    };
    root["posterior"] = json{
        {"temperature", config.posterior.temperature},
        {"n_sweeps", config.posterior.n_sweeps},
        {"discard", config.posterior.discard},
        {"keep_every", config.posterior.keep_every},
    };

    return root.dump(2) + "\n";
}

void write_config_echo(const std::filesystem::path& path, const AppConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file for writing: " + path.string());
    out << echo_config_json(config);
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path.string());
}

} // namespace gibbsmap
