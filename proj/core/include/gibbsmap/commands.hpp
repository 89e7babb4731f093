// Subcommand implementations behind the CLI. Each command computes, writes
// its artifacts into an output directory, and prints a short human-readable
// report. Artifacts are deterministic for a fixed config and seed; wall time
// is reported on the stream only, never in an artifact.
#ifndef GIBBSMAP_COMMANDS_HPP
#define GIBBSMAP_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "gibbsmap/config.hpp"

namespace gibbsmap {

// Long birth/death MH run at the config's theta; writes samples.csv (per-sample
// statistics), config.json, summary.json, and optionally the final pattern as
// pattern.csv. Prints the mean statistics.
void cmd_simulate(const AppConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& out, bool dump_pattern = false);

// Reads a pattern CSV in the config's window and prints its statistics
// (n and, for an interaction model, s_r). r_override replaces the model's
// interaction radius for this call.
SufficientStats cmd_stats(const AppConfig& config, const std::filesystem::path& pattern_path,
                          std::optional<double> r_override, std::ostream& out);

// Simulated-annealing MAP search; writes trace.csv, trace.svg, config.json,
// summary.json. Multi-chain when config.streams > 1 (best chain reported).
void cmd_map(const AppConfig& config, const std::filesystem::path& out_dir, std::ostream& out);

// Fixed-temperature shadow chain; writes theta_samples.csv (post-discard,
// thinned), config.json, and summary.json with per-component mean and sd over
// exactly the written samples.
void cmd_sample_posterior(const AppConfig& config, const std::filesystem::path& out_dir,
                          std::ostream& out);

// Re-renders an existing trace CSV as trace.svg in out_dir.
void cmd_plot(const std::filesystem::path& trace_path, const std::filesystem::path& out_dir,
              std::ostream& out);

} // namespace gibbsmap

#endif // GIBBSMAP_COMMANDS_HPP
