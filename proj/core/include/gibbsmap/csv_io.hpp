#ifndef GIBBSMAP_CSV_IO_HPP
#define GIBBSMAP_CSV_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gibbsmap/anneal.hpp"
#include "gibbsmap/pattern.hpp"

namespace gibbsmap {

// Malformed input data (bad header, unparseable row); message carries file
// and line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure to write an output artifact.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest-width decimal with 17 significant digits (%.17g); round-trips
// doubles exactly.
std::string format_double(double value);

// Pattern CSV: header "x,y", one point per row. The window is not part of the
// file; it comes from configuration.
PointPattern read_pattern_csv(const std::filesystem::path& path, const Window& window);
void write_pattern_csv(const std::filesystem::path& path, const PointPattern& pattern);

// Trace CSV: header iter,theta_0..,temperature,delta_0..,accept_rate,aux_stat_0..
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

// Per-sample statistics: header sample,stat_0,stat_1,...
void write_stats_samples_csv(const std::filesystem::path& path,
                             const std::vector<SufficientStats>& samples);

// Posterior samples: header sweep,theta_0,theta_1,...
void write_theta_samples_csv(const std::filesystem::path& path,
                             const std::vector<std::pair<long, ParamVector>>& samples);
std::vector<std::pair<long, ParamVector>> read_theta_samples_csv(
    const std::filesystem::path& path);

} // namespace gibbsmap

#endif // GIBBSMAP_CSV_IO_HPP
