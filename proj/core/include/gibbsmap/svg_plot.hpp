// Minimal SVG renderer for annealing traces. No external dependencies;
// output is a single self-contained <svg> document.
#pragma once

#include <filesystem>
#include <vector>

#include "gibbsmap/anneal.hpp"

namespace gibbsmap {

// Writes one panel per parameter component (theta_i against iteration),
// plus a final panel with the temperature on a log scale. Throws IoError
// on write failure and std::invalid_argument for an empty trace.
void write_trace_svg(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);

} // namespace gibbsmap
