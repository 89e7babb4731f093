#include "gibbsmap/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gibbsmap {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path, long line) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ParseError(path.string() + ":" + std::to_string(line) +
                         ": cannot parse number from '" + text + "'");
    }
    return v;
}

long parse_long(const std::string& text, const std::filesystem::path& path, long line) {
    const double v = parse_double(text, path, line);
    return static_cast<long>(v);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file for writing: " + path.string());
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path.string());
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

PointPattern read_pattern_csv(const std::filesystem::path& path, const Window& window) {
    std::ifstream in = open_input(path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ":1: empty file, expected header 'x,y'");
    }
    ++line_no;
    if (trim(line) != "x,y") {
        throw ParseError(path.string() + ":1: expected header 'x,y', got '" + trim(line) + "'");
    }
    std::vector<Point> points;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected two comma-separated values");
        }
        const Point p{parse_double(fields[0], path, line_no),
                      parse_double(fields[1], path, line_no)};
        if (!window.contains(p)) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": point lies outside the configured window");
        }
        points.push_back(p);
    }
    return PointPattern(window, std::move(points));
}

void write_pattern_csv(const std::filesystem::path& path, const PointPattern& pattern) {
    std::ofstream out = open_output(path);
    out << "x,y\n";
    for (const Point& p : pattern.points()) {
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    }
    finish_output(out, path);
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
    std::ofstream out = open_output(path);
    if (trace.empty()) throw IoError("write_trace_csv: empty trace");
    const std::size_t dim = trace.front().theta.size();
    out << "iter";
    for (std::size_t i = 0; i < dim; ++i) out << ",theta_" << i;
    out << ",temperature";
    for (std::size_t i = 0; i < dim; ++i) out << ",delta_" << i;
    out << ",accept_rate";
    for (std::size_t i = 0; i < dim; ++i) out << ",aux_stat_" << i;
    out << '\n';
    for (const TraceRecord& rec : trace) {
        out << rec.iteration;
        for (double t : rec.theta) out << ',' << format_double(t);
        out << ',' << format_double(rec.temperature);
        for (double d : rec.delta) out << ',' << format_double(d);
        out << ',' << format_double(rec.accept_rate);
        for (double s : rec.aux_stats) out << ',' << format_double(s);
        out << '\n';
    }
    finish_output(out, path);
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ":1: empty trace file");
    }
    const auto header = split_csv(line);
    std::size_t dim = 0;
    for (const auto& h : header) {
        if (h.rfind("theta_", 0) == 0) ++dim;
    }
    const std::size_t expected = 3 + 3 * dim;
    if (dim == 0 || header.size() != expected || header[0] != "iter") {
        throw ParseError(path.string() + ":1: unrecognized trace header");
    }
    std::vector<TraceRecord> trace;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != expected) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": wrong number of columns");
        }
        TraceRecord rec;
        std::size_t f = 0;
        rec.iteration = parse_long(fields[f++], path, line_no);
        rec.theta.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) rec.theta[i] = parse_double(fields[f++], path, line_no);
        rec.temperature = parse_double(fields[f++], path, line_no);
        rec.delta.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) rec.delta[i] = parse_double(fields[f++], path, line_no);
        rec.accept_rate = parse_double(fields[f++], path, line_no);
        rec.aux_stats.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) rec.aux_stats[i] = parse_double(fields[f++], path, line_no);
        trace.push_back(std::move(rec));
    }
    if (trace.empty()) {
        throw ParseError(path.string() + ": trace file has no data rows");
    }
    return trace;
}

void write_stats_samples_csv(const std::filesystem::path& path,
                             const std::vector<SufficientStats>& samples) {
    std::ofstream out = open_output(path);
    if (samples.empty()) throw IoError("write_stats_samples_csv: no samples");
    const std::size_t dim = samples.front().size();
    out << "sample";
    for (std::size_t i = 0; i < dim; ++i) out << ",stat_" << i;
    out << '\n';
    for (std::size_t s = 0; s < samples.size(); ++s) {
        out << s;
        for (double v : samples[s]) out << ',' << format_double(v);
        out << '\n';
    }
    finish_output(out, path);
}

void write_theta_samples_csv(const std::filesystem::path& path,
                             const std::vector<std::pair<long, ParamVector>>& samples) {
    std::ofstream out = open_output(path);
    if (samples.empty()) throw IoError("write_theta_samples_csv: no samples");
    const std::size_t dim = samples.front().second.size();
    out << "sweep";
    for (std::size_t i = 0; i < dim; ++i) out << ",theta_" << i;
    out << '\n';
    for (const auto& [sweep, theta] : samples) {
        out << sweep;
        for (double t : theta) out << ',' << format_double(t);
        out << '\n';
    }
    finish_output(out, path);
}

std::vector<std::pair<long, ParamVector>> read_theta_samples_csv(
    const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ":1: empty samples file");
    }
    const auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "sweep") {
        throw ParseError(path.string() + ":1: unrecognized samples header");
    }
    const std::size_t dim = header.size() - 1;
    std::vector<std::pair<long, ParamVector>> samples;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != dim + 1) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": wrong number of columns");
        }
        ParamVector theta(dim);
        for (std::size_t i = 0; i < dim; ++i) theta[i] = parse_double(fields[i + 1], path, line_no);
        samples.emplace_back(parse_long(fields[0], path, line_no), std::move(theta));
    }
    return samples;
}

} // namespace gibbsmap
