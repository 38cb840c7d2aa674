#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/layout.hpp"
#include "rcmap/readout.hpp"
#include "rcmap/series.hpp"

namespace rcmap {

// Shortest decimal form that round-trips a double exactly (17 significant
// digits); keeps written series byte-reproducible across runs.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: no newline translation
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline double parse_double(const std::string& text, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed number '" + text + "' in " + context);
    }
}

} // namespace detail

// -------- time series --------

// Layout: `# key=value` provenance comments, then `t,value`, then one row
// per sample.
inline void write_time_series_csv(const std::string& path, const TimeSeries& series) {
    std::ofstream out = detail::open_for_write(path);
    out << "# generator=" << series.provenance.generator << "\n";
    for (const auto& [key, value] : series.provenance.params) out << "# " << key << "=" << value << "\n";
    out << "t,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << format_double(series.time_at(i)) << "," << format_double(series.values[i]) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline TimeSeries read_time_series_csv(const std::string& path) {
    std::ifstream in = detail::open_for_read(path);
    Provenance prov;
    std::string line;
    bool header_seen = false;
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                const std::string key = body.substr(0, eq), value = body.substr(eq + 1);
                if (key == "generator")
                    prov.generator = value;
                else
                    prov.params[key] = value;
            }
            continue;
        }
        if (!header_seen) {
            if (line != "t,value")
                throw std::runtime_error(path + ": expected header 't,value', got '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 2) throw std::runtime_error(path + ": expected 2 fields, got row '" + line + "'");
        times.push_back(detail::parse_double(fields[0], path));
        values.push_back(detail::parse_double(fields[1], path));
    }
    if (!header_seen) throw std::runtime_error(path + ": missing 't,value' header");
    if (values.empty()) throw std::runtime_error(path + ": no samples");
    double dt = 1.0;
    if (times.size() >= 2) {
        dt = times[1] - times[0];
        if (dt <= 0.0) throw std::runtime_error(path + ": time column must be strictly increasing");
        for (std::size_t i = 1; i + 1 < times.size(); ++i) {
            const double step = times[i + 1] - times[i];
            if (std::fabs(step - dt) > 1e-9 * std::max(1.0, std::fabs(dt)))
                throw std::runtime_error(path + ": non-uniform sampling near row " + std::to_string(i + 1));
        }
    }
    return TimeSeries(std::move(values), dt, times.front(), std::move(prov));
}

// -------- readout matrix --------

// Header `t,node_0,...,node_{N-1}`; one row per retained step.
inline void write_readout_csv(const std::string& path, const ReadoutMatrix& readout) {
    std::ofstream out = detail::open_for_write(path);
    out << "t";
    for (std::size_t j = 0; j < readout.node_count(); ++j) out << ",node_" << j;
    out << "\n";
    for (std::size_t i = 0; i < readout.steps(); ++i) {
        out << format_double(static_cast<double>(i) * readout.dt);
        for (std::size_t j = 0; j < readout.node_count(); ++j) out << "," << format_double(readout.data(i, j));
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// -------- spatial layout --------

inline void write_layout_csv(const std::string& path, const SpatialLayout& layout) {
    std::ofstream out = detail::open_for_write(path);
    out << "node_id,x,y\n";
    for (const SpatialLayout::Node& node : layout.nodes)
        out << node.id << "," << format_double(node.x) << "," << format_double(node.y) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

// -------- per-node metric values --------

// Generic `node_id,x,y,value` table; metric maps and grain maps both use it.
inline void write_node_values_csv(const std::string& path, const SpatialLayout& layout,
                                  const std::vector<double>& values) {
    if (values.size() != layout.node_count())
        throw std::invalid_argument("write_node_values_csv: value count does not match layout");
    std::ofstream out = detail::open_for_write(path);
    out << "node_id,x,y,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const SpatialLayout::Node& node = layout.nodes[i];
        out << node.id << "," << format_double(node.x) << "," << format_double(node.y) << ","
            << format_double(values[i]) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace rcmap
