#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/csv.hpp"
#include "rcmap/layout.hpp"

namespace rcmap {

enum class MetricKind { nonlinearity, memory_capacity, stability };

inline std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::nonlinearity: return "nonlinearity";
        case MetricKind::memory_capacity: return "memory_capacity";
        case MetricKind::stability: return "stability";
    }
    throw std::invalid_argument("metric_name: unknown kind");
}

// One scalar per node, tied to the layout it was computed on, plus a record
// of the parameters used and any warnings raised along the way.
struct MetricMap {
    MetricKind kind = MetricKind::nonlinearity;
    std::vector<double> values;
    SpatialLayout layout;
    std::map<std::string, std::string> params;
    std::vector<std::string> diagnostics;

    std::size_t node_count() const { return values.size(); }

    void validate() const {
        layout.validate();
        if (values.size() != layout.node_count())
            throw std::invalid_argument("MetricMap: value count does not match layout");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("MetricMap: non-finite value");
    }

    void write_csv(const std::string& path) const {
        validate();
        write_node_values_csv(path, layout, values);
    }
};

struct HeatmapRange {
    double min = 0.0;
    double max = 0.0;
};

// Grid-layout heatmap as ASCII PGM (P2), row-major with node (x, y) at
// column x of row y. Values are min-max normalized to 0..255; a flat map
// renders as all zeros. Returns the range used so callers can record it.
inline HeatmapRange write_metric_pgm(const std::string& path, const MetricMap& map) {
    map.validate();
    if (!map.layout.is_grid())
        throw std::invalid_argument("write_metric_pgm: heatmaps need a grid layout");
    const std::size_t w = map.layout.grid_width, h = map.layout.grid_height;

    HeatmapRange range{map.values[0], map.values[0]};
    for (double v : map.values) {
        range.min = std::min(range.min, v);
        range.max = std::max(range.max, v);
    }
    const double span = range.max - range.min;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P2\n" << w << " " << h << "\n255\n";
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double v = map.values[y * w + x];
            const int level = span == 0.0 ? 0 : static_cast<int>(std::lround((v - range.min) / span * 255.0));
            out << std::clamp(level, 0, 255);
            out << (x + 1 < w ? ' ' : '\n');
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    return range;
}

} // namespace rcmap
