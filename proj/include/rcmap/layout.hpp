#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rcmap {

enum class DistanceMetric { euclidean, chebyshev };

// Readout-node geometry: node ids with 2D positions in model length units.
// Node ids are contiguous from 0 and double as indices into value arrays.
struct SpatialLayout {
    struct Node {
        int id;
        double x;
        double y;
        bool operator==(const Node&) const = default;
    };

    std::vector<Node> nodes;
    DistanceMetric metric = DistanceMetric::euclidean;
    // set when the nodes form a rectangular grid, row-major, node id = row*width + col
    int grid_width = 0;
    int grid_height = 0;
    double pitch = 1.0; // spacing between adjacent grid nodes

    std::size_t node_count() const { return nodes.size(); }
    bool is_grid() const { return grid_width > 0 && grid_height > 0; }

    double distance(int a, int b) const {
        const double dx = nodes[a].x - nodes[b].x;
        const double dy = nodes[a].y - nodes[b].y;
        if (metric == DistanceMetric::chebyshev) return std::max(std::fabs(dx), std::fabs(dy));
        return std::hypot(dx, dy);
    }

    void validate() const {
        if (nodes.empty()) throw std::invalid_argument("SpatialLayout: no nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].id != static_cast<int>(i))
                throw std::invalid_argument("SpatialLayout: node ids must be contiguous from 0");
            if (!std::isfinite(nodes[i].x) || !std::isfinite(nodes[i].y))
                throw std::invalid_argument("SpatialLayout: positions must be finite");
        }
        if (is_grid() && static_cast<std::size_t>(grid_width) * grid_height != nodes.size())
            throw std::invalid_argument("SpatialLayout: grid dims inconsistent with node count");
    }

    static SpatialLayout grid(int width, int height, double pitch = 1.0,
                              DistanceMetric metric = DistanceMetric::euclidean) {
        if (width < 1 || height < 1) throw std::invalid_argument("SpatialLayout::grid: dims must be >= 1");
        if (!(pitch > 0.0)) throw std::invalid_argument("SpatialLayout::grid: pitch must be > 0");
        SpatialLayout out;
        out.metric = metric;
        out.grid_width = width;
        out.grid_height = height;
        out.pitch = pitch;
        out.nodes.reserve(static_cast<std::size_t>(width) * height);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                out.nodes.push_back({y * width + x, x * pitch, y * pitch});
        return out;
    }

    bool operator==(const SpatialLayout&) const = default;
};

// Input coupling: gain, time scaling (input samples per unit of reservoir
// time), and the unit drive direction.
struct DriveConfig {
    double input_gain = 1.0;
    double time_scale = 1.0;
    std::array<double, 2> direction = {1.0, 0.0};

    void validate() const {
        if (!std::isfinite(input_gain)) throw std::invalid_argument("DriveConfig: input_gain must be finite");
        if (!(time_scale > 0.0) || !std::isfinite(time_scale))
            throw std::invalid_argument("DriveConfig: time_scale must be > 0");
        const double norm = std::hypot(direction[0], direction[1]);
        if (std::fabs(norm - 1.0) > 1e-12)
            throw std::invalid_argument("DriveConfig: direction must have unit norm");
    }

    bool operator==(const DriveConfig&) const = default;
};

} // namespace rcmap
