#pragma once

#include <cmath>
#include <stdexcept>

#include "rcmap/layout.hpp"
#include "rcmap/matrix.hpp"

namespace rcmap {

// Observed reservoir states: one row per input sample, one column per
// readout node. Rows align index-for-index with the driving input series.
struct ReadoutMatrix {
    Matrix data; // T x N
    SpatialLayout layout;
    double dt = 1.0;

    std::size_t steps() const { return data.rows(); }
    std::size_t node_count() const { return data.cols(); }

    void validate() const {
        layout.validate();
        if (data.cols() != layout.node_count())
            throw std::invalid_argument("ReadoutMatrix: column count must equal layout node count");
        for (double v : data.data())
            if (!std::isfinite(v)) throw std::invalid_argument("ReadoutMatrix: entries must be finite");
    }
};

} // namespace rcmap
