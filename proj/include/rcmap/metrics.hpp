#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/csv.hpp"
#include "rcmap/estimators.hpp"
#include "rcmap/leastsq.hpp"
#include "rcmap/metric_map.hpp"
#include "rcmap/neighborhoods.hpp"
#include "rcmap/parallel.hpp"
#include "rcmap/readout.hpp"
#include "rcmap/reservoir.hpp"
#include "rcmap/series.hpp"

namespace rcmap {

// Lag matrix: row t has columns [u(t), u(t-1), ..., u(t-k)]; rows start at
// t = k so every row is fully defined. Shape (T-k) x (k+1).
inline Matrix delay_embed(const TimeSeries& u, std::size_t k) {
    const std::size_t t_len = u.values.size();
    if (k >= t_len)
        throw std::invalid_argument("delay_embed: k must be smaller than the series length (k=" +
                                    std::to_string(k) + ", T=" + std::to_string(t_len) + ")");
    Matrix out(t_len - k, k + 1);
    for (std::size_t t = k; t < t_len; ++t)
        for (std::size_t j = 0; j <= k; ++j) out(t - k, j) = u.values[t - j];
    return out;
}

namespace detail {

// Rows entering the estimators: t in [max(k, washout), T-1], split into a
// contiguous train prefix and held-out test suffix. Every estimator in a
// map shares this row set so scores stay comparable.
struct EvalRows {
    std::size_t start = 0, n_train = 0, n_test = 0;
    std::size_t total() const { return n_train + n_test; }
};

inline EvalRows eval_rows(std::size_t t_len, std::size_t k, std::size_t washout, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0, 1)");
    EvalRows rows;
    rows.start = std::max(k, washout);
    if (rows.start >= t_len)
        throw std::invalid_argument("washout " + std::to_string(washout) + " and delay depth " +
                                    std::to_string(k) + " leave no usable rows of " + std::to_string(t_len));
    const std::size_t total = t_len - rows.start;
    rows.n_train = static_cast<std::size_t>(std::floor(static_cast<double>(total) * train_fraction));
    rows.n_test = total - rows.n_train;
    if (rows.n_train < 2 || rows.n_test < 2)
        throw std::invalid_argument("only " + std::to_string(total) +
                                    " rows survive the washout; train and test each need at least 2");
    return rows;
}

inline void check_alignment(const char* who, const TimeSeries& u, const ReadoutMatrix& readouts) {
    readouts.validate();
    if (u.values.size() != readouts.steps())
        throw std::invalid_argument(std::string(who) + ": input length " + std::to_string(u.values.size()) +
                                    " does not match readout rows " + std::to_string(readouts.steps()));
}

} // namespace detail

// Per-node nonlinearity: 1 minus the held-out R^2 of the best linear
// predictor of the node trace from the lagged input [u(t), ..., u(t-k)].
// 0 = the trace is a linear filter of the input; 1 = no linear estimator
// explains it at all. Constant traces are defined as 0 (trivially linear)
// and flagged in diagnostics.
inline MetricMap nonlinearity_map(const TimeSeries& u, const ReadoutMatrix& readouts, std::size_t k,
                                  std::size_t washout = 0, double train_fraction = 0.75) {
    detail::check_alignment("nonlinearity_map", u, readouts);
    const std::size_t t_len = readouts.steps(), n = readouts.node_count();
    const detail::EvalRows rows = detail::eval_rows(t_len, k, washout, train_fraction);
    if (rows.n_train < k + 2)
        throw std::invalid_argument("nonlinearity_map: " + std::to_string(k + 1) + " lag features need at least " +
                                    std::to_string(k + 2) + " training rows, have " + std::to_string(rows.n_train));

    // one design matrix (intercept + lags) shared by every node
    Matrix train(rows.n_train, k + 2);
    for (std::size_t r = 0; r < rows.n_train; ++r) {
        const std::size_t t = rows.start + r;
        train(r, 0) = 1.0;
        for (std::size_t j = 0; j <= k; ++j) train(r, 1 + j) = u.values[t - j];
    }
    const LeastSquaresSolver solver(train);

    MetricMap map;
    map.kind = MetricKind::nonlinearity;
    map.layout = readouts.layout;
    map.values.assign(n, 0.0);
    std::vector<std::uint8_t> constant_trace(n, 0);

    parallel_for(n, [&](std::size_t node) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t t = rows.start; t < t_len; ++t) {
            lo = std::min(lo, readouts.data(t, node));
            hi = std::max(hi, readouts.data(t, node));
        }
        if (lo == hi) {
            map.values[node] = 0.0;
            constant_trace[node] = 1;
            return;
        }
        std::vector<double> targets(rows.n_train);
        for (std::size_t r = 0; r < rows.n_train; ++r) targets[r] = readouts.data(rows.start + r, node);
        const std::vector<double> beta = solver.solve(targets);
        std::vector<double> predicted(rows.n_test), actual(rows.n_test);
        for (std::size_t i = 0; i < rows.n_test; ++i) {
            const std::size_t t = rows.start + rows.n_train + i;
            double s = beta[0];
            for (std::size_t j = 0; j <= k; ++j) s += beta[1 + j] * u.values[t - j];
            predicted[i] = s;
            actual[i] = readouts.data(t, node);
        }
        map.values[node] = 1.0 - r_squared(predicted, actual);
    });

    for (std::size_t node = 0; node < n; ++node)
        if (constant_trace[node])
            map.diagnostics.push_back("node " + std::to_string(node) +
                                      ": constant trace; nonlinearity defined as 0");
    map.params["k"] = std::to_string(k);
    map.params["washout"] = std::to_string(washout);
    map.params["train_fraction"] = format_double(train_fraction);
    return map;
}

// Per-node local memory capacity: sum over delays tau = 1..k of the
// held-out R^2 for recalling u(t-tau) linearly from the node's neighborhood
// readouts at time t. Bounded by [0, k]; each delay gets its own estimator
// but all share one design matrix per node, factored once.
inline MetricMap memory_capacity_map(const TimeSeries& u, const ReadoutMatrix& readouts,
                                     const NeighborhoodIndex& neighborhoods, std::size_t k,
                                     std::size_t washout = 0, double train_fraction = 0.75) {
    detail::check_alignment("memory_capacity_map", u, readouts);
    if (k < 1) throw std::invalid_argument("memory_capacity_map: memory capacity requires k >= 1");
    const std::size_t t_len = readouts.steps(), n = readouts.node_count();
    if (neighborhoods.node_count() != n)
        throw std::invalid_argument("memory_capacity_map: neighborhood index does not match readout nodes");
    const detail::EvalRows rows = detail::eval_rows(t_len, k, washout, train_fraction);
    for (std::size_t node = 0; node < n; ++node) {
        const std::size_t d = neighborhoods.members[node].size();
        if (d + 2 > rows.n_train)
            throw std::invalid_argument("memory_capacity_map: neighborhood of node " + std::to_string(node) +
                                        " has " + std::to_string(d) + " members but only " +
                                        std::to_string(rows.n_train) +
                                        " training rows; raise T or lower threshold_distance");
    }

    MetricMap map;
    map.kind = MetricKind::memory_capacity;
    map.layout = readouts.layout;
    map.values.assign(n, 0.0);
    std::vector<double> tail_r2(n, 0.0);

    parallel_for(n, [&](std::size_t node) {
        const std::vector<std::size_t>& members = neighborhoods.members[node];
        const std::size_t d = members.size();
        Matrix train(rows.n_train, d + 1);
        for (std::size_t r = 0; r < rows.n_train; ++r) {
            const std::size_t t = rows.start + r;
            train(r, 0) = 1.0;
            for (std::size_t j = 0; j < d; ++j) train(r, 1 + j) = readouts.data(t, members[j]);
        }
        const LeastSquaresSolver solver(train);
        std::vector<double> targets(rows.n_train), predicted(rows.n_test), actual(rows.n_test);
        double sum = 0.0;
        for (std::size_t tau = 1; tau <= k; ++tau) {
            for (std::size_t r = 0; r < rows.n_train; ++r) targets[r] = u.values[rows.start + r - tau];
            const std::vector<double> beta = solver.solve(targets);
            for (std::size_t i = 0; i < rows.n_test; ++i) {
                const std::size_t t = rows.start + rows.n_train + i;
                double s = beta[0];
                for (std::size_t j = 0; j < d; ++j) s += beta[1 + j] * readouts.data(t, members[j]);
                predicted[i] = s;
                actual[i] = u.values[t - tau];
            }
            const double r2 = r_squared(predicted, actual);
            sum += r2;
            if (tau == k) tail_r2[node] = r2;
        }
        map.values[node] = sum;
    });

    std::size_t tail_hits = 0;
    for (double r2 : tail_r2)
        if (r2 > 0.1) ++tail_hits;
    if (tail_hits > 0)
        map.diagnostics.push_back(std::to_string(tail_hits) + " node(s) still recall the input at the " +
                                  "longest delay (R^2 > 0.1 at tau=" + std::to_string(k) +
                                  "); memory may extend beyond k");
    map.params["k"] = std::to_string(k);
    map.params["washout"] = std::to_string(washout);
    map.params["train_fraction"] = format_double(train_fraction);
    map.params["threshold_distance"] = format_double(neighborhoods.threshold_distance);
    return map;
}

// Per-node |final - initial| between two relaxed snapshots; 0 means the
// node returned exactly to its pre-drive value.
inline MetricMap stability_map(const std::vector<double>& initial, const std::vector<double>& final_state,
                               const SpatialLayout& layout) {
    if (initial.size() != final_state.size())
        throw std::invalid_argument("stability_map: snapshot sizes differ");
    if (initial.size() != layout.node_count())
        throw std::invalid_argument("stability_map: snapshot size does not match layout");
    MetricMap map;
    map.kind = MetricKind::stability;
    map.layout = layout;
    map.values.resize(initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) map.values[i] = std::fabs(final_state[i] - initial[i]);
    map.validate();
    return map;
}

struct AnalysisResult {
    MetricMap nonlinearity;
    MetricMap memory_capacity;
    MetricMap stability;
    RelaxResult initial_relax;
    RelaxResult final_relax;
};

// Full measurement protocol on one reservoir and one input signal:
// initialize (seeded warm-up + settle), snapshot, drive, settle again,
// snapshot, then compute all three maps from the single recorded
// (input, readout) pair.
inline AnalysisResult analyze(const TimeSeries& u, Reservoir& reservoir, std::size_t k,
                              double threshold_distance, std::size_t washout = 0,
                              double train_fraction = 0.75) {
    AnalysisResult result;
    result.initial_relax = reservoir.initialize();
    const std::vector<double> initial = reservoir.snapshot();
    const ReadoutMatrix readouts = reservoir.drive(u);
    result.final_relax = reservoir.relax();
    const std::vector<double> final_state = reservoir.snapshot();

    result.nonlinearity = nonlinearity_map(u, readouts, k, washout, train_fraction);
    const NeighborhoodIndex neighborhoods = build_neighborhoods(reservoir.layout(), threshold_distance);
    result.memory_capacity = memory_capacity_map(u, readouts, neighborhoods, k, washout, train_fraction);
    result.stability = stability_map(initial, final_state, reservoir.layout());
    if (!result.initial_relax.converged)
        result.stability.diagnostics.push_back("initial settle did not converge (residual " +
                                               format_double(result.initial_relax.residual) + ")");
    if (!result.final_relax.converged)
        result.stability.diagnostics.push_back("final settle did not converge (residual " +
                                               format_double(result.final_relax.residual) + ")");
    return result;
}

} // namespace rcmap
