#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/estimators.hpp"
#include "rcmap/leastsq.hpp"
#include "rcmap/models.hpp"
#include "rcmap/parallel.hpp"
#include "rcmap/readout.hpp"
#include "rcmap/series.hpp"

namespace rcmap {

// Min-max rescale to [-1, 1]; used to couple generated signals to the
// reservoirs, whose input range is calibrated around unit amplitude.
inline TimeSeries normalize_minmax(const TimeSeries& series) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : series.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) throw std::invalid_argument("normalize_minmax: constant series cannot be rescaled");
    TimeSeries out = series;
    for (double& v : out.values) v = 2.0 * (v - lo) / (hi - lo) - 1.0;
    out.provenance.params["normalized"] = "minmax[-1,1]";
    return out;
}

struct PredictionResult {
    std::size_t k = 0;        // prediction horizon, samples ahead
    double mse = 0.0;         // held-out mean squared error
    double baseline_mse = 0.0; // persistence predictor on the same rows
    LinearEstimator readout;
};

// Fit a linear readout mapping the node values at time t to target(t+k),
// on the train prefix of rows t in [washout, T-1-k]; report held-out MSE
// next to the persistence baseline (predict target(t+k) := target(t)).
inline PredictionResult train_readout(const ReadoutMatrix& readouts, const TimeSeries& target, std::size_t k,
                                      std::size_t washout = 0, double train_fraction = 0.75,
                                      double ridge = 0.0) {
    readouts.validate();
    const std::size_t t_len = readouts.steps(), n = readouts.node_count();
    if (target.values.size() != t_len)
        throw std::invalid_argument("train_readout: target length does not match readout rows");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_readout: train_fraction must be in (0, 1)");
    if (washout + k >= t_len)
        throw std::invalid_argument("train_readout: washout " + std::to_string(washout) + " and horizon " +
                                    std::to_string(k) + " leave no rows of " + std::to_string(t_len));
    const std::size_t total = t_len - washout - k;
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(total) * train_fraction));
    const std::size_t n_test = total - n_train;
    if (n_train < 1 || n_test < 1)
        throw std::invalid_argument("train_readout: split leaves an empty partition");
    if (ridge == 0.0 && n_train < n + 1)
        throw std::invalid_argument("train_readout: " + std::to_string(n) + " nodes but only " +
                                    std::to_string(n_train) +
                                    " training rows (underdetermined); raise T or use the ridge option");

    Matrix train_features(n_train, n);
    std::vector<double> train_targets(n_train);
    for (std::size_t r = 0; r < n_train; ++r) {
        const std::size_t t = washout + r;
        for (std::size_t j = 0; j < n; ++j) train_features(r, j) = readouts.data(t, j);
        train_targets[r] = target.values[t + k];
    }

    PredictionResult result;
    result.k = k;
    result.readout = fit_ols(train_features, train_targets, ridge, "node values at t -> target(t+k)");

    double se = 0.0, se_baseline = 0.0;
    for (std::size_t i = 0; i < n_test; ++i) {
        const std::size_t t = washout + n_train + i;
        double pred = result.readout.intercept;
        for (std::size_t j = 0; j < n; ++j) pred += result.readout.weights[j] * readouts.data(t, j);
        const double actual = target.values[t + k];
        se += (pred - actual) * (pred - actual);
        se_baseline += (target.values[t] - actual) * (target.values[t] - actual);
    }
    result.mse = se / static_cast<double>(n_test);
    result.baseline_mse = se_baseline / static_cast<double>(n_test);
    return result;
}

struct SweepEntry {
    std::string model; // reservoir variant name, or "persistence"
    std::size_t k = 0;
    double mse = 0.0;
    double baseline_mse = 0.0;
};

struct SweepRequest {
    std::string name;
    ReservoirSpec spec;
};

// MSE-vs-horizon table for several reservoirs on one signal. Each reservoir
// is driven once; all horizons share the row set t in [washout, T-1-k_max]
// (so scores are comparable across k) and one factorization of the shared
// design matrix. Persistence-baseline rows are appended per horizon.
inline std::vector<SweepEntry> horizon_sweep(const std::vector<SweepRequest>& requests,
                                             const TimeSeries& signal, std::size_t k_max = 50,
                                             std::size_t washout = 0, double train_fraction = 0.75) {
    if (requests.empty()) throw std::invalid_argument("horizon_sweep: no reservoirs requested");
    if (k_max < 1) throw std::invalid_argument("horizon_sweep: k_max must be >= 1");
    const std::size_t t_len = signal.values.size();
    if (washout + k_max >= t_len)
        throw std::invalid_argument("horizon_sweep: washout and k_max leave no rows");
    const std::size_t total = t_len - washout - k_max;
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(total) * train_fraction));
    const std::size_t n_test = total - n_train;
    if (n_train < 1 || n_test < 1) throw std::invalid_argument("horizon_sweep: split leaves an empty partition");

    std::vector<SweepEntry> table;
    table.reserve(requests.size() * k_max + k_max);

    for (const SweepRequest& request : requests) {
        const std::unique_ptr<Reservoir> reservoir = make_reservoir(request.spec);
        const std::size_t n = reservoir->layout().node_count();
        if (n_train < n + 1)
            throw std::invalid_argument("horizon_sweep: " + std::to_string(n) + " nodes but only " +
                                        std::to_string(n_train) +
                                        " training rows (underdetermined); raise T or shrink the grid");
        reservoir->initialize();
        const ReadoutMatrix readouts = reservoir->drive(signal);

        Matrix train(n_train, n + 1);
        for (std::size_t r = 0; r < n_train; ++r) {
            const std::size_t t = washout + r;
            train(r, 0) = 1.0;
            for (std::size_t j = 0; j < n; ++j) train(r, 1 + j) = readouts.data(t, j);
        }
        const LeastSquaresSolver solver(train);

        std::vector<SweepEntry> rows(k_max);
        parallel_for(k_max, [&](std::size_t idx) {
            const std::size_t k = idx + 1;
            std::vector<double> targets(n_train);
            for (std::size_t r = 0; r < n_train; ++r) targets[r] = signal.values[washout + r + k];
            const std::vector<double> beta = solver.solve(targets);
            double se = 0.0, se_baseline = 0.0;
            for (std::size_t i = 0; i < n_test; ++i) {
                const std::size_t t = washout + n_train + i;
                double pred = beta[0];
                for (std::size_t j = 0; j < n; ++j) pred += beta[1 + j] * readouts.data(t, j);
                const double actual = signal.values[t + k];
                se += (pred - actual) * (pred - actual);
                se_baseline += (signal.values[t] - actual) * (signal.values[t] - actual);
            }
            rows[idx] = SweepEntry{request.name, k, se / static_cast<double>(n_test),
                                   se_baseline / static_cast<double>(n_test)};
        });
        table.insert(table.end(), rows.begin(), rows.end());
    }

    // persistence baseline as its own model rows (baseline of any request —
    // it depends only on the signal, so they all agree)
    for (std::size_t k = 1; k <= k_max; ++k) {
        const SweepEntry& any = table[k - 1];
        table.push_back(SweepEntry{"persistence", k, any.baseline_mse, any.baseline_mse});
    }
    return table;
}

} // namespace rcmap
