#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/leastsq.hpp"
#include "rcmap/matrix.hpp"

namespace rcmap {

// Fitted linear model: y ~ intercept + weights . features
struct LinearEstimator {
    std::vector<double> weights;
    double intercept = 0.0;
    std::string feature_spec;

    double predict_one(std::span<const double> features) const {
        double s = intercept;
        for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * features[j];
        return s;
    }

    std::vector<double> predict(const Matrix& features) const {
        if (features.cols() != weights.size())
            throw std::invalid_argument("LinearEstimator::predict: feature count mismatch");
        std::vector<double> out(features.rows());
        for (std::size_t i = 0; i < features.rows(); ++i) out[i] = predict_one(features.row(i));
        return out;
    }
};

// Ordinary least squares on the intercept-augmented system. Rank-deficient
// designs resolve to the minimum-norm solution rather than failing.
// ridge > 0 adds opt-in Tikhonov damping on the weights (never the intercept).
inline LinearEstimator fit_ols(const Matrix& features, std::span<const double> targets,
                               double ridge = 0.0, std::string feature_spec = {}) {
    const std::size_t t = features.rows(), d = features.cols();
    if (targets.size() != t) throw std::invalid_argument("fit_ols: row count mismatch");
    if (ridge < 0.0 || !std::isfinite(ridge)) throw std::invalid_argument("fit_ols: ridge must be finite and >= 0");
    // the ridge rows make the augmented system tall enough on their own
    if (ridge == 0.0 && t < d + 1)
        throw std::invalid_argument("fit_ols: need at least d+1 rows, got " + std::to_string(t) +
                                    " rows for " + std::to_string(d) + " features");
    if (t < 1) throw std::invalid_argument("fit_ols: no rows");
    for (double v : targets)
        if (!std::isfinite(v)) throw std::invalid_argument("fit_ols: non-finite target");

    const std::size_t extra = ridge > 0.0 ? d : 0;
    Matrix design(t + extra, d + 1);
    std::vector<double> rhs(t + extra, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
        design(i, 0) = 1.0;
        for (std::size_t j = 0; j < d; ++j) design(i, j + 1) = features(i, j);
        rhs[i] = targets[i];
    }
    if (extra > 0) {
        const double lambda = std::sqrt(ridge);
        for (std::size_t j = 0; j < d; ++j) design(t + j, j + 1) = lambda;
    }

    LeastSquaresSolver solver(design);
    std::vector<double> beta = solver.solve(rhs);
    LinearEstimator est;
    est.intercept = beta[0];
    est.weights.assign(beta.begin() + 1, beta.end());
    est.feature_spec = std::move(feature_spec);
    return est;
}

// Squared Pearson correlation, cov^2(p, a) / (var(p) var(a)). Zero variance
// on either side carries no information and scores 0.
inline double r_squared(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) throw std::invalid_argument("r_squared: length mismatch");
    const std::size_t n = predicted.size();
    if (n < 2) throw std::invalid_argument("r_squared: need at least 2 samples");
    double mp = 0.0, ma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(predicted[i]) || !std::isfinite(actual[i]))
            throw std::invalid_argument("r_squared: non-finite input");
        mp += predicted[i];
        ma += actual[i];
    }
    mp /= static_cast<double>(n);
    ma /= static_cast<double>(n);
    double spp = 0.0, saa = 0.0, spa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dp = predicted[i] - mp, da = actual[i] - ma;
        spp += dp * dp;
        saa += da * da;
        spa += dp * da;
    }
    if (spp == 0.0 || saa == 0.0) return 0.0;
    const double r2 = (spa * spa) / (spp * saa);
    return std::clamp(r2, 0.0, 1.0);
}

struct TrainTestSplit {
    Matrix train_features, test_features;
    std::vector<double> train_targets, test_targets;
};

// Contiguous prefix split, no shuffling: train gets the first
// floor(T * train_fraction) rows, test the remainder.
inline TrainTestSplit split_train_test(const Matrix& features, std::span<const double> targets,
                                       double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split_train_test: train_fraction must be in (0, 1)");
    if (features.rows() != targets.size()) throw std::invalid_argument("split_train_test: length mismatch");
    const std::size_t t = features.rows();
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(t) * train_fraction));
    if (n_train == 0 || n_train == t)
        throw std::invalid_argument("split_train_test: split leaves an empty partition (T=" +
                                    std::to_string(t) + ", fraction=" + std::to_string(train_fraction) + ")");
    TrainTestSplit out;
    out.train_features = features.slice_rows(0, n_train);
    out.test_features = features.slice_rows(n_train, t);
    out.train_targets.assign(targets.begin(), targets.begin() + n_train);
    out.test_targets.assign(targets.begin() + n_train, targets.end());
    return out;
}

// Fit on the train prefix, score R^2 on the held-out suffix.
inline double estimator_quality(const Matrix& features, std::span<const double> targets,
                                double train_fraction = 0.75, double ridge = 0.0) {
    TrainTestSplit split = split_train_test(features, targets, train_fraction);
    LinearEstimator est = fit_ols(split.train_features, split.train_targets, ridge);
    std::vector<double> predicted = est.predict(split.test_features);
    return r_squared(predicted, split.test_targets);
}

} // namespace rcmap
