#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "rcmap/matrix.hpp"

namespace rcmap {

// Householder QR with column pivoting, extended to a complete orthogonal
// decomposition when the design matrix is rank deficient. Factors once and
// solves any number of right-hand sides; rank-deficient systems get the
// minimum-norm least-squares solution instead of a failure.
class LeastSquaresSolver {
public:
    explicit LeastSquaresSolver(const Matrix& design) : qr_(design) {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        if (m < n)
            throw std::invalid_argument("LeastSquaresSolver: need at least as many rows as columns (" +
                                        std::to_string(m) + " x " + std::to_string(n) + ")");
        if (n == 0) throw std::invalid_argument("LeastSquaresSolver: empty design matrix");
        for (double v : qr_.data())
            if (!std::isfinite(v)) throw std::invalid_argument("LeastSquaresSolver: non-finite design entry");

        tau_.assign(n, 0.0);
        perm_.resize(n);
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});

        for (std::size_t j = 0; j < n; ++j) {
            pivot(j);
            tau_[j] = make_reflector(qr_, j, j);
            for (std::size_t c = j + 1; c < n; ++c) apply_reflector(qr_, j, j, tau_[j], c);
        }

        // numerical rank from the pivoted diagonal of R
        const double threshold = std::fabs(qr_(0, 0)) *
                                 static_cast<double>(std::max(m, n)) *
                                 std::numeric_limits<double>::epsilon();
        rank_ = 0;
        while (rank_ < n && std::fabs(qr_(rank_, rank_)) > threshold) ++rank_;

        if (rank_ < n && rank_ > 0) factor_row_space();
    }

    std::size_t rank() const { return rank_; }
    std::size_t rows() const { return qr_.rows(); }
    std::size_t cols() const { return qr_.cols(); }

    // coefficients minimizing ||design * x - y||, minimum-norm if rank deficient
    std::vector<double> solve(std::span<const double> y) const {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        if (y.size() != m) throw std::invalid_argument("LeastSquaresSolver::solve: length mismatch");

        // c = Q^T y
        std::vector<double> c(y.begin(), y.end());
        for (std::size_t j = 0; j < n; ++j) {
            if (tau_[j] == 0.0) continue;
            double w = c[j];
            for (std::size_t i = j + 1; i < m; ++i) w += qr_(i, j) * c[i];
            w *= tau_[j];
            c[j] -= w;
            for (std::size_t i = j + 1; i < m; ++i) c[i] -= w * qr_(i, j);
        }

        std::vector<double> xp(n, 0.0); // solution in pivoted order
        if (rank_ == n) {
            for (std::size_t i = n; i-- > 0;) {
                double s = c[i];
                for (std::size_t j = i + 1; j < n; ++j) s -= qr_(i, j) * xp[j];
                xp[i] = s / qr_(i, i);
            }
        } else if (rank_ > 0) {
            // R[0:r, :] = S^T Z^T; forward-substitute S^T w = c[0:r], then xp = Z [w; 0]
            std::vector<double> w(rank_);
            for (std::size_t i = 0; i < rank_; ++i) {
                double s = c[i];
                for (std::size_t j = 0; j < i; ++j) s -= s_(j, i) * w[j];
                w[i] = s / s_(i, i);
            }
            for (std::size_t i = 0; i < rank_; ++i) xp[i] = w[i];
            for (std::size_t j = rank_; j-- > 0;) {
                if (tau_z_[j] == 0.0) continue;
                double dot = xp[j];
                for (std::size_t i = j + 1; i < n; ++i) dot += z_(i, j) * xp[i];
                dot *= tau_z_[j];
                xp[j] -= dot;
                for (std::size_t i = j + 1; i < n; ++i) xp[i] -= dot * z_(i, j);
            }
        }

        std::vector<double> x(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) x[perm_[j]] = xp[j];
        return x;
    }

private:
    // swap in the remaining column of largest trailing norm
    void pivot(std::size_t j) {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        std::size_t best = j;
        double best_norm = -1.0;
        for (std::size_t c = j; c < n; ++c) {
            double s = 0.0;
            for (std::size_t i = j; i < m; ++i) s += qr_(i, c) * qr_(i, c);
            if (s > best_norm) {
                best_norm = s;
                best = c;
            }
        }
        if (best != j) {
            for (std::size_t i = 0; i < m; ++i) std::swap(qr_(i, j), qr_(i, best));
            std::swap(perm_[j], perm_[best]);
        }
    }

    // Householder reflector for column col of a, rows row0..end; the vector is
    // stored below the new diagonal entry with an implicit leading 1
    static double make_reflector(Matrix& a, std::size_t row0, std::size_t col) {
        const std::size_t m = a.rows();
        const double alpha = a(row0, col);
        double tail = 0.0;
        for (std::size_t i = row0 + 1; i < m; ++i) tail += a(i, col) * a(i, col);
        if (tail == 0.0) return 0.0;
        double beta = -std::copysign(std::sqrt(alpha * alpha + tail), alpha);
        const double tau = (beta - alpha) / beta;
        const double scale = 1.0 / (alpha - beta);
        for (std::size_t i = row0 + 1; i < m; ++i) a(i, col) *= scale;
        a(row0, col) = beta;
        return tau;
    }

    // apply reflector (row0, col) to column c of the same matrix
    static void apply_reflector(Matrix& a, std::size_t row0, std::size_t col, double tau, std::size_t c) {
        if (tau == 0.0) return;
        const std::size_t m = a.rows();
        double w = a(row0, c);
        for (std::size_t i = row0 + 1; i < m; ++i) w += a(i, col) * a(i, c);
        w *= tau;
        a(row0, c) -= w;
        for (std::size_t i = row0 + 1; i < m; ++i) a(i, c) -= w * a(i, col);
    }

    // QR of R[0:r, :]^T so that R[0:r, :] = S^T Z^T (completes the decomposition)
    void factor_row_space() {
        const std::size_t n = qr_.cols();
        z_ = Matrix(n, rank_);
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < n; ++j) z_(j, i) = (j >= i) ? qr_(i, j) : 0.0;
        tau_z_.assign(rank_, 0.0);
        for (std::size_t j = 0; j < rank_; ++j) {
            tau_z_[j] = make_reflector(z_, j, j);
            for (std::size_t c = j + 1; c < rank_; ++c) apply_reflector(z_, j, j, tau_z_[j], c);
        }
    }

    double s_(std::size_t i, std::size_t j) const { return z_(i, j); } // upper triangle of Z's R factor

    Matrix qr_;
    std::vector<double> tau_;
    std::vector<std::size_t> perm_;
    std::size_t rank_ = 0;
    Matrix z_;
    std::vector<double> tau_z_;
};

} // namespace rcmap
