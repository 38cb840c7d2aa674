#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rcmap {

// Dense row-major matrix of doubles. Deliberately minimal: storage, element
// access, and the handful of helpers the solvers need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double> col(std::size_t j) const {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
        return out;
    }

    // rows [first, last) as a new matrix
    Matrix slice_rows(std::size_t first, std::size_t last) const {
        if (first > last || last > rows_) throw std::out_of_range("Matrix::slice_rows: bad range");
        Matrix out(last - first, cols_);
        for (std::size_t i = first; i < last; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i - first, j) = (*this)(i, j);
        return out;
    }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace rcmap
