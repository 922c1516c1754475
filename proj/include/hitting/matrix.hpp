#pragma once

#include "hitting/polynomial.hpp"
#include "hitting/rational.hpp"

#include <cassert>
#include <cstddef>
#include <vector>

namespace hitting {

/// Dense row-major matrix.
template <typename T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T &operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<BigRational>;
using PolyMatrix = Matrix<Polynomial>;

/// Builds a matrix from nested rows; all rows must have equal length.
RationalMatrix make_matrix(const std::vector<std::vector<BigRational>> &rows);

} // namespace hitting
