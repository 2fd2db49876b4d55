#ifndef CMR_MATRIX_HPP
#define CMR_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "cmr/field.hpp"

namespace cmr {

// Dense matrix over a finite field with exact Gaussian elimination.
class Matrix {
public:
    Matrix(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(const Field& f, std::size_t n);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix mul(const Matrix& o) const;
    Matrix transpose() const;
    Matrix submatrix_rows(const std::vector<std::size_t>& rows) const;
    Matrix submatrix_cols(const std::vector<std::size_t>& cols) const;
    void append_rows(const Matrix& o);

    std::size_t rank() const;
    // Inverse; throws std::runtime_error if singular.
    Matrix inverse() const;
    // Solve A x = b for a consistent (possibly non-square) system. Throws
    // std::runtime_error if inconsistent or underdetermined.
    std::vector<std::uint32_t> solve(const std::vector<std::uint32_t>& b) const;
    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> data_;
};

}  // namespace cmr

#endif
