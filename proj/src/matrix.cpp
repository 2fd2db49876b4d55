#include "cmr/matrix.hpp"

#include <stdexcept>

namespace cmr {

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix::mul: shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint32_t a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, o.at(k, j)));
        }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::submatrix_rows(const std::vector<std::size_t>& rows) const {
    Matrix r(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(rows[i], j);
    return r;
}

Matrix Matrix::submatrix_cols(const std::vector<std::size_t>& cols) const {
    Matrix r(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(i, cols[j]);
    return r;
}

void Matrix::append_rows(const Matrix& o) {
    if (o.cols_ != cols_) throw std::invalid_argument("Matrix::append_rows: column mismatch");
    data_.insert(data_.end(), o.data_.begin(), o.data_.end());
    rows_ += o.rows_;
}

std::size_t Matrix::rank() const {
    Matrix a = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && a.at(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
        std::uint32_t inv = field_.inv(a.at(r, c));
        for (std::size_t i = r + 1; i < rows_; ++i) {
            std::uint32_t f = field_.mul(a.at(i, c), inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols_; ++j)
                a.at(i, j) = field_.sub(a.at(i, j), field_.mul(f, a.at(r, j)));
        }
        ++r;
    }
    return r;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix::inverse: not square");
    std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(field_, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) throw std::runtime_error("Matrix::inverse: singular matrix");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        std::uint32_t d = field_.inv(a.at(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            a.at(c, j) = field_.mul(a.at(c, j), d);
            inv.at(c, j) = field_.mul(inv.at(c, j), d);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            std::uint32_t f = a.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = field_.sub(a.at(i, j), field_.mul(f, a.at(c, j)));
                inv.at(i, j) = field_.sub(inv.at(i, j), field_.mul(f, inv.at(c, j)));
            }
        }
    }
    return inv;
}

std::vector<std::uint32_t> Matrix::solve(const std::vector<std::uint32_t>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("Matrix::solve: rhs size mismatch");
    Matrix a(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) a.at(i, j) = at(i, j);
        a.at(i, cols_) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && a.at(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = c; j <= cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
        std::uint32_t d = field_.inv(a.at(r, c));
        for (std::size_t j = c; j <= cols_; ++j) a.at(r, j) = field_.mul(a.at(r, j), d);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            std::uint32_t f = a.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = c; j <= cols_; ++j)
                a.at(i, j) = field_.sub(a.at(i, j), field_.mul(f, a.at(r, j)));
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows_; ++i)
        if (a.at(i, cols_) != 0) throw std::runtime_error("Matrix::solve: inconsistent system");
    if (pivot_col.size() < cols_)
        throw std::runtime_error("Matrix::solve: underdetermined system (rank " +
                                 std::to_string(pivot_col.size()) + " of " +
                                 std::to_string(cols_) + ")");
    std::vector<std::uint32_t> x(cols_, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a.at(i, cols_);
    return x;
}

std::vector<std::uint32_t> Matrix::apply(const std::vector<std::uint32_t>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
    std::vector<std::uint32_t> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc = field_.add(acc, field_.mul(at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

}  // namespace cmr
