#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmr/matrix.hpp"

using cmr::Field;
using cmr::Matrix;

namespace {

Matrix from_rows(const Field& f, const std::vector<std::vector<std::uint32_t>>& rows) {
    Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    Field f5 = Field::prime(5);
    CHECK(Matrix::identity(f5, 3).rank() == 3);
    CHECK(Matrix(f5, 2, 4).rank() == 0);
    Field f7 = Field::prime(7);
    Matrix m = from_rows(f7, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(m.rank() == 2);
}

TEST_CASE("rank equals transpose rank") {
    std::mt19937_64 rng(11);
    for (const Field& f : {Field::prime(5), Field::binary(8, 0x11D)}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
            Matrix m(f, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng() % f.size();
            CHECK(m.rank() == m.transpose().rank());
        }
    }
}

TEST_CASE("solve") {
    Field f = Field::prime(5);
    SUBCASE("identity") {
        Matrix i3 = Matrix::identity(f, 3);
        std::vector<std::uint32_t> b{1, 2, 3};
        CHECK(i3.solve(b) == b);
    }
    SUBCASE("2x2 over gf5") {
        Matrix a = from_rows(f, {{1, 1}, {1, 2}});
        std::vector<std::uint32_t> x = a.solve({0, 1});
        CHECK(x == std::vector<std::uint32_t>{4, 1});
    }
    SUBCASE("inconsistent system reports an error") {
        Matrix a = from_rows(f, {{1, 1}, {2, 2}});
        CHECK_THROWS_AS(a.solve({0, 1}), std::runtime_error);
    }
    SUBCASE("overdetermined consistent system") {
        Matrix a = from_rows(f, {{1, 0}, {0, 1}, {1, 1}});
        std::vector<std::uint32_t> x = a.solve({2, 3, 0});
        CHECK(x == std::vector<std::uint32_t>{2, 3});
    }
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(13);
    Field f = Field::binary(8, 0x11D);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 6;
        Matrix m(f, n, n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng() & 0xFF;
        } while (m.rank() < n);
        Matrix inv = m.inverse();
        CHECK(m.mul(inv) == Matrix::identity(f, n));
        CHECK(inv.mul(m) == Matrix::identity(f, n));
    }
    CHECK_THROWS_AS(Matrix(f, 2, 2).inverse(), std::runtime_error);
}

TEST_CASE("apply and submatrix") {
    Field f = Field::prime(7);
    Matrix a = from_rows(f, {{1, 2, 3}, {4, 5, 6}});
    CHECK(a.apply({1, 1, 1}) == std::vector<std::uint32_t>{6, 1});
    Matrix cols = a.submatrix_cols({0, 2});
    CHECK(cols.at(1, 1) == 6);
    Matrix rows = a.submatrix_rows({1});
    CHECK(rows.rows() == 1);
    CHECK(rows.at(0, 0) == 4);
}
