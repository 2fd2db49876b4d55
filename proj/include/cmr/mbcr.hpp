#ifndef CMR_MBCR_HPP
#define CMR_MBCR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cmr/field.hpp"
#include "cmr/matrix.hpp"

namespace cmr {
namespace mbcr {

// Minimum-bandwidth code from a bivariate polynomial F(X, Y) with monomial
// exponents (i, j) in {i<k, j<k} u {i<k, k<=j<d+t} u {k<=i<d, j<k}.
// Node v (0-based) stores F(x_v, y_v..y_{v+d+t-1}) then F(x_{v+1}..x_{v+d-1}, y_v),
// alpha = 2d+t-1 values. M = k(2d+t-k).
struct Code {
    int n = 0, k = 0, d = 0, t = 0;
    Field field;
    int M = 0;
    int alpha = 0;
    std::vector<std::pair<int, int>> monomials;           // (X exp, Y exp), size M
    std::vector<std::vector<std::pair<int, int>>> info_positions;  // per node v < k: (x idx, y idx)
    Matrix precode;      // A: coefficients = A * f, systematic at info positions
    Matrix info_eval;    // E = A^{-1}: evaluation map at info positions

    Code()
        : field(Field::prime(2)),
          precode(Field::prime(2), 0, 0),
          info_eval(Field::prime(2), 0, 0) {}

    std::uint32_t x_point(int idx) const;  // idx in [0, n+d-2], cyclic in field size
    std::uint32_t y_point(int idx) const;  // idx in [0, n+d+t-2]
    // Evaluation row over the monomial basis at (x_point(xi), y_point(yi)).
    std::vector<std::uint32_t> eval_row(int xi, int yi) const;
    // The (x idx, y idx) pairs node v stores, in payload order.
    std::vector<std::pair<int, int>> node_positions(int v) const;
    // alpha x M map from the file f to node v's payload.
    Matrix node_generator(int v) const;
};

Code build(int n, int k, int d, int t, const Field& field);

using Payload = std::vector<std::uint32_t>;

std::vector<Payload> encode(const Code& code, const std::vector<std::uint32_t>& f);

// Interpolated (h_v coefficients (d+t of them), g_v coefficients (d)) from a
// node's payload; h_v(y_v) = g_v(x_v) by construction.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> node_polynomials(
    const Code& code, const Payload& payload, int v);

struct RepairResult {
    std::vector<Payload> payloads;  // one per failed node, in given order
    std::size_t bandwidth = 0;      // downloaded symbols, = 2dt
};

// Each of the d helpers contributes 2t symbols {g_j(x_i), h_j(y_i) : i failed}.
RepairResult centralized_repair(const Code& code, const std::vector<int>& failed,
                                const std::vector<int>& helpers,
                                const std::vector<Payload>& helper_payloads);

std::vector<std::uint32_t> reconstruct(const Code& code, const std::vector<int>& nodes,
                                       const std::vector<Payload>& payloads);

// Rank of the stacked generator rows of the given nodes; equals
// b(2d+t-b) for any b <= k nodes.
std::size_t entropy_rank(const Code& code, const std::vector<int>& nodes);

}  // namespace mbcr
}  // namespace cmr

#endif
