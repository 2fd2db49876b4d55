#ifndef CMR_POLY_HPP
#define CMR_POLY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cmr/field.hpp"

namespace cmr {
namespace poly {

// Evaluate a polynomial given by coefficients (index = degree) at x.
inline std::uint32_t eval(const Field& f, const std::vector<std::uint32_t>& coeffs,
                          std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
    return acc;
}

// Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
// Returns coefficients of the unique polynomial of degree < xs.size().
inline std::vector<std::uint32_t> interpolate(const Field& f,
                                              const std::vector<std::uint32_t>& xs,
                                              const std::vector<std::uint32_t>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    std::size_t n = xs.size();
    std::vector<std::uint32_t> result(n, 0);
    std::vector<std::uint32_t> basis;
    for (std::size_t i = 0; i < n; ++i) {
        // basis = prod_{j != i} (X - xs[j]) / (xs[i] - xs[j])
        basis.assign(n, 0);
        basis[0] = 1;
        std::size_t deg = 0;
        std::uint32_t denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (xs[i] == xs[j]) throw std::invalid_argument("interpolate: duplicate x");
            denom = f.mul(denom, f.sub(xs[i], xs[j]));
            for (std::size_t d = deg + 2; d-- > 0;) {
                std::uint32_t hi = d > 0 ? basis[d - 1] : 0;
                basis[d] = f.sub(hi, f.mul(basis[d], xs[j]));
            }
            ++deg;
        }
        std::uint32_t scale = f.mul(ys[i], f.inv(denom));
        for (std::size_t d = 0; d < n; ++d)
            result[d] = f.add(result[d], f.mul(scale, basis[d]));
    }
    return result;
}

}  // namespace poly
}  // namespace cmr

#endif
