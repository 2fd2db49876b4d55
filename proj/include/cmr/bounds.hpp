#ifndef CMR_BOUNDS_HPP
#define CMR_BOUNDS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cmr/rational.hpp"

namespace cmr {
namespace bounds {

// Parameters of a storage system where t failed nodes are rebuilt centrally
// from beta symbols downloaded off each of d helpers (gamma = d*beta total).
struct CmrParams {
    int n = 0;
    int k = 0;
    int d = 0;
    int t = 1;
    Rational alpha;
    Rational beta;

    void validate() const;  // throws std::invalid_argument
    Rational gamma() const { return Rational(d) * beta; }
};

// Ordered composition of k into blocks of size <= t.
using Partition = std::vector<int>;

void validate_partition(const Partition& part, int k, int t);

// Sum_i min{ n_i*alpha, (d - sum_{j<i} n_j)*beta } over the blocks.
Rational file_size_bound(const CmrParams& p, const Partition& part);

// Minimum of file_size_bound over ordered compositions of k with parts <= t.
// Exhaustive for k <= 12; beyond that only the canonical family with one
// block of size k mod t and the rest of size t (all placements of the
// short block are tried).
std::pair<Rational, Partition> min_file_size_bound(const CmrParams& p);

// Minimum-storage operating point: alpha = M/k, gamma = M*d*t/(k(d-k+t)).
// Requires k | M.
std::pair<Rational, Rational> msmr_point(std::int64_t M, int k, int d, int t);

// Minimum-bandwidth operating point gamma = 2*M*d*t/(k(2d-k+t)). Requires t | k.
Rational mbmr_point(std::int64_t M, int k, int d, int t);

// Entropy threshold for b < t nodes: (beta/t)*[ b(2d+t-1)/2 - C(b,2) ].
Rational mbmr_hb_condition(int b, int d, int t, const Rational& beta);

struct MbcrOperatingParams {
    Rational alpha;
    Rational beta;
    Rational beta_prime;
    // H_b = (b(2d+t-1)/2 - C(b,2)) * beta
    Rational entropy(int b) const;
    int d = 0;
    int t = 0;
};

MbcrOperatingParams mbcr_operating_params(std::int64_t M, int k, int d, int t);

// Lower bound d*M_s/(d - z) on total download when reconstructing an
// M_s-symbol secret from d shares under z-collusion secrecy.
Rational secret_bw_bound(std::int64_t M_s, int z, int d);

}  // namespace bounds
}  // namespace cmr

#endif
