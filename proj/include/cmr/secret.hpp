#ifndef CMR_SECRET_HPP
#define CMR_SECRET_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cmr/field.hpp"
#include "cmr/matrix.hpp"
#include "cmr/mbcr.hpp"
#include "cmr/zigzag.hpp"

namespace cmr {
namespace secret {

enum class Kind { MsmrZigzag, MbmrBivariate };

// Secret sharing by puncturing a storage code: the file is (secret,
// randomness), encoded, and the punctured nodes' payloads are discarded.
// Reconstruction repairs the punctured nodes from the shares.
struct Scheme {
    Kind kind = Kind::MsmrZigzag;
    int N = 0;   // shares
    int z = 0;   // collusion threshold
    int t = 0;   // punctured nodes
    int M = 0;   // base file symbols
    int Ms = 0;  // secret symbols
    int R = 0;   // randomness symbols
    int alpha = 0;
    std::vector<int> punctured;      // base node indices
    std::vector<int> share_to_node;  // share index -> base node index

    zigzag::Code zz;
    mbcr::Code mb;
    // mbmr only: the M evaluation positions defining the scheme's coordinate
    // system (R randomness positions first, then the Ms secret positions,
    // none of which lie on a surviving share's polynomial lines), and the
    // matching precode.
    std::vector<std::pair<int, int>> mb_positions;
    Matrix mb_precode = Matrix(Field::prime(2), 0, 0);

    const Field& field() const { return kind == Kind::MsmrZigzag ? zz.field : mb.field; }
    // Columns of the file vector carrying the secret (the rest carry
    // randomness).
    std::vector<std::size_t> secret_columns() const;
    // alpha x M map from the file vector to a share's payload.
    Matrix share_generator(int share_idx) const;
};

// Base zigzag code with k = z + t; punctured = systematic nodes 0..t-1;
// secret = their t*alpha symbols.
Scheme make_msmr_zigzag(int z, int t, int r, const Field& field, std::uint64_t seed);

// Base bivariate code (n, k = z + t, d, t); punctured = nodes z..z+t-1;
// secret = 2t(d-z) evaluations of the punctured nodes' polynomials at
// points no surviving share can evaluate.
Scheme make_mbmr(int n, int d, int t, int z, const Field& field);

using Payload = std::vector<std::uint32_t>;

std::vector<Payload> share(const Scheme& s, const std::vector<std::uint32_t>& secret,
                           std::mt19937_64& rng);

struct ReconstructResult {
    std::vector<std::uint32_t> secret;
    std::size_t bandwidth = 0;
};

// helper_shares lists d share indices (msmr-zigzag requires all N).
ReconstructResult reconstruct(const Scheme& s, const std::vector<int>& helper_shares,
                              const std::vector<Payload>& payloads);

struct ShareRepairResult {
    std::vector<Payload> payloads;  // repaired failed shares, in given order
    std::size_t bandwidth = 0;
};

// msmr-zigzag: repairs failed shares together with the punctured nodes
// (t' + t <= 3, systematic shares only). mbmr: pads the failed set to t
// with survivors and runs the base t-node repair.
ShareRepairResult repair_shares(const Scheme& s, const std::vector<int>& failed_shares,
                                const std::vector<int>& helper_shares,
                                const std::vector<Payload>& helper_payloads);

struct LeakageReport {
    std::vector<int> subset;
    std::size_t leaked = 0;  // q-ary symbols: rank(full) - rank(randomness part)
};

LeakageReport leakage(const Scheme& s, const std::vector<int>& subset);

struct BruteForceReport {
    bool perfect = false;
    std::size_t enumerations = 0;  // per secret value
    std::string detail;
};

// Exhaustive check: the observation distribution of subset E must be
// identical for every secret value. Requires q^R within budget.
BruteForceReport brute_force_secrecy(const Scheme& s, const std::vector<int>& subset,
                                     std::size_t budget = 1000000);

}  // namespace secret
}  // namespace cmr

#endif
