#ifndef CMR_ZIGZAG_HPP
#define CMR_ZIGZAG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cmr/field.hpp"

namespace cmr {
namespace zigzag {

// Row-index geometry of an (n = k + r, k) zigzag array code. Rows of a node
// are indexed by vectors in Z_r^m, m = k - 1, packed base-r with the first
// coordinate most significant. Node 0 is associated with the zero vector,
// node j >= 1 with the unit vector e_j.
struct Layout {
    int r = 0;
    int k = 0;
    int m = 0;                // k - 1
    std::uint32_t alpha = 0;  // r^m

    Layout() = default;
    Layout(int r_, int k_);

    int digit(std::uint32_t i, int j) const;  // j in [1, m]
    // i + l*e_j (coordinate-wise mod r); j = 0 is the zero vector.
    std::uint32_t shift(std::uint32_t i, int l, int j) const;
    int digit_sum(std::uint32_t i) const;

    std::vector<int> to_vec(std::uint32_t i) const;
    std::uint32_t to_int(const std::vector<int>& v) const;
};

// Parity rows downloaded when repairing systematic node j alone:
// j = 0 -> {s : digit_sum(s) = l}; j >= 1 -> {s : digit_j(s) = 0}.
std::vector<std::uint32_t> d_set(const Layout& lay, int j, int l);

// Rows of parity l participating in the repair of exactly the nodes in S,
// relative to the failure pattern `failed` (S subset of failed).
std::vector<std::uint32_t> u_set(const Layout& lay, const std::vector<int>& failed,
                                 const std::vector<int>& S, int l);

struct Code {
    Layout layout;
    Field field = Field::prime(2);
    std::uint64_t seed = 0;
    // coeffs[l][s][j]: coefficient of node j's symbol in row s of parity l;
    // all nonzero.
    std::vector<std::vector<std::vector<std::uint32_t>>> coeffs;

    int n() const { return layout.k + layout.r; }
    int k() const { return layout.k; }
    int r() const { return layout.r; }
    std::uint32_t alpha() const { return layout.alpha; }
};

struct BuildOptions {
    bool verify_mds = true;
    bool verify_schedules = true;
    int max_attempts = 32;
};

// Random nonzero coefficients from the seed, verified (MDS rank checks and
// solvability of every supported repair schedule) with reseed-and-retry.
Code build(int r, int k, const Field& field, std::uint64_t seed,
           const BuildOptions& opts = BuildOptions());

using Payload = std::vector<std::uint32_t>;

// data = k*alpha symbols, node-major (node j owns data[j*alpha .. j*alpha+alpha)).
std::vector<Payload> encode(const Code& code, const std::vector<std::uint32_t>& data);

struct HelperPlan {
    int node = 0;
    std::vector<std::uint32_t> rows;  // sorted
    std::vector<int> stage;           // 1 or 2, parallel to rows
};

struct Schedule {
    std::vector<int> failed;  // sorted systematic node indices
    std::vector<HelperPlan> helpers;

    std::size_t total_symbols() const;
    const HelperPlan* plan_for(int node) const;
};

Schedule single_repair_schedule(const Code& code, int j);
// |failed| in [1, min(3, r)], failed systematic.
Schedule multi_repair_schedule(const Code& code, std::vector<int> failed);

// Recovered symbols for the failed nodes, concatenated in ascending node
// order (alpha symbols each). payloads[i] belongs to survivors in the
// schedule's helper order.
std::vector<std::uint32_t> execute_repair(const Code& code,
                                          const std::vector<Payload>& helper_payloads,
                                          const Schedule& sched);

std::vector<std::uint32_t> decode_any_k(const Code& code, const std::vector<int>& nodes,
                                        const std::vector<Payload>& payloads);

struct CountReport {
    bool pass = false;
    std::size_t per_helper_target = 0;
    std::size_t total = 0;
    std::vector<std::pair<int, std::size_t>> per_helper;  // node, count
};

CountReport verify_schedule_counts(const Code& code, const Schedule& sched);

struct SolvabilityReport {
    bool solvable = false;
    std::size_t matching = 0;  // max bipartite matching size
    std::size_t rank = 0;      // exact rank of the repair system
    std::size_t unknowns = 0;
    std::string detail;
};

SolvabilityReport verify_solvability(const Code& code, const Schedule& sched);

}  // namespace zigzag
}  // namespace cmr

#endif
