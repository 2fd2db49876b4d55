#ifndef CMR_RLNC_HPP
#define CMR_RLNC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cmr/field.hpp"
#include "cmr/matrix.hpp"

namespace cmr {
namespace rlnc {

// Functional-repair storage system simulated with random linear coding.
// Each node stores alpha = d-k+t random combinations of the M = k*alpha
// file symbols; correctness is any-k full rank, never payload equality.
struct State {
    int n = 0, k = 0, d = 0, t = 0;
    int M = 0;
    int alpha = 0;
    Field field;
    std::vector<Matrix> nodes;  // alpha x M coefficient matrices
    std::uint64_t rounds = 0;
    std::uint64_t bandwidth = 0;  // cumulative downloaded symbols

    State() : field(Field::prime(2)) {}
};

State init(int n, int k, int d, int t, const Field& field, std::mt19937_64& rng,
           int max_attempts = 32);

// True iff every k-subset of node matrices stacks to rank M.
bool data_collection_ok(const State& st);

// Each helper sends t random combinations of its rows (d*t total); each of
// the t replacements stores alpha fresh combinations of those.
void repair_round(State& st, const std::vector<int>& failed, const std::vector<int>& helpers,
                  std::mt19937_64& rng);

struct StressReport {
    int n = 0, k = 0, d = 0, t = 0;
    std::uint64_t rounds = 0;
    std::vector<std::uint64_t> failure_rounds;  // rounds where any-k rank dropped
    std::uint64_t bandwidth = 0;
    std::uint64_t bandwidth_per_round = 0;
    // gamma / bound per round; 1/1 when the round budget matches the
    // minimum-storage operating point.
    std::int64_t bound_ratio_num = 0;
    std::int64_t bound_ratio_den = 0;
    std::string to_json() const;
};

// Random failure patterns each round; check_every = 1 verifies the any-k
// property after every round, larger values spot-check.
StressReport stress(int n, int k, int d, int t, int rounds, const Field& field,
                    std::uint64_t seed, int check_every = 1);

}  // namespace rlnc
}  // namespace cmr

#endif
