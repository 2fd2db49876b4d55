#include "cmr/rlnc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cmr/rational.hpp"

namespace cmr {
namespace rlnc {

namespace {

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(f, rows, cols);
    std::uniform_int_distribution<std::uint32_t> dist(0, f.size() - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

template <typename Fn>
bool all_k_subsets(int n, int k, Fn fn) {
    std::vector<int> idx(k);
    std::function<bool(int, int)> rec = [&](int start, int depth) {
        if (depth == k) return fn(idx);
        for (int i = start; i <= n - (k - depth); ++i) {
            idx[depth] = i;
            if (!rec(i + 1, depth + 1)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

}  // namespace

State init(int n, int k, int d, int t, const Field& field, std::mt19937_64& rng,
           int max_attempts) {
    if (k < 1 || d < k || t < 1) throw std::invalid_argument("rlnc init: need 1 <= k <= d, t >= 1");
    if (d > n - t) throw std::invalid_argument("rlnc init: need d <= n - t");
    State st;
    st.n = n;
    st.k = k;
    st.d = d;
    st.t = t;
    st.alpha = d - k + t;
    st.M = k * st.alpha;
    st.field = field;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        st.nodes.clear();
        for (int i = 0; i < n; ++i)
            st.nodes.push_back(random_matrix(field, st.alpha, st.M, rng));
        if (data_collection_ok(st)) return st;
    }
    throw std::runtime_error("rlnc init: could not reach any-k full rank; field too small");
}

bool data_collection_ok(const State& st) {
    return all_k_subsets(st.n, st.k, [&](const std::vector<int>& idx) {
        Matrix stacked(st.field, 0, st.M);
        for (int i : idx) stacked.append_rows(st.nodes[i]);
        return stacked.rank() == static_cast<std::size_t>(st.M);
    });
}

void repair_round(State& st, const std::vector<int>& failed, const std::vector<int>& helpers,
                  std::mt19937_64& rng) {
    if (static_cast<int>(failed.size()) != st.t)
        throw std::invalid_argument("rlnc repair: need exactly t failed nodes");
    if (static_cast<int>(helpers.size()) != st.d)
        throw std::invalid_argument("rlnc repair: need exactly d helpers");
    for (int h : helpers)
        if (std::find(failed.begin(), failed.end(), h) != failed.end())
            throw std::invalid_argument("rlnc repair: failed/helper overlap");
    Matrix received(st.field, 0, st.M);
    for (int h : helpers) {
        Matrix mix = random_matrix(st.field, st.t, st.alpha, rng);
        received.append_rows(mix.mul(st.nodes[h]));
    }
    for (int f : failed) {
        Matrix mix = random_matrix(st.field, st.alpha, received.rows(), rng);
        st.nodes[f] = mix.mul(received);
    }
    st.rounds += 1;
    st.bandwidth += static_cast<std::uint64_t>(st.d) * st.t;
}

StressReport stress(int n, int k, int d, int t, int rounds, const Field& field,
                    std::uint64_t seed, int check_every) {
    std::mt19937_64 rng(seed);
    State st = init(n, k, d, t, field, rng);
    StressReport rep;
    rep.n = n;
    rep.k = k;
    rep.d = d;
    rep.t = t;
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int r = 1; r <= rounds; ++r) {
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<int> failed(ids.begin(), ids.begin() + t);
        std::vector<int> helpers(ids.begin() + t, ids.begin() + t + d);
        repair_round(st, failed, helpers, rng);
        if (check_every > 0 && (r % check_every == 0 || r == rounds))
            if (!data_collection_ok(st)) rep.failure_rounds.push_back(r);
    }
    rep.rounds = st.rounds;
    rep.bandwidth = st.bandwidth;
    rep.bandwidth_per_round = static_cast<std::uint64_t>(d) * t;
    // bound per round: M*d*t / (k(d-k+t)) = d*t in these units
    Rational bound(static_cast<std::int64_t>(st.M) * d * t,
                   static_cast<std::int64_t>(k) * (d - k + t));
    Rational ratio = Rational(static_cast<std::int64_t>(rep.bandwidth_per_round)) / bound;
    rep.bound_ratio_num = ratio.num();
    rep.bound_ratio_den = ratio.den();
    return rep;
}

std::string StressReport::to_json() const {
    std::ostringstream os;
    os << "{\"params\":{\"n\":" << n << ",\"k\":" << k << ",\"d\":" << d << ",\"t\":" << t
       << "},\"rounds\":" << rounds << ",\"failures\":[";
    for (std::size_t i = 0; i < failure_rounds.size(); ++i)
        os << (i ? "," : "") << failure_rounds[i];
    os << "],\"bandwidth_per_round\":" << bandwidth_per_round << ",\"bound_ratio\":\""
       << bound_ratio_num << "/" << bound_ratio_den << "\"}";
    return os.str();
}

}  // namespace rlnc
}  // namespace cmr
