#include "cmr/bounds.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace cmr {
namespace bounds {

void CmrParams::validate() const {
    if (k < 1 || d < k) throw std::invalid_argument("params: need 1 <= k <= d");
    if (t < 1) throw std::invalid_argument("params: need t >= 1");
    if (n > 0 && d > n - t) throw std::invalid_argument("params: need d <= n - t");
}

void validate_partition(const Partition& part, int k, int t) {
    int sum = 0;
    for (int b : part) {
        if (b < 1 || b > t)
            throw std::invalid_argument("partition: block sizes must be in [1, t]");
        sum += b;
    }
    if (sum != k) throw std::invalid_argument("partition: blocks must sum to k");
}

Rational file_size_bound(const CmrParams& p, const Partition& part) {
    p.validate();
    validate_partition(part, p.k, p.t);
    Rational total;
    int placed = 0;
    for (int b : part) {
        total += min(Rational(b) * p.alpha, Rational(p.d - placed) * p.beta);
        placed += b;
    }
    return total;
}

namespace {

void enumerate_compositions(int remaining, int t, Partition& cur, const CmrParams& p,
                            Rational& best, Partition& best_part) {
    if (remaining == 0) {
        Rational v = file_size_bound(p, cur);
        if (best_part.empty() || v < best) {
            best = v;
            best_part = cur;
        }
        return;
    }
    for (int b = 1; b <= t && b <= remaining; ++b) {
        cur.push_back(b);
        enumerate_compositions(remaining - b, t, cur, p, best, best_part);
        cur.pop_back();
    }
}

}  // namespace

std::pair<Rational, Partition> min_file_size_bound(const CmrParams& p) {
    p.validate();
    Rational best;
    Partition best_part;
    if (p.k <= 12) {
        Partition cur;
        enumerate_compositions(p.k, p.t, cur, p, best, best_part);
        return {best, best_part};
    }
    int full = p.k / p.t;
    int rem = p.k % p.t;
    Partition base(full, p.t);
    if (rem == 0) return {file_size_bound(p, base), base};
    for (int pos = 0; pos <= full; ++pos) {
        Partition cand = base;
        cand.insert(cand.begin() + pos, rem);
        Rational v = file_size_bound(p, cand);
        if (best_part.empty() || v < best) {
            best = v;
            best_part = cand;
        }
    }
    return {best, best_part};
}

std::pair<Rational, Rational> msmr_point(std::int64_t M, int k, int d, int t) {
    if (k < 1 || d < k || t < 1) throw std::invalid_argument("msmr_point: need 1 <= k <= d, t >= 1");
    if (M % k != 0) throw std::invalid_argument("msmr_point: k must divide M");
    Rational alpha(M / k);
    Rational gamma(M * d * t, static_cast<std::int64_t>(k) * (d - k + t));
    return {alpha, gamma};
}

Rational mbmr_point(std::int64_t M, int k, int d, int t) {
    if (k < 1 || d < k || t < 1) throw std::invalid_argument("mbmr_point: need 1 <= k <= d, t >= 1");
    if (k % t != 0)
        throw std::invalid_argument("mbmr_point: t must divide k; use mbmr_hb_condition otherwise");
    return Rational(2 * M * d * t, static_cast<std::int64_t>(k) * (2 * d - k + t));
}

Rational mbmr_hb_condition(int b, int d, int t, const Rational& beta) {
    if (b < 0 || b >= t) throw std::invalid_argument("mbmr_hb_condition: need 0 <= b < t");
    Rational inner = Rational(static_cast<std::int64_t>(b) * (2 * d + t - 1), 2) -
                     Rational(static_cast<std::int64_t>(b) * (b - 1), 2);
    return beta / Rational(t) * inner;
}

Rational MbcrOperatingParams::entropy(int b) const {
    Rational inner = Rational(static_cast<std::int64_t>(b) * (2 * d + t - 1), 2) -
                     Rational(static_cast<std::int64_t>(b) * (b - 1), 2);
    return inner * beta;
}

MbcrOperatingParams mbcr_operating_params(std::int64_t M, int k, int d, int t) {
    if (k < 1 || d < k || t < 1)
        throw std::invalid_argument("mbcr_operating_params: need 1 <= k <= d, t >= 1");
    MbcrOperatingParams r;
    std::int64_t denom = static_cast<std::int64_t>(k) * (2 * d + t - k);
    r.alpha = Rational(M * (2 * d + t - 1), denom);
    r.beta = Rational(2 * M, denom);
    r.beta_prime = Rational(M, denom);
    r.d = d;
    r.t = t;
    return r;
}

Rational secret_bw_bound(std::int64_t M_s, int z, int d) {
    if (d <= z) throw std::invalid_argument("secret_bw_bound: need d > z");
    return Rational(static_cast<std::int64_t>(d) * M_s, d - z);
}

}  // namespace bounds
}  // namespace cmr
