#include "cmr/secret.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "cmr/poly.hpp"

namespace cmr {
namespace secret {

namespace {

Matrix zigzag_node_generator(const zigzag::Code& code, int node) {
    const auto& lay = code.layout;
    std::size_t M = static_cast<std::size_t>(lay.k) * lay.alpha;
    Matrix g(code.field, lay.alpha, M);
    if (node < lay.k) {
        for (std::uint32_t i = 0; i < lay.alpha; ++i)
            g.at(i, static_cast<std::size_t>(node) * lay.alpha + i) = 1;
        return g;
    }
    int l = node - lay.k;
    for (std::uint32_t s = 0; s < lay.alpha; ++s)
        for (int j = 0; j < lay.k; ++j) {
            std::uint32_t i = lay.shift(s, (lay.r - l) % lay.r, j);
            std::size_t c = static_cast<std::size_t>(j) * lay.alpha + i;
            g.at(s, c) = code.field.add(g.at(s, c), code.coeffs[l][s][j]);
        }
    return g;
}

}  // namespace

std::vector<std::size_t> Scheme::secret_columns() const {
    std::vector<std::size_t> cols;
    if (kind == Kind::MsmrZigzag) {
        for (int v = 0; v < t; ++v)
            for (int i = 0; i < alpha; ++i)
                cols.push_back(static_cast<std::size_t>(v) * alpha + i);
    } else {
        for (int c = R; c < M; ++c) cols.push_back(static_cast<std::size_t>(c));
    }
    return cols;
}

Matrix Scheme::share_generator(int share_idx) const {
    int node = share_to_node.at(share_idx);
    if (kind == Kind::MsmrZigzag) return zigzag_node_generator(zz, node);
    auto positions = mb.node_positions(node);
    Matrix evals(mb.field, positions.size(), mb.M);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        auto row = mb.eval_row(positions[i].first, positions[i].second);
        for (int c = 0; c < mb.M; ++c) evals.at(i, c) = row[c];
    }
    return evals.mul(mb_precode);
}

Scheme make_msmr_zigzag(int z, int t, int r, const Field& field, std::uint64_t seed) {
    if (z < 0 || t < 1) throw std::invalid_argument("secret scheme: need z >= 0, t >= 1");
    int k = z + t;
    if (k < 2) throw std::invalid_argument("secret scheme: need z + t >= 2");
    if (t > std::min(3, r))
        throw std::invalid_argument("secret scheme: zigzag repair supports t <= min(3, n-k)");
    Scheme s;
    s.kind = Kind::MsmrZigzag;
    s.zz = zigzag::build(r, k, field, seed);
    s.z = z;
    s.t = t;
    s.alpha = static_cast<int>(s.zz.alpha());
    s.M = k * s.alpha;
    s.Ms = t * s.alpha;
    s.R = s.M - s.Ms;
    s.N = s.zz.n() - t;
    for (int j = 0; j < t; ++j) s.punctured.push_back(j);
    for (int j = t; j < s.zz.n(); ++j) s.share_to_node.push_back(j);
    return s;
}

Scheme make_mbmr(int n, int d, int t, int z, const Field& field) {
    if (z < 0 || t < 1) throw std::invalid_argument("secret scheme: need z >= 0, t >= 1");
    int k = z + t;
    Scheme s;
    s.kind = Kind::MbmrBivariate;
    s.mb = mbcr::build(n, k, d, t, field);
    s.z = z;
    s.t = t;
    s.alpha = s.mb.alpha;
    s.M = s.mb.M;
    s.Ms = 2 * t * (d - z);
    s.R = s.M - s.Ms;
    s.N = n - t;
    for (int v = z; v < z + t; ++v) s.punctured.push_back(v);
    for (int v = 0; v < n; ++v)
        if (v < z || v >= z + t) s.share_to_node.push_back(v);

    // Randomness occupies the first z nodes' information positions. The
    // secret goes on the punctured nodes' polynomial lines, but only at
    // points no surviving share can evaluate: the punctured indices
    // themselves plus indices past n, which lie on no share's h- or g-line.
    for (int v = 0; v < z; ++v)
        for (auto pos : s.mb.info_positions[v]) s.mb_positions.push_back(pos);
    if (static_cast<int>(field.size()) < n + d - z)
        throw std::invalid_argument(
            "secret scheme: field too small to place the secret off the shares' lines");
    std::vector<int> y_idx(s.punctured.begin(), s.punctured.end());
    for (int i = 0; i < d - z; ++i) y_idx.push_back(n + i);
    for (int j : s.punctured)
        for (int i : y_idx) s.mb_positions.emplace_back(j, i);
    for (int j : s.punctured)
        for (int i = 0; i < d - z - t; ++i) s.mb_positions.emplace_back(n + i, j);
    if (static_cast<int>(s.mb_positions.size()) != s.M)
        throw std::invalid_argument("secret scheme: inconsistent position count");

    Matrix eval(field, s.M, s.M);
    for (int r = 0; r < s.M; ++r) {
        auto row = s.mb.eval_row(s.mb_positions[r].first, s.mb_positions[r].second);
        for (int c = 0; c < s.M; ++c) eval.at(r, c) = row[c];
    }
    s.mb_precode = eval.inverse();
    return s;
}

std::vector<Payload> share(const Scheme& s, const std::vector<std::uint32_t>& secret,
                           std::mt19937_64& rng) {
    if (secret.size() != static_cast<std::size_t>(s.Ms))
        throw std::invalid_argument("share: secret must be M_s symbols");
    std::uniform_int_distribution<std::uint32_t> dist(0, s.field().size() - 1);
    std::vector<std::uint32_t> f(s.M);
    std::vector<char> is_secret(s.M, 0);
    auto cols = s.secret_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        f[cols[i]] = secret[i];
        is_secret[cols[i]] = 1;
    }
    for (int i = 0; i < s.M; ++i)
        if (!is_secret[i]) f[i] = dist(rng);
    std::vector<Payload> shares;
    if (s.kind == Kind::MsmrZigzag) {
        std::vector<Payload> all = zigzag::encode(s.zz, f);
        for (int node : s.share_to_node) shares.push_back(all[node]);
        return shares;
    }
    std::vector<std::uint32_t> coeffs = s.mb_precode.apply(f);
    for (int node : s.share_to_node) {
        Payload p;
        for (auto [xi, yi] : s.mb.node_positions(node)) {
            auto row = s.mb.eval_row(xi, yi);
            std::uint32_t acc = 0;
            for (int c = 0; c < s.M; ++c)
                acc = s.mb.field.add(acc, s.mb.field.mul(row[c], coeffs[c]));
            p.push_back(acc);
        }
        shares.push_back(std::move(p));
    }
    return shares;
}

ReconstructResult reconstruct(const Scheme& s, const std::vector<int>& helper_shares,
                              const std::vector<Payload>& payloads) {
    if (helper_shares.size() != payloads.size())
        throw std::invalid_argument("reconstruct: one payload per share required");
    if (static_cast<int>(helper_shares.size()) <= s.z)
        throw std::invalid_argument("reconstruct: need more than z shares");
    ReconstructResult res;
    if (s.kind == Kind::MsmrZigzag) {
        if (static_cast<int>(helper_shares.size()) != s.N)
            throw std::invalid_argument("reconstruct: zigzag scheme needs all N shares");
        zigzag::Schedule sched = zigzag::multi_repair_schedule(s.zz, s.punctured);
        std::vector<Payload> ordered;
        for (const auto& h : sched.helpers) {
            auto it = std::find(s.share_to_node.begin(), s.share_to_node.end(), h.node);
            if (it == s.share_to_node.end())
                throw std::runtime_error("reconstruct: helper is not a share");
            std::size_t si = it - s.share_to_node.begin();
            auto pit = std::find(helper_shares.begin(), helper_shares.end(),
                                 static_cast<int>(si));
            if (pit == helper_shares.end())
                throw std::invalid_argument("reconstruct: missing share " + std::to_string(si));
            ordered.push_back(payloads[pit - helper_shares.begin()]);
        }
        res.secret = zigzag::execute_repair(s.zz, ordered, sched);
        res.bandwidth = sched.total_symbols();
        return res;
    }
    if (static_cast<int>(helper_shares.size()) != s.mb.d)
        throw std::invalid_argument("reconstruct: need exactly d shares");
    std::vector<int> helper_nodes;
    for (int si : helper_shares) helper_nodes.push_back(s.share_to_node.at(si));
    mbcr::RepairResult rep = mbcr::centralized_repair(s.mb, s.punctured, helper_nodes, payloads);
    // Interpolate the repaired nodes' polynomials, then read the secret off
    // at its evaluation positions.
    std::vector<std::vector<std::uint32_t>> h(s.punctured.size()), gp(s.punctured.size());
    for (std::size_t fi = 0; fi < s.punctured.size(); ++fi)
        std::tie(h[fi], gp[fi]) = mbcr::node_polynomials(s.mb, rep.payloads[fi], s.punctured[fi]);
    for (int c = s.R; c < s.M; ++c) {
        auto [xi, yi] = s.mb_positions[c];
        auto on_punctured = [&](int idx) {
            for (std::size_t fi = 0; fi < s.punctured.size(); ++fi)
                if (s.punctured[fi] == idx) return static_cast<int>(fi);
            return -1;
        };
        int fi = on_punctured(xi);
        if (fi >= 0)
            res.secret.push_back(poly::eval(s.mb.field, h[fi], s.mb.y_point(yi)));
        else
            res.secret.push_back(
                poly::eval(s.mb.field, gp[on_punctured(yi)], s.mb.x_point(xi)));
    }
    res.bandwidth = rep.bandwidth;
    return res;
}

ShareRepairResult repair_shares(const Scheme& s, const std::vector<int>& failed_shares,
                                const std::vector<int>& helper_shares,
                                const std::vector<Payload>& helper_payloads) {
    if (failed_shares.empty() || static_cast<int>(failed_shares.size()) > s.t)
        throw std::invalid_argument("repair_shares: need 1..t failed shares");
    if (helper_shares.size() != helper_payloads.size())
        throw std::invalid_argument("repair_shares: one payload per helper required");
    for (int f : failed_shares)
        if (std::find(helper_shares.begin(), helper_shares.end(), f) != helper_shares.end())
            throw std::invalid_argument("repair_shares: failed/helper overlap");
    ShareRepairResult res;

    if (s.kind == Kind::MsmrZigzag) {
        // Repair the failed shares jointly with the punctured nodes; every
        // remaining node must help.
        std::vector<int> F = s.punctured;
        for (int f : failed_shares) {
            int node = s.share_to_node.at(f);
            if (node >= s.zz.k())
                throw std::invalid_argument(
                    "repair_shares: zigzag scheme repairs systematic shares only");
            F.push_back(node);
        }
        if (static_cast<int>(F.size()) > std::min(3, s.zz.r()))
            throw std::invalid_argument("repair_shares: too many failures for zigzag repair");
        std::sort(F.begin(), F.end());
        if (helper_shares.size() != static_cast<std::size_t>(s.zz.n()) - F.size())
            throw std::invalid_argument("repair_shares: all surviving shares must help");
        zigzag::Schedule sched = zigzag::multi_repair_schedule(s.zz, F);
        std::vector<Payload> ordered;
        for (const auto& h : sched.helpers) {
            auto it = std::find(s.share_to_node.begin(), s.share_to_node.end(), h.node);
            std::size_t si = it - s.share_to_node.begin();
            auto pit = std::find(helper_shares.begin(), helper_shares.end(),
                                 static_cast<int>(si));
            if (it == s.share_to_node.end() || pit == helper_shares.end())
                throw std::invalid_argument("repair_shares: missing helper share");
            ordered.push_back(helper_payloads[pit - helper_shares.begin()]);
        }
        std::vector<std::uint32_t> rec = zigzag::execute_repair(s.zz, ordered, sched);
        res.bandwidth = sched.total_symbols();
        for (int f : failed_shares) {
            int node = s.share_to_node.at(f);
            std::size_t pos = std::find(F.begin(), F.end(), node) - F.begin();
            res.payloads.emplace_back(rec.begin() + pos * s.alpha,
                                      rec.begin() + (pos + 1) * s.alpha);
        }
        return res;
    }

    if (static_cast<int>(helper_shares.size()) != s.mb.d)
        throw std::invalid_argument("repair_shares: need exactly d helpers");
    // Pad the failed set up to t base nodes, preferring the punctured nodes.
    std::set<int> used;
    std::vector<int> F;
    for (int f : failed_shares) {
        F.push_back(s.share_to_node.at(f));
        used.insert(F.back());
    }
    std::vector<int> helper_nodes;
    for (int h : helper_shares) {
        helper_nodes.push_back(s.share_to_node.at(h));
        used.insert(helper_nodes.back());
    }
    for (int v : s.punctured)
        if (static_cast<int>(F.size()) < s.t && !used.count(v)) { F.push_back(v); used.insert(v); }
    for (int v = 0; v < s.mb.n && static_cast<int>(F.size()) < s.t; ++v)
        if (!used.count(v)) { F.push_back(v); used.insert(v); }
    if (static_cast<int>(F.size()) != s.t)
        throw std::invalid_argument("repair_shares: cannot assemble t disjoint repair targets");
    mbcr::RepairResult rep = mbcr::centralized_repair(s.mb, F, helper_nodes, helper_payloads);
    res.bandwidth = rep.bandwidth;
    for (std::size_t i = 0; i < failed_shares.size(); ++i)
        res.payloads.push_back(rep.payloads[i]);
    return res;
}

LeakageReport leakage(const Scheme& s, const std::vector<int>& subset) {
    LeakageReport rep;
    rep.subset = subset;
    if (subset.empty()) return rep;
    Matrix g(s.field(), 0, s.M);
    for (int si : subset) g.append_rows(s.share_generator(si));
    auto cols = s.secret_columns();
    std::vector<char> is_secret(s.M, 0);
    for (std::size_t c : cols) is_secret[c] = 1;
    std::vector<std::size_t> rand_cols;
    for (int c = 0; c < s.M; ++c)
        if (!is_secret[c]) rand_cols.push_back(c);
    std::size_t full = g.rank();
    std::size_t rand_only = g.submatrix_cols(rand_cols).rank();
    rep.leaked = full - rand_only;
    return rep;
}

BruteForceReport brute_force_secrecy(const Scheme& s, const std::vector<int>& subset,
                                     std::size_t budget) {
    BruteForceReport rep;
    std::uint32_t q = s.field().size();
    double count = 1;
    for (int i = 0; i < s.R; ++i) count *= q;
    if (count > static_cast<double>(budget))
        throw std::invalid_argument("brute_force_secrecy: q^R exceeds the enumeration budget");
    rep.enumerations = static_cast<std::size_t>(count);

    Matrix g(s.field(), 0, s.M);
    for (int si : subset) g.append_rows(s.share_generator(si));
    auto secret_cols = s.secret_columns();
    std::vector<char> is_secret(s.M, 0);
    for (std::size_t c : secret_cols) is_secret[c] = 1;
    std::vector<std::size_t> rand_cols;
    for (int c = 0; c < s.M; ++c)
        if (!is_secret[c]) rand_cols.push_back(c);

    // Secrets to test: all of them when few, otherwise zero plus samples.
    std::vector<std::vector<std::uint32_t>> secrets;
    double nsec = 1;
    for (int i = 0; i < s.Ms; ++i) nsec *= q;
    if (nsec <= 64) {
        std::vector<std::uint32_t> sec(s.Ms, 0);
        for (;;) {
            secrets.push_back(sec);
            int p = s.Ms - 1;
            while (p >= 0 && ++sec[p] == q) sec[p--] = 0;
            if (p < 0) break;
        }
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<std::uint32_t> dist(0, q - 1);
        secrets.emplace_back(s.Ms, 0);
        for (int x = 0; x < 8; ++x) {
            std::vector<std::uint32_t> sec(s.Ms);
            for (auto& v : sec) v = dist(rng);
            secrets.push_back(sec);
        }
    }

    std::map<std::vector<std::uint32_t>, std::uint64_t> reference;
    std::vector<std::uint32_t> f(s.M, 0);
    for (std::size_t sx = 0; sx < secrets.size(); ++sx) {
        for (std::size_t i = 0; i < secret_cols.size(); ++i)
            f[secret_cols[i]] = secrets[sx][i];
        std::map<std::vector<std::uint32_t>, std::uint64_t> dist_map;
        std::vector<std::uint32_t> rv(s.R, 0);
        for (;;) {
            for (std::size_t i = 0; i < rand_cols.size(); ++i) f[rand_cols[i]] = rv[i];
            dist_map[g.apply(f)] += 1;
            int p = s.R - 1;
            while (p >= 0 && ++rv[p] == q) rv[p--] = 0;
            if (p < 0) break;
        }
        if (sx == 0) reference = std::move(dist_map);
        else if (dist_map != reference) {
            rep.detail = "observation distributions differ between secrets";
            return rep;
        }
    }
    rep.perfect = true;
    return rep;
}

}  // namespace secret
}  // namespace cmr
