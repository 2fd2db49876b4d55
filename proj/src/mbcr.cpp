#include "cmr/mbcr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cmr/poly.hpp"

namespace cmr {
namespace mbcr {

std::uint32_t Code::x_point(int idx) const { return static_cast<std::uint32_t>(idx) % field.size(); }

std::uint32_t Code::y_point(int idx) const { return static_cast<std::uint32_t>(idx) % field.size(); }

std::vector<std::uint32_t> Code::eval_row(int xi, int yi) const {
    std::uint32_t x = x_point(xi), y = y_point(yi);
    std::vector<std::uint32_t> row(M);
    for (int c = 0; c < M; ++c)
        row[c] = field.mul(field.pow(x, monomials[c].first), field.pow(y, monomials[c].second));
    return row;
}

std::vector<std::pair<int, int>> Code::node_positions(int v) const {
    std::vector<std::pair<int, int>> pos;
    for (int j = 0; j < d + t; ++j) pos.push_back({v, v + j});
    for (int i = 1; i < d; ++i) pos.push_back({v + i, v});
    return pos;
}

Matrix Code::node_generator(int v) const {
    Matrix rows(field, alpha, M);
    auto pos = node_positions(v);
    for (int p = 0; p < alpha; ++p) {
        auto row = eval_row(pos[p].first, pos[p].second);
        for (int c = 0; c < M; ++c) rows.at(p, c) = row[c];
    }
    return rows.mul(precode);
}

Code build(int n, int k, int d, int t, const Field& field) {
    if (k < 1 || d < k || t < 1) throw std::invalid_argument("mbcr build: need 1 <= k <= d, t >= 1");
    if (d > n - t) throw std::invalid_argument("mbcr build: need d <= n - t");
    if (static_cast<int>(field.size()) < std::max(n, d + t))
        throw std::invalid_argument("mbcr build: field too small for distinct evaluation points");

    Code code;
    code.n = n;
    code.k = k;
    code.d = d;
    code.t = t;
    code.field = field;
    code.M = k * (2 * d + t - k);
    code.alpha = 2 * d + t - 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) code.monomials.push_back({i, j});
    for (int i = 0; i < k; ++i)
        for (int j = k; j < d + t; ++j) code.monomials.push_back({i, j});
    for (int i = k; i < d; ++i)
        for (int j = 0; j < k; ++j) code.monomials.push_back({i, j});
    if (static_cast<int>(code.monomials.size()) != code.M)
        throw std::runtime_error("mbcr build: monomial count mismatch");

    // Information set: node v keeps the y window tail [v, d+t-1] of its h
    // part and the x window tail [v+1, d-1] of its g part; these M positions
    // are each stored on exactly one of the first k nodes.
    code.info_positions.resize(k);
    Matrix E(field, code.M, code.M);
    int rix = 0;
    for (int v = 0; v < k; ++v) {
        for (int j = v; j < d + t; ++j) code.info_positions[v].push_back({v, j});
        for (int i = v + 1; i < d; ++i) code.info_positions[v].push_back({i, v});
        for (const auto& [xi, yi] : code.info_positions[v]) {
            auto row = code.eval_row(xi, yi);
            for (int c = 0; c < code.M; ++c) E.at(rix, c) = row[c];
            ++rix;
        }
    }
    if (rix != code.M) throw std::runtime_error("mbcr build: information set size mismatch");
    code.info_eval = E;
    code.precode = E.inverse();
    return code;
}

std::vector<Payload> encode(const Code& code, const std::vector<std::uint32_t>& f) {
    if (f.size() != static_cast<std::size_t>(code.M))
        throw std::invalid_argument("mbcr encode: file must be M symbols");
    std::vector<std::uint32_t> coeffs = code.precode.apply(f);
    std::vector<Payload> out(code.n);
    for (int v = 0; v < code.n; ++v) {
        auto pos = code.node_positions(v);
        Payload p;
        p.reserve(pos.size());
        for (const auto& [xi, yi] : pos) {
            auto row = code.eval_row(xi, yi);
            std::uint32_t acc = 0;
            for (int c = 0; c < code.M; ++c)
                acc = code.field.add(acc, code.field.mul(row[c], coeffs[c]));
            p.push_back(acc);
        }
        out[v] = std::move(p);
    }
    return out;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> node_polynomials(
    const Code& code, const Payload& payload, int v) {
    if (payload.size() != static_cast<std::size_t>(code.alpha))
        throw std::invalid_argument("node_polynomials: payload size mismatch");
    const Field& F = code.field;
    std::vector<std::uint32_t> ys, hy;
    for (int j = 0; j < code.d + code.t; ++j) {
        ys.push_back(code.y_point(v + j));
        hy.push_back(payload[j]);
    }
    std::vector<std::uint32_t> h = poly::interpolate(F, ys, hy);
    std::vector<std::uint32_t> xs{code.x_point(v)}, gx{payload[0]};  // g_v(x_v) = h_v(y_v)
    for (int i = 1; i < code.d; ++i) {
        xs.push_back(code.x_point(v + i));
        gx.push_back(payload[code.d + code.t + i - 1]);
    }
    std::vector<std::uint32_t> g = poly::interpolate(F, xs, gx);
    return {h, g};
}

RepairResult centralized_repair(const Code& code, const std::vector<int>& failed,
                                const std::vector<int>& helpers,
                                const std::vector<Payload>& helper_payloads) {
    if (static_cast<int>(failed.size()) != code.t)
        throw std::invalid_argument("centralized_repair: need exactly t failed nodes");
    if (static_cast<int>(helpers.size()) != code.d || helper_payloads.size() != helpers.size())
        throw std::invalid_argument("centralized_repair: need exactly d helpers with payloads");
    std::set<int> all(failed.begin(), failed.end());
    for (int h : helpers)
        if (!all.insert(h).second)
            throw std::invalid_argument("centralized_repair: failed/helper sets must be disjoint");

    const Field& F = code.field;
    // Downloaded symbols: per helper j, {g_j(x_i), h_j(y_i)} for each failed i.
    std::vector<std::vector<std::uint32_t>> g_at_xi(failed.size());  // [fi][helper]
    std::vector<std::vector<std::uint32_t>> h_at_yi(failed.size());
    for (std::size_t hx = 0; hx < helpers.size(); ++hx) {
        auto [h, g] = node_polynomials(code, helper_payloads[hx], helpers[hx]);
        for (std::size_t fi = 0; fi < failed.size(); ++fi) {
            g_at_xi[fi].push_back(poly::eval(F, g, code.x_point(failed[fi])));
            h_at_yi[fi].push_back(poly::eval(F, h, code.y_point(failed[fi])));
        }
    }
    RepairResult res;
    res.bandwidth = 2 * failed.size() * helpers.size();

    // g_i(X) = F(X, y_i): d evaluations g_i(x_j) = h_j(y_i).
    std::vector<std::vector<std::uint32_t>> g_polys;
    std::vector<std::uint32_t> helper_x;
    for (int j : helpers) helper_x.push_back(code.x_point(j));
    for (std::size_t fi = 0; fi < failed.size(); ++fi)
        g_polys.push_back(poly::interpolate(F, helper_x, h_at_yi[fi]));

    // h_i(Y) = F(x_i, Y): d evaluations h_i(y_j) = g_j(x_i) plus t
    // evaluations h_i(y_i') = g_i'(x_i) from the recovered g polynomials.
    for (std::size_t fi = 0; fi < failed.size(); ++fi) {
        std::vector<std::uint32_t> ys, vals;
        for (std::size_t hx = 0; hx < helpers.size(); ++hx) {
            ys.push_back(code.y_point(helpers[hx]));
            vals.push_back(g_at_xi[fi][hx]);
        }
        for (std::size_t fj = 0; fj < failed.size(); ++fj) {
            ys.push_back(code.y_point(failed[fj]));
            vals.push_back(poly::eval(F, g_polys[fj], code.x_point(failed[fi])));
        }
        std::vector<std::uint32_t> h = poly::interpolate(F, ys, vals);
        Payload p;
        for (int j = 0; j < code.d + code.t; ++j)
            p.push_back(poly::eval(F, h, code.y_point(failed[fi] + j)));
        for (int i = 1; i < code.d; ++i)
            p.push_back(poly::eval(F, g_polys[fi], code.x_point(failed[fi] + i)));
        res.payloads.push_back(std::move(p));
    }
    return res;
}

std::vector<std::uint32_t> reconstruct(const Code& code, const std::vector<int>& nodes,
                                       const std::vector<Payload>& payloads) {
    if (nodes.size() != static_cast<std::size_t>(code.k) || payloads.size() != nodes.size())
        throw std::invalid_argument("mbcr reconstruct: exactly k nodes required");
    Matrix a(code.field, nodes.size() * code.alpha, code.M);
    std::vector<std::uint32_t> b;
    std::size_t e = 0;
    for (std::size_t x = 0; x < nodes.size(); ++x) {
        auto pos = code.node_positions(nodes[x]);
        for (int p = 0; p < code.alpha; ++p, ++e) {
            auto row = code.eval_row(pos[p].first, pos[p].second);
            for (int c = 0; c < code.M; ++c) a.at(e, c) = row[c];
            b.push_back(payloads[x][p]);
        }
    }
    std::vector<std::uint32_t> coeffs = a.solve(b);
    return code.info_eval.apply(coeffs);
}

std::size_t entropy_rank(const Code& code, const std::vector<int>& nodes) {
    Matrix a(code.field, nodes.size() * code.alpha, code.M);
    std::size_t e = 0;
    for (int v : nodes) {
        auto pos = code.node_positions(v);
        for (int p = 0; p < code.alpha; ++p, ++e) {
            auto row = code.eval_row(pos[p].first, pos[p].second);
            for (int c = 0; c < code.M; ++c) a.at(e, c) = row[c];
        }
    }
    return a.rank();
}

}  // namespace mbcr
}  // namespace cmr
