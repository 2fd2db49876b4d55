#include "cmr/zigzag.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cmr/matching.hpp"
#include "cmr/matrix.hpp"

namespace cmr {
namespace zigzag {

Layout::Layout(int r_, int k_) : r(r_), k(k_), m(k_ - 1) {
    if (r < 2 || k < 2) throw std::invalid_argument("zigzag: need r >= 2, k >= 2");
    std::uint64_t a = 1;
    for (int i = 0; i < m; ++i) {
        a *= static_cast<std::uint64_t>(r);
        if (a > (1u << 20)) throw std::invalid_argument("zigzag: r^(k-1) too large");
    }
    alpha = static_cast<std::uint32_t>(a);
}

int Layout::digit(std::uint32_t i, int j) const {
    // digit j in [1, m], first digit most significant
    std::uint32_t place = 1;
    for (int p = 0; p < m - j; ++p) place *= r;
    return static_cast<int>((i / place) % r);
}

std::uint32_t Layout::shift(std::uint32_t i, int l, int j) const {
    if (j == 0 || l == 0) return i;
    std::uint32_t place = 1;
    for (int p = 0; p < m - j; ++p) place *= r;
    int dj = static_cast<int>((i / place) % r);
    int nj = (dj + l) % r;
    return i + static_cast<std::uint32_t>(nj - dj) * place;
}

int Layout::digit_sum(std::uint32_t i) const {
    int s = 0;
    while (i) { s += i % r; i /= r; }
    return s % r;
}

std::vector<int> Layout::to_vec(std::uint32_t i) const {
    std::vector<int> v(m);
    for (int j = m; j >= 1; --j) { v[j - 1] = i % r; i /= r; }
    return v;
}

std::uint32_t Layout::to_int(const std::vector<int>& v) const {
    std::uint32_t i = 0;
    for (int j = 0; j < m; ++j) i = i * r + static_cast<std::uint32_t>(v[j]);
    return i;
}

std::vector<std::uint32_t> d_set(const Layout& lay, int j, int l) {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t s = 0; s < lay.alpha; ++s) {
        bool in = (j == 0) ? lay.digit_sum(s) == l : lay.digit(s, j) == 0;
        if (in) rows.push_back(s);
    }
    return rows;
}

std::vector<std::uint32_t> u_set(const Layout& lay, const std::vector<int>& failed,
                                 const std::vector<int>& S, int l) {
    auto in_d = [&](std::uint32_t s, int j) {
        return j == 0 ? lay.digit_sum(s) == l : lay.digit(s, j) == 0;
    };
    std::vector<std::uint32_t> rows;
    for (std::uint32_t s = 0; s < lay.alpha; ++s) {
        bool ok = true;
        for (int j : S)
            if (!in_d(s, j)) { ok = false; break; }
        if (!ok) continue;
        for (int j : failed) {
            if (std::find(S.begin(), S.end(), j) != S.end()) continue;
            if (in_d(s, j)) { ok = false; break; }
        }
        if (ok) rows.push_back(s);
    }
    return rows;
}

std::size_t Schedule::total_symbols() const {
    std::size_t n = 0;
    for (const auto& h : helpers) n += h.rows.size();
    return n;
}

const HelperPlan* Schedule::plan_for(int node) const {
    for (const auto& h : helpers)
        if (h.node == node) return &h;
    return nullptr;
}

namespace {

using Mask = std::vector<char>;

std::vector<std::uint32_t> mask_rows(const Mask& m) {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t i = 0; i < m.size(); ++i)
        if (m[i]) rows.push_back(i);
    return rows;
}

// Rows a surviving node must supply because failed node j's single-repair
// parity rows reference them: {sum = 0} for j = 0, {digit_j = 0} otherwise.
// The same set serves every helper and every parity index.
Mask induced_base_mask(const Layout& lay, const std::vector<int>& failed) {
    Mask m(lay.alpha, 0);
    for (std::uint32_t s = 0; s < lay.alpha; ++s)
        for (int j : failed) {
            bool in = (j == 0) ? lay.digit_sum(s) == 0 : lay.digit(s, j) == 0;
            if (in) { m[s] = 1; break; }
        }
    return m;
}

Mask stage1_parity_mask(const Layout& lay, const std::vector<int>& failed, int l) {
    Mask m(lay.alpha, 0);
    for (std::uint32_t s = 0; s < lay.alpha; ++s)
        for (int j : failed) {
            bool in = (j == 0) ? lay.digit_sum(s) == l : lay.digit(s, j) == 0;
            if (in) { m[s] = 1; break; }
        }
    return m;
}

HelperPlan make_plan(int node, const Mask& stage1, const Mask& stage2) {
    HelperPlan p;
    p.node = node;
    for (std::uint32_t s = 0; s < stage1.size(); ++s) {
        if (stage1[s]) { p.rows.push_back(s); p.stage.push_back(1); }
        else if (stage2[s]) { p.rows.push_back(s); p.stage.push_back(2); }
    }
    return p;
}

Schedule assemble(const Code& code, const std::vector<int>& failed, const Mask& sys_base,
                  const Mask& sys_extra, const std::vector<Mask>& par_stage1,
                  const std::vector<Mask>& par_extra) {
    const Layout& lay = code.layout;
    Schedule sched;
    sched.failed = failed;
    for (int j = 0; j < lay.k; ++j) {
        if (std::find(failed.begin(), failed.end(), j) != failed.end()) continue;
        sched.helpers.push_back(make_plan(j, sys_base, sys_extra));
    }
    for (int l = 0; l < lay.r; ++l)
        sched.helpers.push_back(make_plan(lay.k + l, par_stage1[l], par_extra[l]));
    return sched;
}

// One linear equation per scheduled parity symbol, in the failed nodes'
// symbols, with scheduled systematic symbols as knowns.
struct KnownRef {
    int node;
    std::uint32_t row;
    std::uint32_t coeff;
};

struct RepairSystem {
    std::size_t unknowns = 0;
    std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> eq_terms;
    std::vector<std::vector<KnownRef>> eq_knowns;
    std::vector<std::pair<int, std::uint32_t>> eq_src;  // (parity node, row)
    bool complete = true;  // every referenced known is scheduled
    std::string detail;
};

RepairSystem build_system(const Code& code, const Schedule& sched) {
    const Layout& lay = code.layout;
    RepairSystem sys;
    sys.unknowns = sched.failed.size() * lay.alpha;
    auto fpos = [&](int j) -> int {
        auto it = std::find(sched.failed.begin(), sched.failed.end(), j);
        return it == sched.failed.end() ? -1 : static_cast<int>(it - sched.failed.begin());
    };
    for (const auto& h : sched.helpers) {
        if (h.node < lay.k) continue;
        int l = h.node - lay.k;
        for (std::uint32_t s : h.rows) {
            std::vector<std::pair<std::size_t, std::uint32_t>> terms;
            std::vector<KnownRef> knowns;
            for (int j = 0; j < lay.k; ++j) {
                std::uint32_t i = lay.shift(s, (lay.r - l) % lay.r, j);
                std::uint32_t c = code.coeffs[l][s][j];
                int f = fpos(j);
                if (f >= 0) {
                    terms.push_back({static_cast<std::size_t>(f) * lay.alpha + i, c});
                } else {
                    const HelperPlan* hp = sched.plan_for(j);
                    if (!hp || !std::binary_search(hp->rows.begin(), hp->rows.end(), i)) {
                        sys.complete = false;
                        sys.detail = "row " + std::to_string(i) + " of node " +
                                     std::to_string(j) + " needed but not scheduled";
                    }
                    knowns.push_back({j, i, c});
                }
            }
            sys.eq_terms.push_back(std::move(terms));
            sys.eq_knowns.push_back(std::move(knowns));
            sys.eq_src.push_back({h.node, s});
        }
    }
    return sys;
}

SolvabilityReport check_system(const Code& code, const RepairSystem& sys) {
    SolvabilityReport rep;
    rep.unknowns = sys.unknowns;
    if (!sys.complete) {
        rep.detail = sys.detail;
        return rep;
    }
    std::vector<std::vector<std::size_t>> adj(sys.eq_terms.size());
    for (std::size_t e = 0; e < sys.eq_terms.size(); ++e)
        for (const auto& [u, c] : sys.eq_terms[e])
            if (c != 0) adj[e].push_back(u);
    rep.matching = max_bipartite_matching(adj, sys.unknowns);
    if (rep.matching < sys.unknowns) {
        rep.detail = "no perfect matching (" + std::to_string(rep.matching) + " of " +
                     std::to_string(sys.unknowns) + ")";
        return rep;
    }
    Matrix a(code.field, sys.eq_terms.size(), sys.unknowns);
    for (std::size_t e = 0; e < sys.eq_terms.size(); ++e)
        for (const auto& [u, c] : sys.eq_terms[e])
            a.at(e, u) = code.field.add(a.at(e, u), c);
    rep.rank = a.rank();
    if (rep.rank < sys.unknowns) {
        rep.detail = "rank deficient (" + std::to_string(rep.rank) + " of " +
                     std::to_string(sys.unknowns) + ")";
        return rep;
    }
    rep.solvable = true;
    return rep;
}

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Canonical stage-2 completion for failed = {0, a} (t = 2, k >= 3):
// helpers' extra rows S = {sum = 1, digit_a = r-1}; parity l's extra rows
// {sum = l+1, digit_a = r-1}. S is closed under the digit shifts the parity
// rows induce on surviving nodes, so the per-helper budget is met exactly.
void canonical_t2(const Layout& lay, int a, Mask& sys_extra, std::vector<Mask>& par_extra) {
    for (std::uint32_t s = 0; s < lay.alpha; ++s) {
        if (lay.digit(s, a) != lay.r - 1) continue;
        int sum = lay.digit_sum(s);
        if (sum == 1) sys_extra[s] = 1;
        for (int l = 0; l < lay.r; ++l)
            if (sum == (l + 1) % lay.r) par_extra[l][s] = 1;
    }
}

// Canonical stage-2 completion for failed = {0, a, b} (t = 3, k >= 4, r >= 4):
// five disjoint digit-constrained families, each closed under the induced
// shifts; together they top every helper up to 3*alpha/r rows.
void canonical_t3(const Layout& lay, int a, int b, Mask& sys_extra,
                  std::vector<Mask>& par_extra) {
    int r = lay.r;
    for (std::uint32_t s = 0; s < lay.alpha; ++s) {
        int da = lay.digit(s, a), db = lay.digit(s, b);
        int sum = lay.digit_sum(s);
        auto mark = [&](int off, bool cond_digits, bool negate) {
            if (!cond_digits) return;
            if (!negate) {
                if (sum == off % r) sys_extra[s] = 1;
                for (int l = 0; l < r; ++l)
                    if (sum == (l + off) % r) par_extra[l][s] = 1;
            } else {
                if (sum != 0) sys_extra[s] = 1;
                for (int l = 0; l < r; ++l)
                    if (sum != l) par_extra[l][s] = 1;
            }
        };
        mark(1, da != 0 && db == r - 1, false);
        mark(2, da == r - 1 && db != 0, false);
        mark(1, da == r - 1 && db == r - 2, false);
        mark(0, da == r - 2 && db == r - 2, true);
        mark(3, da == r - 3 && db == r - 1, false);
    }
}

std::uint64_t pattern_seed(const Code& code, const std::vector<int>& failed) {
    std::uint64_t h = code.seed ^ 0x9E3779B97F4A7C15ull;
    for (int j : failed) h = (h * 0x100000001B3ull) ^ static_cast<std::uint64_t>(j + 1);
    return h;
}

}  // namespace

Schedule single_repair_schedule(const Code& code, int j) {
    const Layout& lay = code.layout;
    if (j < 0 || j >= lay.k)
        throw std::invalid_argument("single_repair_schedule: systematic node index required");
    std::vector<int> failed{j};
    Mask base = induced_base_mask(lay, failed);
    Mask none(lay.alpha, 0);
    std::vector<Mask> par(lay.r), par_extra(lay.r, none);
    for (int l = 0; l < lay.r; ++l) par[l] = stage1_parity_mask(lay, failed, l);
    return assemble(code, failed, base, none, par, par_extra);
}

Schedule multi_repair_schedule(const Code& code, std::vector<int> failed) {
    const Layout& lay = code.layout;
    std::sort(failed.begin(), failed.end());
    failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
    int t = static_cast<int>(failed.size());
    if (t < 1) throw std::invalid_argument("multi_repair_schedule: empty failure set");
    for (int j : failed)
        if (j < 0 || j >= lay.k)
            throw std::invalid_argument("multi_repair_schedule: systematic nodes only");
    if (t == 1) return single_repair_schedule(code, failed[0]);
    if (t > 3 || t > lay.r)
        throw std::invalid_argument(
            "multi_repair_schedule: supports t <= 3 failures with t <= n-k");

    Mask base = induced_base_mask(lay, failed);
    std::vector<Mask> par_s1(lay.r);
    for (int l = 0; l < lay.r; ++l) par_s1[l] = stage1_parity_mask(lay, failed, l);
    Mask none(lay.alpha, 0);
    std::size_t target = static_cast<std::size_t>(t) * lay.alpha / lay.r;

    auto finish = [&](const Mask& sys_extra, const std::vector<Mask>& par_extra,
                      bool must_succeed) -> Schedule {
        Schedule sched = assemble(code, failed, base, sys_extra, par_s1, par_extra);
        auto rep = check_system(code, build_system(code, sched));
        if (!rep.solvable) {
            if (must_succeed)
                throw std::runtime_error("multi_repair_schedule: " + rep.detail +
                                         "; coefficient regeneration needed");
            sched.helpers.clear();
        }
        return sched;
    };

    if (t == lay.r) {
        // t*alpha/r = alpha: download everything from every helper.
        Mask sys_extra(lay.alpha, 0);
        std::vector<Mask> par_extra(lay.r, Mask(lay.alpha, 0));
        for (std::uint32_t s = 0; s < lay.alpha; ++s) {
            if (!base[s]) sys_extra[s] = 1;
            for (int l = 0; l < lay.r; ++l)
                if (!par_s1[l][s]) par_extra[l][s] = 1;
        }
        return finish(sys_extra, par_extra, true);
    }

    if (contains(failed, 0) && lay.k >= t + 1) {
        Mask sys_extra(lay.alpha, 0);
        std::vector<Mask> par_extra(lay.r, Mask(lay.alpha, 0));
        if (t == 2) canonical_t2(lay, failed[1], sys_extra, par_extra);
        else canonical_t3(lay, failed[1], failed[2], sys_extra, par_extra);
        return finish(sys_extra, par_extra, true);
    }

    if (!contains(failed, 0)) {
        // Extra rows pinned at nonzero values of the failed digits; such sets
        // are invariant under every shift a surviving helper induces.
        std::mt19937_64 rng(pattern_seed(code, failed));
        std::vector<std::vector<int>> tuples;  // nonzero digit assignments
        if (t == 2) {
            for (int u = 1; u < lay.r; ++u)
                for (int v = 1; v < lay.r; ++v) tuples.push_back({u, v});
        } else {
            for (int u = 1; u < lay.r; ++u)
                for (int v = 1; v < lay.r; ++v)
                    for (int w = 1; w < lay.r; ++w) tuples.push_back({u, v, w});
        }
        std::size_t need = t == 2 ? 1 : static_cast<std::size_t>(3 * lay.r - 1);
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<std::vector<int>> pick;
            if (t == 2) {
                if (attempt < static_cast<int>(tuples.size())) pick = {tuples[attempt]};
                else break;
            } else {
                std::shuffle(tuples.begin(), tuples.end(), rng);
                if (tuples.size() < need) break;
                pick.assign(tuples.begin(), tuples.begin() + need);
            }
            Mask extra(lay.alpha, 0);
            for (std::uint32_t s = 0; s < lay.alpha; ++s)
                for (const auto& tp : pick) {
                    bool in = true;
                    for (int x = 0; x < t; ++x)
                        if (lay.digit(s, failed[x]) != tp[x]) { in = false; break; }
                    if (in) { extra[s] = 1; break; }
                }
            std::vector<Mask> par_extra(lay.r, extra);
            for (int l = 0; l < lay.r; ++l)
                for (std::uint32_t s = 0; s < lay.alpha; ++s)
                    if (par_s1[l][s]) par_extra[l][s] = 0;
            Mask sys_extra = extra;
            for (std::uint32_t s = 0; s < lay.alpha; ++s)
                if (base[s]) sys_extra[s] = 0;
            Schedule sched = finish(sys_extra, par_extra, false);
            if (!sched.helpers.empty()) return sched;
        }
        throw std::runtime_error(
            "multi_repair_schedule: no solvable completion found; coefficient "
            "regeneration needed");
    }

    // Failure set = all systematic nodes with t < r: no systematic helpers,
    // any parity rows may complete the budget. Search over completions.
    std::mt19937_64 rng(pattern_seed(code, failed));
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Mask> par_extra(lay.r, Mask(lay.alpha, 0));
        for (int l = 0; l < lay.r; ++l) {
            std::vector<std::uint32_t> missing;
            std::size_t have = 0;
            for (std::uint32_t s = 0; s < lay.alpha; ++s) {
                if (par_s1[l][s]) ++have;
                else missing.push_back(s);
            }
            if (have > target)
                throw std::runtime_error("multi_repair_schedule: stage 1 exceeds budget");
            if (attempt > 0) std::shuffle(missing.begin(), missing.end(), rng);
            for (std::size_t x = 0; x < target - have; ++x) par_extra[l][missing[x]] = 1;
        }
        Schedule sched = finish(none, par_extra, false);
        if (!sched.helpers.empty()) return sched;
    }
    throw std::runtime_error(
        "multi_repair_schedule: no solvable completion found; coefficient regeneration "
        "needed");
}

std::vector<Payload> encode(const Code& code, const std::vector<std::uint32_t>& data) {
    const Layout& lay = code.layout;
    if (data.size() != static_cast<std::size_t>(lay.k) * lay.alpha)
        throw std::invalid_argument("encode: data must be k*alpha symbols");
    std::vector<Payload> out(code.n());
    for (int j = 0; j < lay.k; ++j)
        out[j].assign(data.begin() + static_cast<std::size_t>(j) * lay.alpha,
                      data.begin() + static_cast<std::size_t>(j + 1) * lay.alpha);
    for (int l = 0; l < lay.r; ++l) {
        Payload p(lay.alpha, 0);
        for (std::uint32_t s = 0; s < lay.alpha; ++s) {
            std::uint32_t acc = 0;
            for (int j = 0; j < lay.k; ++j) {
                std::uint32_t i = lay.shift(s, (lay.r - l) % lay.r, j);
                acc = code.field.add(
                    acc, code.field.mul(code.coeffs[l][s][j],
                                        data[static_cast<std::size_t>(j) * lay.alpha + i]));
            }
            p[s] = acc;
        }
        out[lay.k + l] = std::move(p);
    }
    return out;
}

std::vector<std::uint32_t> execute_repair(const Code& code,
                                          const std::vector<Payload>& helper_payloads,
                                          const Schedule& sched) {
    const Layout& lay = code.layout;
    if (helper_payloads.size() != sched.helpers.size())
        throw std::invalid_argument("execute_repair: one payload per helper required");
    for (const auto& p : helper_payloads)
        if (p.size() != lay.alpha)
            throw std::invalid_argument("execute_repair: payload size mismatch");
    auto payload_of = [&](int node) -> const Payload& {
        for (std::size_t i = 0; i < sched.helpers.size(); ++i)
            if (sched.helpers[i].node == node) return helper_payloads[i];
        throw std::invalid_argument("execute_repair: missing helper payload");
    };
    RepairSystem sys = build_system(code, sched);
    if (!sys.complete) throw std::runtime_error("execute_repair: " + sys.detail);
    Matrix a(code.field, sys.eq_terms.size(), sys.unknowns);
    std::vector<std::uint32_t> rhs(sys.eq_terms.size(), 0);
    for (std::size_t e = 0; e < sys.eq_terms.size(); ++e) {
        for (const auto& [u, c] : sys.eq_terms[e]) a.at(e, u) = code.field.add(a.at(e, u), c);
        std::uint32_t v = payload_of(sys.eq_src[e].first)[sys.eq_src[e].second];
        for (const auto& kn : sys.eq_knowns[e])
            v = code.field.sub(v, code.field.mul(kn.coeff, payload_of(kn.node)[kn.row]));
        rhs[e] = v;
    }
    return a.solve(rhs);
}

std::vector<std::uint32_t> decode_any_k(const Code& code, const std::vector<int>& nodes,
                                        const std::vector<Payload>& payloads) {
    const Layout& lay = code.layout;
    if (nodes.size() != static_cast<std::size_t>(lay.k) || payloads.size() != nodes.size())
        throw std::invalid_argument("decode_any_k: exactly k nodes required");
    std::set<int> uniq(nodes.begin(), nodes.end());
    if (uniq.size() != nodes.size()) throw std::invalid_argument("decode_any_k: duplicate node");
    std::vector<std::uint32_t> data(static_cast<std::size_t>(lay.k) * lay.alpha, 0);
    std::vector<int> missing;
    for (int j = 0; j < lay.k; ++j)
        if (!uniq.count(j)) missing.push_back(j);
    for (std::size_t x = 0; x < nodes.size(); ++x)
        if (nodes[x] < lay.k)
            std::copy(payloads[x].begin(), payloads[x].end(),
                      data.begin() + static_cast<std::size_t>(nodes[x]) * lay.alpha);
    if (missing.empty()) return data;

    auto fpos = [&](int j) -> int {
        auto it = std::find(missing.begin(), missing.end(), j);
        return it == missing.end() ? -1 : static_cast<int>(it - missing.begin());
    };
    std::size_t unknowns = missing.size() * lay.alpha;
    std::vector<std::pair<int, std::size_t>> parities;  // (l, payload index)
    for (std::size_t x = 0; x < nodes.size(); ++x)
        if (nodes[x] >= lay.k) parities.push_back({nodes[x] - lay.k, x});
    Matrix a(code.field, parities.size() * lay.alpha, unknowns);
    std::vector<std::uint32_t> rhs(parities.size() * lay.alpha, 0);
    std::size_t e = 0;
    for (const auto& [l, px] : parities) {
        for (std::uint32_t s = 0; s < lay.alpha; ++s, ++e) {
            std::uint32_t v = payloads[px][s];
            for (int j = 0; j < lay.k; ++j) {
                std::uint32_t i = lay.shift(s, (lay.r - l) % lay.r, j);
                std::uint32_t c = code.coeffs[l][s][j];
                int f = fpos(j);
                if (f >= 0) {
                    std::size_t u = static_cast<std::size_t>(f) * lay.alpha + i;
                    a.at(e, u) = code.field.add(a.at(e, u), c);
                } else {
                    v = code.field.sub(
                        v, code.field.mul(c, data[static_cast<std::size_t>(j) * lay.alpha + i]));
                }
            }
            rhs[e] = v;
        }
    }
    std::vector<std::uint32_t> x = a.solve(rhs);
    for (std::size_t f = 0; f < missing.size(); ++f)
        std::copy(x.begin() + f * lay.alpha, x.begin() + (f + 1) * lay.alpha,
                  data.begin() + static_cast<std::size_t>(missing[f]) * lay.alpha);
    return data;
}

CountReport verify_schedule_counts(const Code& code, const Schedule& sched) {
    const Layout& lay = code.layout;
    CountReport rep;
    rep.per_helper_target =
        sched.failed.size() * static_cast<std::size_t>(lay.alpha) / lay.r;
    rep.pass = true;
    for (const auto& h : sched.helpers) {
        rep.per_helper.push_back({h.node, h.rows.size()});
        rep.total += h.rows.size();
        if (h.rows.size() != rep.per_helper_target) rep.pass = false;
    }
    std::size_t d = static_cast<std::size_t>(code.n()) - sched.failed.size();
    if (rep.total != d * rep.per_helper_target) rep.pass = false;
    return rep;
}

SolvabilityReport verify_solvability(const Code& code, const Schedule& sched) {
    return check_system(code, build_system(code, sched));
}

namespace {

// Rank check for erasure of systematic set F using parity set L: the
// |F|*alpha equations from L's rows must determine all of F's symbols.
bool erasure_solvable(const Code& code, const std::vector<int>& F, const std::vector<int>& L) {
    const Layout& lay = code.layout;
    std::size_t unknowns = F.size() * lay.alpha;
    Matrix a(code.field, L.size() * lay.alpha, unknowns);
    std::size_t e = 0;
    for (int l : L)
        for (std::uint32_t s = 0; s < lay.alpha; ++s, ++e)
            for (std::size_t f = 0; f < F.size(); ++f) {
                std::uint32_t i = lay.shift(s, (lay.r - l) % lay.r, F[f]);
                std::size_t u = f * lay.alpha + i;
                a.at(e, u) = code.field.add(a.at(e, u), code.coeffs[l][s][F[f]]);
            }
    return a.rank() == unknowns;
}

template <typename Fn>
void for_each_subset(int n, int size, Fn fn) {
    std::vector<int> idx(size);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == size) { fn(idx); return; }
        for (int i = start; i <= n - (size - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

std::string verify_code(const Code& code, const BuildOptions& opts) {
    const Layout& lay = code.layout;
    std::string failure;
    if (opts.verify_mds) {
        int maxf = std::min(lay.k, lay.r);
        for (int f = 1; f <= maxf && failure.empty(); ++f)
            for_each_subset(lay.k, f, [&](const std::vector<int>& F) {
                if (!failure.empty()) return;
                for_each_subset(lay.r, f, [&](const std::vector<int>& L) {
                    if (!failure.empty()) return;
                    if (!erasure_solvable(code, F, L)) {
                        failure = "MDS check failed for systematic erasure {";
                        for (int j : F) failure += std::to_string(j) + ",";
                        failure += "} with parities {";
                        for (int l : L) failure += std::to_string(l) + ",";
                        failure += "}";
                    }
                });
            });
    }
    if (opts.verify_schedules && failure.empty()) {
        int maxt = std::min({3, lay.r, lay.k});
        for (int t = 1; t <= maxt && failure.empty(); ++t)
            for_each_subset(lay.k, t, [&](const std::vector<int>& F) {
                if (!failure.empty()) return;
                try {
                    Schedule s = multi_repair_schedule(code, F);
                    auto counts = verify_schedule_counts(code, s);
                    auto solv = verify_solvability(code, s);
                    if (!counts.pass) failure = "schedule count mismatch";
                    else if (!solv.solvable) failure = "schedule unsolvable: " + solv.detail;
                } catch (const std::exception& e) {
                    failure = e.what();
                }
            });
    }
    return failure;
}

}  // namespace

Code build(int r, int k, const Field& field, std::uint64_t seed, const BuildOptions& opts) {
    Layout lay(r, k);
    if (field.size() < 3)
        throw std::invalid_argument("zigzag build: field too small for generic coefficients");
    std::string last_failure;
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        Code code;
        code.layout = lay;
        code.field = field;
        code.seed = seed + static_cast<std::uint64_t>(attempt);
        std::mt19937_64 rng(code.seed);
        std::uniform_int_distribution<std::uint32_t> dist(1, field.size() - 1);
        code.coeffs.assign(r, std::vector<std::vector<std::uint32_t>>(
                                  lay.alpha, std::vector<std::uint32_t>(k)));
        for (int l = 0; l < r; ++l)
            for (std::uint32_t s = 0; s < lay.alpha; ++s)
                for (int j = 0; j < k; ++j) code.coeffs[l][s][j] = dist(rng);
        last_failure = verify_code(code, opts);
        if (last_failure.empty()) return code;
    }
    throw std::runtime_error("zigzag build: verification budget exhausted after " +
                             std::to_string(opts.max_attempts) + " attempts; last: " +
                             last_failure);
}

}  // namespace zigzag
}  // namespace cmr
