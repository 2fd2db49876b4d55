#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cmr/zigzag.hpp"

using namespace cmr;
using namespace cmr::zigzag;

namespace {

std::vector<std::uint32_t> rand_symbols(const Code& code, std::mt19937_64& rng) {
    std::vector<std::uint32_t> data(static_cast<std::size_t>(code.k()) * code.alpha());
    for (auto& v : data) v = rng() % code.field.size();
    return data;
}

std::vector<Payload> helper_payloads_for(const Schedule& sched,
                                         const std::vector<Payload>& all) {
    std::vector<Payload> out;
    for (const auto& h : sched.helpers) out.push_back(all[h.node]);
    return out;
}

std::vector<std::uint32_t> expected_recovery(const Code& code,
                                             const std::vector<int>& failed,
                                             const std::vector<std::uint32_t>& data) {
    std::vector<std::uint32_t> want;
    for (int j : failed)
        want.insert(want.end(), data.begin() + static_cast<std::size_t>(j) * code.alpha(),
                    data.begin() + static_cast<std::size_t>(j + 1) * code.alpha());
    return want;
}

}  // namespace

TEST_CASE("layout index convention") {
    Layout lay(3, 3);
    CHECK(lay.alpha == 9);
    CHECK(lay.to_vec(8) == std::vector<int>{2, 2});
    CHECK(lay.to_int({2, 2}) == 8);
    for (std::uint32_t i = 0; i < lay.alpha; ++i) CHECK(lay.to_int(lay.to_vec(i)) == i);
    CHECK(lay.digit(8, 1) == 2);
    CHECK(lay.digit(5, 1) == 1);
    CHECK(lay.digit(5, 2) == 2);
    CHECK(lay.shift(8, 1, 2) == 6);  // (2,2) + e_2 = (2,0)
    CHECK(lay.shift(8, 1, 0) == 8);  // node 0 carries the zero vector
}

TEST_CASE("download row sets") {
    Layout lay(3, 3);
    CHECK(d_set(lay, 0, 0) == std::vector<std::uint32_t>{0, 5, 7});
    CHECK(d_set(lay, 1, 0) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(d_set(lay, 1, 2) == std::vector<std::uint32_t>{0, 1, 2});
    Layout l2(2, 2);
    CHECK(d_set(l2, 0, 0) == std::vector<std::uint32_t>{0});
    CHECK(d_set(l2, 0, 1) == std::vector<std::uint32_t>{1});

    SUBCASE("|D| = r^(k-2) always") {
        for (int r : {2, 3, 4})
            for (int k : {2, 3, 4}) {
                Layout lay2(r, k);
                std::size_t want = 1;
                for (int i = 0; i < k - 2; ++i) want *= r;
                for (int j = 0; j < k; ++j)
                    for (int l = 0; l < r; ++l) CHECK(d_set(lay2, j, l).size() == want);
            }
    }
}

TEST_CASE("parity row maps are permutations") {
    // each information symbol appears in exactly one row of each parity
    Layout lay(3, 4);
    for (int j = 0; j < lay.k; ++j)
        for (int l = 0; l < lay.r; ++l) {
            std::set<std::uint32_t> seen;
            for (std::uint32_t s = 0; s < lay.alpha; ++s)
                seen.insert(lay.shift(s, (lay.r - l) % lay.r, j));
            CHECK(seen.size() == lay.alpha);
        }
}

TEST_CASE("exact-repair participation counts") {
    // |U^S_l| = r^(k-1-t) * (r-1)^(t-|S|)
    for (auto [r, k, t] : std::vector<std::array<int, 3>>{{3, 3, 2}, {3, 4, 3}, {4, 4, 2}}) {
        Layout lay(r, k);
        std::vector<int> failed;
        for (int j = 0; j < t; ++j) failed.push_back(j);
        for (int mask = 0; mask < (1 << t); ++mask) {
            std::vector<int> S;
            for (int j = 0; j < t; ++j)
                if (mask & (1 << j)) S.push_back(failed[j]);
            std::size_t want = 1;
            for (int i = 0; i < k - 1 - t; ++i) want *= r;
            for (int i = 0; i < t - static_cast<int>(S.size()); ++i) want *= (r - 1);
            for (int l = 0; l < r; ++l) CHECK(u_set(lay, failed, S, l).size() == want);
        }
    }
}

TEST_CASE("build") {
    SUBCASE("(6,3) over gf256") {
        Code code = build(3, 3, Field::binary(8, 0x11D), 1);
        CHECK(code.n() == 6);
        CHECK(code.alpha() == 9);
        for (int l = 0; l < 3; ++l)
            for (std::uint32_t s = 0; s < 9; ++s)
                for (int j = 0; j < 3; ++j) CHECK(code.coeffs[l][s][j] != 0);
    }
    SUBCASE("smallest instance (4,2)") {
        Code code = build(2, 2, Field::binary(8, 0x11D), 2);
        CHECK(code.n() == 4);
        CHECK(code.alpha() == 2);
    }
    SUBCASE("gf2 coefficients cannot be generic") {
        CHECK_THROWS_AS(build(3, 3, Field::binary(1), 1), std::invalid_argument);
    }
}

TEST_CASE("encode anchors") {
    Code code = build(3, 3, Field::binary(8, 0x11D), 1);
    SUBCASE("zero data") {
        std::vector<std::uint32_t> zero(27, 0);
        auto payloads = encode(code, zero);
        for (const auto& p : payloads)
            for (auto v : p) CHECK(v == 0);
    }
    SUBCASE("unit vector at row 8 of node 2") {
        std::vector<std::uint32_t> data(27, 0);
        data[2 * 9 + 8] = 1;
        auto payloads = encode(code, data);
        // parity with shift l=1 holds its only nonzero in row 6
        for (std::uint32_t s = 0; s < 9; ++s) {
            CHECK((payloads[4][s] != 0) == (s == 6));
            CHECK((payloads[3][s] != 0) == (s == 8));  // l=0: row s reads x_{s,j}
        }
    }
}

TEST_CASE("single repair") {
    std::mt19937_64 rng(5);
    Code code = build(3, 3, Field::binary(8, 0x11D), 1);
    auto data = rand_symbols(code, rng);
    auto payloads = encode(code, data);
    for (int j = 0; j < 3; ++j) {
        Schedule sched = single_repair_schedule(code, j);
        auto counts = verify_schedule_counts(code, sched);
        CHECK(counts.pass);
        CHECK(counts.per_helper_target == 3);
        CHECK(counts.total == 15);
        auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
        CHECK(rec == expected_recovery(code, {j}, data));
    }
    CHECK_THROWS_AS(single_repair_schedule(code, 3), std::invalid_argument);
}

TEST_CASE("pair repair on (6,3)") {
    std::mt19937_64 rng(6);
    Code code = build(3, 3, Field::binary(8, 0x11D), 1);
    auto data = rand_symbols(code, rng);
    auto payloads = encode(code, data);

    SUBCASE("canonical pair {0,1} matches the derived stage sets") {
        Schedule sched = multi_repair_schedule(code, {0, 1});
        const HelperPlan* p0 = sched.plan_for(3);  // parity with l=0
        REQUIRE(p0 != nullptr);
        CHECK(p0->rows == std::vector<std::uint32_t>{0, 1, 2, 5, 7, 8});
        const HelperPlan* sys = sched.plan_for(2);
        REQUIRE(sys != nullptr);
        std::vector<std::uint32_t> stage2;
        for (std::size_t i = 0; i < sys->rows.size(); ++i)
            if (sys->stage[i] == 2) stage2.push_back(sys->rows[i]);
        CHECK(stage2 == std::vector<std::uint32_t>{8});
        // parity stage-2 rows: 8 on l=0, 6 on l=1, 7 on l=2
        std::vector<std::uint32_t> want{8, 6, 7};
        for (int l = 0; l < 3; ++l) {
            const HelperPlan* pl = sched.plan_for(3 + l);
            std::vector<std::uint32_t> s2;
            for (std::size_t i = 0; i < pl->rows.size(); ++i)
                if (pl->stage[i] == 2) s2.push_back(pl->rows[i]);
            CHECK(s2 == std::vector<std::uint32_t>{want[l]});
        }
    }

    SUBCASE("every pair repairs exactly with 24 symbols") {
        for (auto failed : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}) {
            Schedule sched = multi_repair_schedule(code, failed);
            auto counts = verify_schedule_counts(code, sched);
            CHECK(counts.pass);
            CHECK(counts.per_helper_target == 6);
            CHECK(counts.total == 24);
            CHECK(verify_solvability(code, sched).solvable);
            auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
            CHECK(rec == expected_recovery(code, failed, data));
        }
    }

    SUBCASE("triple repair downloads 27 symbols from 3 helpers") {
        Schedule sched = multi_repair_schedule(code, {0, 1, 2});
        auto counts = verify_schedule_counts(code, sched);
        CHECK(counts.pass);
        CHECK(counts.total == 27);
        CHECK(sched.helpers.size() == 3);
        auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
        CHECK(rec == expected_recovery(code, {0, 1, 2}, data));
    }

    SUBCASE("too many failures") {
        CHECK_THROWS_AS(multi_repair_schedule(build(2, 3, Field::binary(8, 0x11D), 1),
                                              {0, 1, 2}),
                        std::invalid_argument);
    }
}

TEST_CASE("solvability verifier flags deficient schedules") {
    Code code = build(3, 3, Field::binary(8, 0x11D), 1);
    Schedule sched = multi_repair_schedule(code, {0, 1});
    CHECK(verify_solvability(code, sched).solvable);
    for (auto& h : sched.helpers)
        if (h.node == 3) { h.rows.pop_back(); h.stage.pop_back(); }
    auto rep = verify_solvability(code, sched);
    CHECK_FALSE(rep.solvable);
    CHECK(rep.matching == 17);
}

TEST_CASE("decode from any k nodes") {
    std::mt19937_64 rng(8);
    for (auto [r, k] : std::vector<std::pair<int, int>>{{3, 3}, {2, 3}, {4, 2}}) {
        Code code = build(r, k, Field::binary(8, 0x11D), 3);
        for (int trial = 0; trial < 5; ++trial) {
            auto data = rand_symbols(code, rng);
            auto payloads = encode(code, data);
            std::vector<int> idx(k);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == k) {
                    std::vector<Payload> sub;
                    for (int i : idx) sub.push_back(payloads[i]);
                    CHECK(decode_any_k(code, idx, sub) == data);
                    return;
                }
                for (int i = start; i <= code.n() - (k - depth); ++i) {
                    idx[depth] = i;
                    rec(i + 1, depth + 1);
                }
            };
            rec(0, 0);
        }
    }
}

TEST_CASE("repairs on wider codes") {
    std::mt19937_64 rng(9);
    // (r=3, k=4): canonical and relabeled pairs, plus the t=3 full-download case
    Code code = build(3, 4, Field::binary(8, 0x11D), 4);
    auto data = rand_symbols(code, rng);
    auto payloads = encode(code, data);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            std::vector<int> failed{a, b};
            Schedule sched = multi_repair_schedule(code, failed);
            auto counts = verify_schedule_counts(code, sched);
            CHECK(counts.pass);
            CHECK(counts.per_helper_target == 2u * 27 / 3);
            auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
            CHECK(rec == expected_recovery(code, failed, data));
        }
    for (auto failed : std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 3}, {1, 2, 3}}) {
        Schedule sched = multi_repair_schedule(code, failed);
        CHECK(verify_schedule_counts(code, sched).pass);
        auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
        CHECK(rec == expected_recovery(code, failed, data));
    }
}

TEST_CASE("t=3 closed-form schedule at r=4") {
    std::mt19937_64 rng(10);
    BuildOptions opts;
    opts.verify_mds = false;  // covered separately; keeps this test fast
    Code code = build(4, 4, Field::binary(8, 0x11D), 5, opts);
    auto data = rand_symbols(code, rng);
    auto payloads = encode(code, data);
    for (auto failed : std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 3}, {1, 2, 3}}) {
        Schedule sched = multi_repair_schedule(code, failed);
        auto counts = verify_schedule_counts(code, sched);
        CHECK(counts.pass);
        CHECK(counts.per_helper_target == 3u * 64 / 4);
        CHECK(verify_solvability(code, sched).solvable);
        auto rec = execute_repair(code, helper_payloads_for(sched, payloads), sched);
        CHECK(rec == expected_recovery(code, failed, data));
    }
}
