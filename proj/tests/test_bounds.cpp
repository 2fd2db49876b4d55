#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "cmr/bounds.hpp"

using namespace cmr;
using namespace cmr::bounds;

TEST_CASE("file size bound, worked values") {
    SUBCASE("singleton partition, t=1") {
        CmrParams p;
        p.n = 6; p.k = 3; p.d = 5; p.t = 1; p.alpha = 9; p.beta = 3;
        CHECK(file_size_bound(p, {1, 1, 1}) == Rational(27));
    }
    SUBCASE("partition (1,2)") {
        CmrParams p;
        p.k = 3; p.d = 4; p.t = 2; p.alpha = 9; p.beta = 6;
        CHECK(file_size_bound(p, {1, 2}) == Rational(27));
    }
    SUBCASE("single block when t >= k") {
        CmrParams p;
        p.k = 3; p.d = 4; p.t = 3; p.alpha = 5; p.beta = 2;
        CHECK(file_size_bound(p, {3}) ==
              cmr::min(Rational(3) * p.alpha, Rational(4) * p.beta));
    }
    SUBCASE("invalid partitions rejected") {
        CmrParams p;
        p.k = 3; p.d = 4; p.t = 2; p.alpha = 1; p.beta = 1;
        CHECK_THROWS_AS(file_size_bound(p, {3}), std::invalid_argument);
        CHECK_THROWS_AS(file_size_bound(p, {1, 1}), std::invalid_argument);
    }
}

TEST_CASE("min file size bound") {
    SUBCASE("k=3, t=2, msmr parameters") {
        CmrParams p;
        p.k = 3; p.d = 4; p.t = 2; p.alpha = 9; p.beta = 6;
        auto [v, part] = min_file_size_bound(p);
        CHECK(v == Rational(27));
    }
    SUBCASE("t=1 gives k singleton blocks") {
        CmrParams p;
        p.k = 4; p.d = 6; p.t = 1; p.alpha = 5; p.beta = 2;
        auto [v, part] = min_file_size_bound(p);
        CHECK(part == Partition{1, 1, 1, 1});
        Rational expect;
        for (int i = 0; i < 4; ++i)
            expect += cmr::min(p.alpha, Rational(p.d - i) * p.beta);
        CHECK(v == expect);
    }
    SUBCASE("large k uses the canonical family") {
        CmrParams p;
        p.k = 14; p.d = 20; p.t = 3; p.alpha = 10; p.beta = 2;
        auto [v, part] = min_file_size_bound(p);
        int sum = 0;
        for (int b : part) sum += b;
        CHECK(sum == 14);
    }
}

TEST_CASE("msmr point") {
    SUBCASE("worked example") {
        auto [a, g] = msmr_point(27, 3, 4, 2);
        CHECK(a == Rational(9));
        CHECK(g == Rational(24));
    }
    SUBCASE("t = k = d gives the full file") {
        auto [a, g] = msmr_point(12, 3, 3, 3);
        CHECK(g == Rational(12));
    }
    SUBCASE("classical single-failure point") {
        auto [a, g] = msmr_point(8, 4, 5, 1);
        CHECK(a == Rational(2));
        CHECK(g == Rational(5));
    }
    CHECK_THROWS_AS(msmr_point(10, 3, 4, 2), std::invalid_argument);
}

TEST_CASE("mbmr point") {
    CHECK(mbmr_point(6, 2, 2, 1) == Rational(4));
    CHECK(mbmr_point(16, 4, 4, 2) == Rational(32, 3));
    SUBCASE("t = k gives the full file") {
        CHECK(mbmr_point(21, 3, 5, 3) == Rational(21));
    }
    CHECK_THROWS_AS(mbmr_point(21, 3, 4, 2), std::invalid_argument);
}

TEST_CASE("partial-group entropy threshold") {
    CHECK(mbmr_hb_condition(0, 4, 2, Rational(2)) == Rational(0));
    CHECK(mbmr_hb_condition(1, 4, 2, Rational(2)) == Rational(9, 2));
    SUBCASE("threshold extended to b=t matches the t-node entropy") {
        // (beta/t)[t(2d+t-1)/2 - C(t,2)] should equal d*beta = gamma
        int d = 5, t = 2;
        Rational beta(3);
        Rational lhs = beta / Rational(t) *
                       (Rational(t * (2 * d + t - 1), 2) - Rational(t * (t - 1), 2));
        CHECK(lhs == Rational(d) * beta);
    }
}

TEST_CASE("mbcr operating params") {
    auto p = mbcr_operating_params(21, 3, 4, 2);
    CHECK(p.alpha == Rational(9));
    CHECK(p.beta == Rational(2));
    CHECK(p.beta_prime == Rational(1));
    CHECK(p.entropy(2) == Rational(16));
    SUBCASE("H_k = M") { CHECK(p.entropy(3) == Rational(21)); }
    SUBCASE("H_1 = alpha") { CHECK(p.entropy(1) == p.alpha); }
}

TEST_CASE("secret bandwidth bound") {
    CHECK(secret_bw_bound(18, 1, 4) == Rational(24));
    CHECK(secret_bw_bound(10, 0, 7) == Rational(10));
    CHECK(secret_bw_bound(2, 1, 2) == Rational(4));
    CHECK_THROWS_AS(secret_bw_bound(5, 3, 3), std::invalid_argument);
}

TEST_CASE("bound is tight at the minimum-storage point") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(rng() % 9);   // 2..10
        int d = k + static_cast<int>(rng() % (11 - k));
        int t = 1 + static_cast<int>(rng() % k);
        std::int64_t M = static_cast<std::int64_t>(k) * k * (d - k + t);
        auto [alpha, gamma] = msmr_point(M, k, d, t);
        CmrParams p;
        p.k = k; p.d = d; p.t = t; p.alpha = alpha; p.beta = gamma / Rational(d);
        auto [v, part] = min_file_size_bound(p);
        CHECK(v == Rational(M));
    }
}

TEST_CASE("all-t partition at the minimum-bandwidth point sums to M") {
    for (auto [k, d, t] : std::vector<std::array<int, 3>>{{4, 5, 2}, {6, 8, 3}, {4, 4, 4}}) {
        std::int64_t M = static_cast<std::int64_t>(k) * (2 * d - k + t) * t;
        Rational gamma = mbmr_point(M, k, d, t);
        Rational beta = gamma / Rational(d);
        // With all blocks of size t the bound's download terms read
        // (d - i*t)*beta; at the minimum-bandwidth point they must total M.
        Rational total;
        for (int i = 0; i < k / t; ++i) total += Rational(d - i * t) * beta;
        CHECK(total == Rational(M));
    }
}

TEST_CASE("msmr gamma monotonicity") {
    std::int64_t M = 24;
    int k = 4;
    auto gamma = [&](int d, int t) { return msmr_point(M, k, d, t).second; };
    for (int d = k; d < 10; ++d) CHECK(gamma(d + 1, 2) <= gamma(d, 2));
    for (int t = 1; t < k; ++t) CHECK(gamma(6, t + 1) >= gamma(6, t));
}
