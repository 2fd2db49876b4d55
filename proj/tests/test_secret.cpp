#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmr/bounds.hpp"
#include "cmr/secret.hpp"

using namespace cmr;
using namespace cmr::secret;

namespace {

std::vector<std::uint32_t> random_secret(const Scheme& s, std::mt19937_64& rng) {
    std::vector<std::uint32_t> v(s.Ms);
    for (auto& x : v) x = rng() % s.field().size();
    return v;
}

}  // namespace

TEST_CASE("msmr-zigzag scheme (z=1, t=2, r=3)") {
    Scheme s = make_msmr_zigzag(1, 2, 3, Field::binary(8, 0x11D), 17);
    CHECK(s.N == 4);
    CHECK(s.M == 27);
    CHECK(s.Ms == 18);
    CHECK(s.R == 9);
    CHECK(s.alpha == 9);
    CHECK(s.punctured == std::vector<int>{0, 1});
    CHECK(s.share_to_node == std::vector<int>{2, 3, 4, 5});

    std::mt19937_64 rng(41);
    auto secret = random_secret(s, rng);
    auto shares = share(s, secret, rng);
    REQUIRE(shares.size() == 4);
    for (const auto& p : shares) CHECK(p.size() == 9);

    SUBCASE("reconstruction needs every share and meets the bandwidth bound") {
        auto res = reconstruct(s, {0, 1, 2, 3}, shares);
        CHECK(res.secret == secret);
        CHECK(res.bandwidth == 24);
        CHECK(Rational(static_cast<std::int64_t>(res.bandwidth)) ==
              bounds::secret_bw_bound(s.Ms, s.z, s.N));
        CHECK_THROWS_AS(reconstruct(s, {0, 1, 2}, {shares[0], shares[1], shares[2]}),
                        std::invalid_argument);
    }

    SUBCASE("no single share learns anything") {
        for (int i = 0; i < 4; ++i) CHECK(leakage(s, {i}).leaked == 0);
    }

    SUBCASE("larger coalitions leak") {
        CHECK(leakage(s, {0, 1}).leaked > 0);
        CHECK(leakage(s, {0, 1, 2, 3}).leaked == static_cast<std::size_t>(s.Ms));
    }

    SUBCASE("share repair round-trips") {
        auto res = repair_shares(s, {0}, {1, 2, 3}, {shares[1], shares[2], shares[3]});
        CHECK(res.payloads[0] == shares[0]);
    }
}

TEST_CASE("mbmr scheme (4,2,2,1,z=1) over gf5") {
    Scheme s = make_mbmr(4, 2, 1, 1, Field::prime(5));
    CHECK(s.N == 3);
    CHECK(s.Ms == 2);
    CHECK(s.R == 4);
    CHECK(s.alpha == 4);
    CHECK(s.punctured == std::vector<int>{1});
    CHECK(s.share_to_node == std::vector<int>{0, 2, 3});

    std::mt19937_64 rng(43);
    auto secret = random_secret(s, rng);
    auto shares = share(s, secret, rng);
    REQUIRE(shares.size() == 3);

    SUBCASE("any d=2 shares reconstruct within the bandwidth bound") {
        for (auto picks : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}) {
            auto res = reconstruct(s, picks, {shares[picks[0]], shares[picks[1]]});
            CHECK(res.secret == secret);
            CHECK(res.bandwidth == 4);
            CHECK(Rational(static_cast<std::int64_t>(res.bandwidth)) ==
                  bounds::secret_bw_bound(s.Ms, s.z, 2));
        }
    }

    SUBCASE("perfect secrecy against single shares, by rank and by enumeration") {
        for (int i = 0; i < 3; ++i) {
            CHECK(leakage(s, {i}).leaked == 0);
            auto bf = brute_force_secrecy(s, {i});
            CHECK(bf.perfect);
            CHECK(bf.enumerations == 625);
        }
    }

    SUBCASE("z+1 shares leak, by rank and by enumeration") {
        for (auto pair : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}) {
            CHECK(leakage(s, pair).leaked > 0);
            CHECK_FALSE(brute_force_secrecy(s, pair).perfect);
        }
    }

    SUBCASE("budget guard") {
        CHECK_THROWS_AS(brute_force_secrecy(s, {0}, 100), std::invalid_argument);
    }
}

TEST_CASE("mbmr share repair (8,3,4,2,z=1)") {
    Scheme s = make_mbmr(8, 4, 2, 1, Field::prime(31));
    CHECK(s.N == 6);
    CHECK(s.Ms == 2 * 2 * (4 - 1));
    std::mt19937_64 rng(47);
    auto secret = random_secret(s, rng);
    auto shares = share(s, secret, rng);

    SUBCASE("two lost shares come back from four helpers") {
        std::vector<int> helpers{2, 3, 4, 5};
        std::vector<Payload> hp;
        for (int h : helpers) hp.push_back(shares[h]);
        auto res = repair_shares(s, {0, 1}, helpers, hp);
        CHECK(res.bandwidth == 2u * 4 * 2);
        CHECK(res.payloads[0] == shares[0]);
        CHECK(res.payloads[1] == shares[1]);
    }

    SUBCASE("one lost share pads the repair with a punctured node") {
        std::vector<int> helpers{1, 2, 3, 4};
        std::vector<Payload> hp;
        for (int h : helpers) hp.push_back(shares[h]);
        auto res = repair_shares(s, {5}, helpers, hp);
        CHECK(res.payloads[0] == shares[5]);
    }

    SUBCASE("reconstruction from any d shares") {
        std::vector<int> picks(4);
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c)
                    for (int e = c + 1; e < 6; ++e) {
                        picks = {a, b, c, e};
                        std::vector<Payload> hp;
                        for (int h : picks) hp.push_back(shares[h]);
                        CHECK(reconstruct(s, picks, hp).secret == secret);
                    }
    }

    SUBCASE("singles stay blind") {
        for (int i = 0; i < 6; ++i) CHECK(leakage(s, {i}).leaked == 0);
    }
}

TEST_CASE("z=2 scheme resists pairs of shares") {
    Scheme s = make_mbmr(5, 3, 1, 2, Field::prime(7));
    CHECK(s.N == 4);
    for (int a = 0; a < 4; ++a) {
        CHECK(leakage(s, {a}).leaked == 0);
        for (int b = a + 1; b < 4; ++b) CHECK(leakage(s, {a, b}).leaked == 0);
    }
    CHECK(leakage(s, {0, 1, 2}).leaked > 0);
}

TEST_CASE("deterministic sharing") {
    Scheme s = make_msmr_zigzag(1, 2, 3, Field::binary(8, 0x11D), 17);
    std::vector<std::uint32_t> secret(s.Ms, 5);
    std::mt19937_64 r1(99), r2(99);
    CHECK(share(s, secret, r1) == share(s, secret, r2));
}
