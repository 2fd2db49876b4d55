#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "cmr/mbcr.hpp"
#include "cmr/poly.hpp"

using namespace cmr;
using namespace cmr::mbcr;

namespace {

std::vector<std::uint32_t> random_file(const Code& code, std::mt19937_64& rng) {
    std::vector<std::uint32_t> f(code.M);
    for (auto& v : f) v = rng() % code.field.size();
    return f;
}

}  // namespace

TEST_CASE("construction") {
    SUBCASE("(6,3,4,2)") {
        Code code = build(6, 3, 4, 2, Field::prime(31));
        CHECK(code.M == 21);
        CHECK(code.alpha == 9);
        CHECK(code.monomials.size() == 21);
        CHECK(code.node_positions(0).size() == 9);
    }
    SUBCASE("(4,2,2,1)") {
        Code code = build(4, 2, 2, 1, Field::prime(13));
        CHECK(code.M == 6);
        CHECK(code.alpha == 4);
    }
    SUBCASE("(5,2,3,1)") {
        Code code = build(5, 2, 3, 1, Field::prime(17));
        CHECK(code.M == 10);
        CHECK(code.alpha == 6);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(build(6, 4, 3, 2, Field::prime(31)), std::invalid_argument);
        CHECK_THROWS_AS(build(6, 3, 5, 2, Field::prime(31)), std::invalid_argument);
        CHECK_THROWS_AS(build(6, 3, 4, 2, Field::prime(5)), std::invalid_argument);
    }
}

TEST_CASE("systematic information set") {
    std::mt19937_64 rng(21);
    Code code = build(6, 3, 4, 2, Field::prime(31));
    auto f = random_file(code, rng);
    auto payloads = encode(code, f);
    std::size_t pos = 0;
    for (int v = 0; v < code.k; ++v) {
        auto node_pos = code.node_positions(v);
        for (auto [xi, yi] : code.info_positions[v]) {
            std::size_t slot = 0;
            while (node_pos[slot] != std::make_pair(xi, yi)) ++slot;
            CHECK(payloads[v][slot] == f[pos]);
            ++pos;
        }
    }
    CHECK(pos == static_cast<std::size_t>(code.M));
}

TEST_CASE("encode") {
    std::mt19937_64 rng(22);
    Code code = build(6, 3, 4, 2, Field::prime(31));
    SUBCASE("zero file") {
        auto payloads = encode(code, std::vector<std::uint32_t>(code.M, 0));
        for (const auto& p : payloads)
            for (auto v : p) CHECK(v == 0);
    }
    SUBCASE("shared evaluations agree across nodes") {
        auto f = random_file(code, rng);
        auto payloads = encode(code, f);
        // every (x idx, y idx) pair stored by two nodes carries the same value
        std::map<std::pair<int, int>, std::uint32_t> seen;
        for (int v = 0; v < code.n; ++v) {
            auto pos = code.node_positions(v);
            for (std::size_t i = 0; i < pos.size(); ++i) {
                auto it = seen.find(pos[i]);
                if (it != seen.end())
                    CHECK(it->second == payloads[v][i]);
                else
                    seen.emplace(pos[i], payloads[v][i]);
            }
        }
    }
    SUBCASE("node polynomials cross at the node's own point") {
        auto f = random_file(code, rng);
        auto payloads = encode(code, f);
        for (int v = 0; v < code.n; ++v) {
            auto [h, g] = node_polynomials(code, payloads[v], v);
            CHECK(h.size() == static_cast<std::size_t>(code.d + code.t));
            CHECK(g.size() == static_cast<std::size_t>(code.d));
            CHECK(poly::eval(code.field, h, code.y_point(v)) ==
                  poly::eval(code.field, g, code.x_point(v)));
        }
    }
}

TEST_CASE("centralized repair") {
    std::mt19937_64 rng(23);
    Code code = build(6, 3, 4, 2, Field::prime(31));
    auto f = random_file(code, rng);
    auto payloads = encode(code, f);
    SUBCASE("every failure pattern and helper set, bandwidth 16") {
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) {
                std::vector<int> failed{a, b};
                std::vector<int> helpers;
                for (int v = 0; v < 6; ++v)
                    if (v != a && v != b) helpers.push_back(v);
                std::vector<Payload> hp;
                for (int v : helpers) hp.push_back(payloads[v]);
                auto res = centralized_repair(code, failed, helpers, hp);
                CHECK(res.bandwidth == 16);
                CHECK(res.payloads[0] == payloads[a]);
                CHECK(res.payloads[1] == payloads[b]);
            }
    }
    SUBCASE("wrong failure or helper count rejected") {
        CHECK_THROWS_AS(centralized_repair(code, {0}, {1, 2, 3, 4}, {}), std::invalid_argument);
        CHECK_THROWS_AS(centralized_repair(code, {0, 1}, {2, 3, 4}, {}), std::invalid_argument);
    }
}

TEST_CASE("reconstruction from any k nodes") {
    std::mt19937_64 rng(24);
    Code code = build(6, 3, 4, 2, Field::prime(31));
    auto f = random_file(code, rng);
    auto payloads = encode(code, f);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                std::vector<int> nodes{a, b, c};
                std::vector<Payload> sub{payloads[a], payloads[b], payloads[c]};
                CHECK(reconstruct(code, nodes, sub) == f);
            }
}

TEST_CASE("subset entropy ranks") {
    Code code = build(6, 3, 4, 2, Field::prime(31));
    // b nodes span b(2d+t-b) dimensions
    for (int mask = 1; mask < 64; ++mask) {
        std::vector<int> nodes;
        for (int v = 0; v < 6; ++v)
            if (mask & (1 << v)) nodes.push_back(v);
        int b = std::min<int>(nodes.size(), code.k);
        CHECK(entropy_rank(code, nodes) == static_cast<std::size_t>(b * (10 - b)));
    }
}

TEST_CASE("cyclic evaluation points over a small field") {
    // q = 5 < n + d + t - 1 forces point reuse across indices
    std::mt19937_64 rng(25);
    Code code = build(4, 2, 2, 1, Field::prime(5));
    CHECK(code.y_point(5) == code.y_point(0));
    auto f = random_file(code, rng);
    auto payloads = encode(code, f);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            CHECK(reconstruct(code, {a, b}, {payloads[a], payloads[b]}) == f);
    for (int fail = 0; fail < 4; ++fail) {
        std::vector<int> helpers;
        for (int v = 0; v < 4 && helpers.size() < 2; ++v)
            if (v != fail) helpers.push_back(v);
        auto res = centralized_repair(code, {fail}, helpers,
                                      {payloads[helpers[0]], payloads[helpers[1]]});
        CHECK(res.bandwidth == 4);
        CHECK(res.payloads[0] == payloads[fail]);
    }
}

TEST_CASE("asymmetric instance (5,2,3,1)") {
    std::mt19937_64 rng(26);
    Code code = build(5, 2, 3, 1, Field::prime(17));
    auto f = random_file(code, rng);
    auto payloads = encode(code, f);
    for (int fail = 0; fail < 5; ++fail) {
        std::vector<int> helpers;
        for (int v = 0; v < 5 && helpers.size() < 3; ++v)
            if (v != fail) helpers.push_back(v);
        std::vector<Payload> hp;
        for (int v : helpers) hp.push_back(payloads[v]);
        auto res = centralized_repair(code, {fail}, helpers, hp);
        CHECK(res.bandwidth == 6);
        CHECK(res.payloads[0] == payloads[fail]);
    }
    CHECK(reconstruct(code, {3, 4}, {payloads[3], payloads[4]}) == f);
}
