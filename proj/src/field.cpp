#include "cmr/field.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace cmr {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t default_modulus(unsigned w) {
    // Low-weight irreducible polynomials for GF(2^w), w = 1..16.
    static const std::uint32_t table[17] = {
        0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,
        0x11D,  0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003,
        0x1100B};
    return table[w];
}

std::uint32_t gf2_mul_slow(std::uint32_t a, std::uint32_t b, std::uint32_t mod, unsigned w) {
    std::uint32_t r = 0;
    std::uint32_t hi = 1u << w;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & hi) a ^= mod;
    }
    return r;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("Field: " + std::to_string(p) + " is not prime");
    Field f;
    f.kind_ = Kind::Prime;
    f.q_ = p;
    f.modulus_ = 0;
    // smallest primitive root
    if (p == 2) {
        f.gen_ = 1;
    } else {
        for (std::uint32_t g = 2; g < p; ++g) {
            std::uint32_t x = g;
            std::uint32_t ord = 1;
            while (x != 1) { x = f.mul(x, g); ++ord; }
            if (ord == p - 1) { f.gen_ = g; break; }
        }
    }
    return f;
}

Field Field::binary(unsigned w, std::uint32_t modulus) {
    if (w < 1 || w > 16) throw std::invalid_argument("Field: GF(2^w) supports w in [1,16]");
    if (modulus == 0) modulus = default_modulus(w);
    if ((modulus >> w) != 1)
        throw std::invalid_argument("Field: modulus degree does not match field width");

    Field f;
    f.kind_ = Kind::Binary;
    f.q_ = 1u << w;
    f.modulus_ = modulus;
    if (w == 1) {
        auto t = std::make_shared<Tables>();
        t->log = {0, 0};
        t->exp = {1, 1};
        f.tables_ = t;
        f.gen_ = 1;
        return f;
    }

    static std::mutex cache_mu;
    static std::map<std::pair<unsigned, std::uint32_t>, std::shared_ptr<const Tables>> cache;
    static std::map<std::pair<unsigned, std::uint32_t>, std::uint32_t> gen_cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto key = std::make_pair(w, modulus);
    auto it = cache.find(key);
    if (it != cache.end()) {
        f.tables_ = it->second;
        f.gen_ = gen_cache[key];
        return f;
    }

    // Find a primitive element, then build log/exp tables from it.
    std::uint32_t q = f.q_;
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 2; cand < q; ++cand) {
        std::uint32_t x = cand;
        std::uint32_t ord = 1;
        while (x != 1) {
            x = gf2_mul_slow(x, cand, modulus, w);
            ++ord;
            if (ord > q) throw std::invalid_argument("Field: modulus is not irreducible");
        }
        if (ord == q - 1) { gen = cand; break; }
    }
    if (gen == 0) throw std::invalid_argument("Field: no primitive element, modulus not primitive");

    auto t = std::make_shared<Tables>();
    t->log.assign(q, 0);
    t->exp.assign(2 * (q - 1), 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        t->exp[i] = x;
        t->exp[i + q - 1] = x;
        t->log[x] = i;
        x = gf2_mul_slow(x, gen, modulus, w);
    }
    cache[key] = t;
    gen_cache[key] = gen;
    f.tables_ = t;
    f.gen_ = gen;
    return f;
}

Field Field::parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(std::tolower(static_cast<unsigned char>(c)));
    std::uint32_t mod = 0;
    if (s.rfind("gf(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(3, s.size() - 4);
        auto comma = inner.find(',');
        if (comma != std::string::npos) {
            mod = static_cast<std::uint32_t>(std::stoul(inner.substr(comma + 1), nullptr, 0));
            inner = inner.substr(0, comma);
        }
        auto caret = inner.find('^');
        if (caret != std::string::npos) {
            unsigned long base = std::stoul(inner.substr(0, caret));
            unsigned long w = std::stoul(inner.substr(caret + 1));
            if (base != 2) throw std::invalid_argument("Field: only characteristic 2 extensions supported");
            return binary(static_cast<unsigned>(w), mod);
        }
        s = inner;
    }
    std::uint32_t q = static_cast<std::uint32_t>(std::stoul(s, nullptr, 0));
    if (q >= 2 && (q & (q - 1)) == 0) {
        unsigned w = 0;
        while ((1u << w) < q) ++w;
        return w == 1 ? prime(2) : binary(w, mod);
    }
    if (mod != 0) throw std::invalid_argument("Field: modulus given for a prime field");
    return prime(q);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("Field: inverse of zero");
    if (kind_ == Kind::Binary) {
        if (q_ == 2) return 1;
        return tables_->exp[q_ - 1 - tables_->log[a]];
    }
    return pow(a, q_ - 2);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (q_ > 2) e %= (q_ - 1);
    std::uint32_t r = 1;
    std::uint32_t base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::string Field::describe() const {
    if (kind_ == Kind::Prime) return "GF(" + std::to_string(q_) + ")";
    unsigned w = 0;
    while ((1u << w) < q_) ++w;
    char buf[32];
    std::snprintf(buf, sizeof buf, "GF(2^%u,0x%X)", w, modulus_);
    return buf;
}

}  // namespace cmr
