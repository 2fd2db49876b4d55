#ifndef CMR_FIELD_HPP
#define CMR_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmr {

// Finite field GF(q), q prime or q = 2^w with w <= 16.
// Elements are plain uint32_t in [0, q); arithmetic goes through the Field
// object. Binary fields use shared log/antilog tables.
class Field {
public:
    enum class Kind { Prime, Binary };

    // Prime field GF(p).
    static Field prime(std::uint32_t p);
    // GF(2^w). modulus = full polynomial bit pattern (e.g. 0x11D for GF(256));
    // 0 picks a default for the given w.
    static Field binary(unsigned w, std::uint32_t modulus = 0);
    // Parse "gf(5)", "gf(2^8)", "gf(2^8,0x11d)", "256", "5".
    static Field parse(const std::string& spec);

    Kind kind() const { return kind_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t modulus() const { return modulus_; }
    std::string describe() const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (kind_ == Kind::Binary) return a ^ b;
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        if (kind_ == Kind::Binary) return a ^ b;
        return a >= b ? a - b : a + q_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (kind_ == Kind::Binary || a == 0) return a;
        return q_ - a;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (kind_ == Kind::Prime)
            return static_cast<std::uint32_t>((std::uint64_t)a * b % q_);
        return tables_->exp[tables_->log[a] + tables_->log[b]];
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    // A fixed multiplicative generator.
    std::uint32_t generator() const { return gen_; }

    bool operator==(const Field& o) const {
        return kind_ == o.kind_ && q_ == o.q_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    struct Tables {
        std::vector<std::uint32_t> log;  // log[a] for a in [1,q)
        std::vector<std::uint32_t> exp;  // exp[i] for i in [0, 2(q-1)), doubled to skip mod
    };

    Field() = default;

    Kind kind_ = Kind::Prime;
    std::uint32_t q_ = 2;
    std::uint32_t modulus_ = 0;  // binary only
    std::uint32_t gen_ = 1;
    std::shared_ptr<const Tables> tables_;
};

}  // namespace cmr

#endif
