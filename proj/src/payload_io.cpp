#include "cmr/payload_io.hpp"

#include <cstdio>
#include <fstream>

namespace cmr {
namespace io {

namespace {

const char kMagic[4] = {'C', 'M', 'R', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    std::uint8_t u8() {
        if (pos + 1 > buf.size()) throw FormatError("truncated payload file");
        return buf[pos++];
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return v;
    }
};

unsigned element_width(const Field& f) {
    unsigned bits = 0;
    std::uint32_t top = f.size() - 1;
    while (top) { ++bits; top >>= 1; }
    return (bits + 7) / 8;
}

}  // namespace

unsigned symbol_bits(const Field& f) {
    if (f.kind() == Field::Kind::Binary) {
        unsigned w = 0;
        while ((1u << w) < f.size()) ++w;
        return w;
    }
    unsigned b = 0;
    while ((2u << b) <= f.size()) ++b;  // floor(log2 q)
    return b;
}

void write_payload(const std::string& path, const PayloadFile& pf) {
    std::string out(kMagic, 4);
    out.push_back(static_cast<char>(pf.kind));
    out.push_back(pf.field.kind() == Field::Kind::Prime ? 0 : 1);
    put_u32(out, pf.field.size());
    put_u32(out, pf.field.modulus());
    put_u32(out, pf.p1);
    put_u32(out, pf.p2);
    put_u32(out, pf.p3);
    put_u32(out, pf.p4);
    put_u32(out, pf.node);
    put_u64(out, pf.seed);
    put_u64(out, pf.orig_len);
    if (pf.kind == PayloadKind::ShareMsmr || pf.kind == PayloadKind::ShareMbmr) {
        put_u32(out, pf.N);
        put_u32(out, pf.z);
        put_u32(out, pf.t);
        put_u32(out, pf.Ms);
        put_u32(out, static_cast<std::uint32_t>(pf.punctured.size()));
        for (std::uint32_t v : pf.punctured) put_u32(out, v);
    }
    put_u32(out, static_cast<std::uint32_t>(pf.elems.size()));
    unsigned w = element_width(pf.field);
    for (std::uint32_t e : pf.elems)
        for (unsigned i = 0; i < w; ++i) out.push_back(static_cast<char>((e >> (8 * i)) & 0xFF));

    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

PayloadFile read_payload(const std::string& path) {
    std::vector<std::uint8_t> buf = read_file_bytes(path);
    Reader r{buf};
    for (char c : kMagic)
        if (r.u8() != static_cast<std::uint8_t>(c)) throw FormatError("bad magic in " + path);
    PayloadFile pf;
    std::uint8_t kind = r.u8();
    if (kind > 3) throw FormatError("unknown payload kind");
    pf.kind = static_cast<PayloadKind>(kind);
    std::uint8_t fk = r.u8();
    std::uint32_t q = r.u32();
    std::uint32_t mod = r.u32();
    try {
        if (fk == 0) pf.field = Field::prime(q);
        else {
            unsigned w = 0;
            while ((1u << w) < q) ++w;
            pf.field = Field::binary(w, mod);
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad field spec: ") + e.what());
    }
    pf.p1 = r.u32();
    pf.p2 = r.u32();
    pf.p3 = r.u32();
    pf.p4 = r.u32();
    pf.node = r.u32();
    pf.seed = r.u64();
    pf.orig_len = r.u64();
    if (pf.kind == PayloadKind::ShareMsmr || pf.kind == PayloadKind::ShareMbmr) {
        pf.N = r.u32();
        pf.z = r.u32();
        pf.t = r.u32();
        pf.Ms = r.u32();
        std::uint32_t np = r.u32();
        if (np > 1024) throw FormatError("implausible punctured-set size");
        for (std::uint32_t i = 0; i < np; ++i) pf.punctured.push_back(r.u32());
    }
    std::uint32_t count = r.u32();
    unsigned w = element_width(pf.field);
    if (r.pos + static_cast<std::size_t>(count) * w > buf.size())
        throw FormatError("truncated element data in " + path);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t e = 0;
        for (unsigned b = 0; b < w; ++b) e |= static_cast<std::uint32_t>(r.u8()) << (8 * b);
        if (e >= pf.field.size()) throw FormatError("element out of field range");
        pf.elems.push_back(e);
    }
    return pf;
}

std::vector<std::uint32_t> bytes_to_symbols(const Field& f, const std::vector<std::uint8_t>& bytes,
                                            std::size_t symbol_count) {
    unsigned bits = symbol_bits(f);
    std::vector<std::uint32_t> out;
    out.reserve(symbol_count);
    std::uint64_t acc = 0;
    unsigned have = 0;
    std::size_t bi = 0;
    while (out.size() < symbol_count) {
        while (have < bits && bi < bytes.size()) {
            acc = (acc << 8) | bytes[bi++];
            have += 8;
        }
        if (have >= bits) {
            out.push_back(static_cast<std::uint32_t>((acc >> (have - bits)) & ((1ull << bits) - 1)));
            have -= bits;
            acc &= (1ull << have) - 1;
        } else {
            // flush trailing bits, then zero-pad
            if (have > 0) {
                out.push_back(static_cast<std::uint32_t>(acc << (bits - have)));
                have = 0;
                acc = 0;
            } else {
                out.push_back(0);
            }
        }
    }
    if (bi < bytes.size() || have > 0)
        throw std::invalid_argument("input too large for the code's file size");
    return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const Field& f,
                                           const std::vector<std::uint32_t>& symbols,
                                           std::size_t byte_count) {
    unsigned bits = symbol_bits(f);
    std::vector<std::uint8_t> out;
    std::uint64_t acc = 0;
    unsigned have = 0;
    for (std::uint32_t s : symbols) {
        acc = (acc << bits) | (s & ((1ull << bits) - 1));
        have += bits;
        while (have >= 8 && out.size() < byte_count) {
            out.push_back(static_cast<std::uint8_t>((acc >> (have - 8)) & 0xFF));
            have -= 8;
            acc &= (1ull << have) - 1;
        }
        if (out.size() == byte_count) break;
    }
    while (out.size() < byte_count) {
        out.push_back(static_cast<std::uint8_t>((acc << (8 - have)) & 0xFF));
        have = 0;
        acc = 0;
    }
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(is)),
                                     std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os.write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

}  // namespace io
}  // namespace cmr
