#ifndef CMR_PAYLOAD_IO_HPP
#define CMR_PAYLOAD_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmr/field.hpp"

namespace cmr {
namespace io {

class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class PayloadKind : std::uint8_t {
    Zigzag = 0,
    Mbcr = 1,
    ShareMsmr = 2,
    ShareMbmr = 3,
};

// One stored node or share: fixed header followed by the field elements,
// little-endian, ceil(bits(q)/8) bytes each.
struct PayloadFile {
    PayloadKind kind = PayloadKind::Zigzag;
    Field field = Field::prime(2);
    // zigzag: p1 = r, p2 = k; mbcr/shares: p1 = n (or r), p2 = k, p3 = d, p4 = t
    std::uint32_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    std::uint32_t node = 0;
    std::uint64_t seed = 0;
    std::uint64_t orig_len = 0;  // input bytes before zero-padding
    // share extension (kinds 2, 3)
    std::uint32_t N = 0, z = 0, t = 0, Ms = 0;
    std::vector<std::uint32_t> punctured;
    std::vector<std::uint32_t> elems;
};

void write_payload(const std::string& path, const PayloadFile& pf);  // atomic (tmp + rename)
PayloadFile read_payload(const std::string& path);                   // throws FormatError

// Bits carried per symbol: w for GF(2^w), floor(log2 q) for prime fields.
unsigned symbol_bits(const Field& f);

// MSB-first bit packing; pads the symbol stream with zeros.
std::vector<std::uint32_t> bytes_to_symbols(const Field& f, const std::vector<std::uint8_t>& bytes,
                                            std::size_t symbol_count);
std::vector<std::uint8_t> symbols_to_bytes(const Field& f,
                                           const std::vector<std::uint32_t>& symbols,
                                           std::size_t byte_count);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace io
}  // namespace cmr

#endif
