#pragma once

#include <cstdint>
#include <vector>

namespace scpir {

class Rng;

// One byte per bit, values 0/1. Message lengths in this library stay small
// enough that the simple representation wins on clarity.
using BitVec = std::vector<std::uint8_t>;

BitVec random_bits(Rng& rng, std::uint64_t count);

// Packing is little-endian within each byte: bit i lands in byte i/8 at
// position i%8. Trailing pad bits of the last byte are zero.
std::vector<std::uint8_t> pack_bits(const BitVec& bits);
BitVec unpack_bits(const std::vector<std::uint8_t>& bytes, std::uint64_t bit_count);

}  // namespace scpir
