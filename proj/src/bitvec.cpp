#include "scpir/bitvec.hpp"

#include <stdexcept>

#include "scpir/rng.hpp"

namespace scpir {

BitVec random_bits(Rng& rng, std::uint64_t count) {
  BitVec bits(count);
  std::uint64_t word = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng.next();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  return bits;
}

std::vector<std::uint8_t> pack_bits(const BitVec& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw std::invalid_argument("pack_bits: values must be 0 or 1");
    }
    bytes[i / 8] |= static_cast<std::uint8_t>(bits[i] << (i % 8));
  }
  return bytes;
}

BitVec unpack_bits(const std::vector<std::uint8_t>& bytes, std::uint64_t bit_count) {
  if (bytes.size() != (bit_count + 7) / 8) {
    throw std::invalid_argument("unpack_bits: byte length does not match bit count");
  }
  BitVec bits(bit_count);
  for (std::uint64_t i = 0; i < bit_count; ++i) {
    bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  }
  // pad bits beyond bit_count must be zero
  for (std::uint64_t i = bit_count; i < bytes.size() * 8; ++i) {
    if ((bytes[i / 8] >> (i % 8)) & 1u) {
      throw std::invalid_argument("unpack_bits: nonzero padding bits");
    }
  }
  return bits;
}

}  // namespace scpir
