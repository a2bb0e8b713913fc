#include "scpir/rng.hpp"

#include <stdexcept>
#include <utility>

namespace scpir {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("Rng::below: empty range");
  }
  // 2^64 mod n; values >= 2^64 - r are rejected to keep the draw unbiased.
  std::uint64_t r = (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t limit = 0 - r;  // 0 means the full range is acceptable
  std::uint64_t x = next();
  if (r != 0) {
    while (x >= limit) x = next();
  }
  return x % n;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master + kGolden);
  for (std::uint64_t w : path) {
    h = mix64(h ^ mix64(w + kGolden));
  }
  return h;
}

std::vector<std::uint32_t> random_permutation(Rng& rng, std::uint32_t size) {
  std::vector<std::uint32_t> perm(size);
  for (std::uint32_t i = 0; i < size; ++i) perm[i] = i;
  for (std::uint32_t i = size; i > 1; --i) {
    std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace scpir
