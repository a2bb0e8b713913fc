#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace scpir {

// splitmix64 stream. All protocol randomness flows through this generator so
// a seeded run reproduces bit-for-bit on any platform; std:: distributions
// are implementation-defined and are not used anywhere that must replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform on [0, n), n >= 1. Rejection sampled, no modulo bias.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Deterministic child seed for a labelled subcomputation, e.g.
// derive_seed(master, {theta, trial}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Fisher-Yates shuffle of {0..size-1}.
std::vector<std::uint32_t> random_permutation(Rng& rng, std::uint32_t size);

}  // namespace scpir
