#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace scpir {

// Checked unsigned arithmetic. Overflow throws std::overflow_error.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// base^exp with overflow detection; 0^0 = 1.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

// n! with overflow detection.
std::uint64_t factorial(std::uint64_t n);

// C(n,k). Returns 0 when k < 0 or k > n; that convention makes the per-stage
// count formulas collapse to zero at t = 1 without special cases.
std::uint64_t binom(std::uint64_t n, std::int64_t k);

// A size-t subset of {1..N} together with its 0-based position in the
// lexicographic enumeration of all size-t subsets of {1..N}.
struct SubsetId {
  std::vector<int> members;  // sorted ascending, values in {1..N}
  std::uint64_t rank = 0;

  bool contains(int index) const;
  bool operator==(const SubsetId& other) const = default;
};

// All C(universe, size) subsets in lexicographic order of sorted member lists.
std::vector<SubsetId> enum_subsets(int universe, int size);

// rank <-> members bijection for the enumeration above.
std::uint64_t subset_rank(std::span<const int> members, int universe);
std::vector<int> subset_unrank(std::uint64_t rank, int universe, int size);

// Lehmer-code rank of a permutation of {0..size-1}, and its inverse.
// Ranks run over [0, size!) in lexicographic order of the permutation word.
std::uint64_t permutation_rank(std::span<const std::uint32_t> perm);
std::vector<std::uint32_t> permutation_unrank(std::uint64_t rank, std::uint32_t size);

}  // namespace scpir
