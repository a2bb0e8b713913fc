#include "scpir/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace scpir {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer addition overflow");
  }
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer multiplication overflow");
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    result = checked_mul(result, base);
  }
  return result;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    result = checked_mul(result, i);
  }
  return result;
}

std::uint64_t binom(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  std::uint64_t kk = static_cast<std::uint64_t>(k);
  kk = std::min(kk, n - kk);
  std::uint64_t result = 1;
  // result stays integral after each division: the running product of i
  // consecutive binomial steps is divisible by i.
  for (std::uint64_t i = 1; i <= kk; ++i) {
    result = checked_mul(result, n - kk + i) / i;
  }
  return result;
}

bool SubsetId::contains(int index) const {
  return std::binary_search(members.begin(), members.end(), index);
}

std::vector<SubsetId> enum_subsets(int universe, int size) {
  if (universe < 1 || size < 1 || size > universe) {
    throw std::invalid_argument("enum_subsets: need 1 <= size <= universe");
  }
  std::vector<SubsetId> out;
  out.reserve(binom(static_cast<std::uint64_t>(universe), size));
  std::vector<int> cur(size);
  for (int i = 0; i < size; ++i) cur[i] = i + 1;
  std::uint64_t rank = 0;
  while (true) {
    out.push_back(SubsetId{cur, rank});
    ++rank;
    // lexicographic successor: bump the rightmost member that has room
    int i = size - 1;
    while (i >= 0 && cur[i] == universe - (size - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::uint64_t subset_rank(std::span<const int> members, int universe) {
  const int size = static_cast<int>(members.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < size; ++i) {
    if (members[i] <= prev || members[i] > universe) {
      throw std::invalid_argument("subset_rank: members must be sorted and in range");
    }
    for (int v = prev + 1; v < members[i]; ++v) {
      rank = checked_add(rank, binom(universe - v, size - 1 - i));
    }
    prev = members[i];
  }
  return rank;
}

std::vector<int> subset_unrank(std::uint64_t rank, int universe, int size) {
  if (universe < 1 || size < 1 || size > universe) {
    throw std::invalid_argument("subset_unrank: need 1 <= size <= universe");
  }
  if (rank >= binom(static_cast<std::uint64_t>(universe), size)) {
    throw std::invalid_argument("subset_unrank: rank out of range");
  }
  std::vector<int> members(size);
  int v = 1;
  for (int i = 0; i < size; ++i) {
    while (true) {
      std::uint64_t block = binom(universe - v, size - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    members[i] = v++;
  }
  return members;
}

std::uint64_t permutation_rank(std::span<const std::uint32_t> perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (perm[j] < perm[i]) ++smaller;
    }
    rank = checked_add(checked_mul(rank, n - i), smaller);
  }
  return rank;
}

std::vector<std::uint32_t> permutation_unrank(std::uint64_t rank, std::uint32_t size) {
  if (rank >= factorial(size)) {
    throw std::invalid_argument("permutation_unrank: rank out of range");
  }
  std::vector<std::uint32_t> digits(size, 0);
  for (std::uint32_t i = 0; i < size; ++i) {
    digits[size - 1 - i] = static_cast<std::uint32_t>(rank % (i + 1));
    rank /= (i + 1);
  }
  std::vector<std::uint32_t> pool(size);
  for (std::uint32_t i = 0; i < size; ++i) pool[i] = i;
  std::vector<std::uint32_t> perm(size);
  for (std::uint32_t i = 0; i < size; ++i) {
    perm[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return perm;
}

}  // namespace scpir
