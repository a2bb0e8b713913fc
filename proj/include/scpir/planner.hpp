#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scpir/placement.hpp"

namespace scpir {

// One queried bit: position is in true stored order, i.e. the offset a
// database uses to index sub-message (message, subset) directly.
struct BitRef {
  int message = 0;
  std::uint64_t subset_rank = 0;
  std::uint64_t position = 0;
  bool operator==(const BitRef& other) const = default;
};

enum class ElementKind : std::uint8_t {
  kDesiredContaining,  // contains one fresh bit of the desired message
  kPureUndesired,      // message-symmetry padding; becomes next-stage side information
};

// One XOR query element: at stage i it spans i distinct messages, one bit per
// message, all bits from the same sub-message subset. kind is user-side
// metadata and never leaves the user (see db_view).
struct QueryElement {
  int stage = 0;
  std::uint64_t subset_rank = 0;
  std::vector<BitRef> bits;  // message-ascending
  ElementKind kind = ElementKind::kPureUndesired;
};

// Reference to the answer bit that supplies a desired-containing element's
// interference: the generating database and the element index in its query.
struct SideRef {
  int db = 0;
  std::size_t element_index = 0;
  bool operator==(const SideRef& other) const = default;
};

// Per-(message, subset) uniform random relabeling of bit positions. Known
// only to the user; databases see only the resulting true positions.
struct SecretPermutations {
  std::uint64_t seed = 0;
  std::uint64_t sub_size = 0;
  std::vector<std::vector<std::uint32_t>> perms;  // [(m-1)*sub_count + rank]

  const std::vector<std::uint32_t>& perm(int message, std::uint64_t subset_rank,
                                         std::uint64_t sub_count) const {
    return perms[static_cast<std::size_t>(message - 1) * sub_count + subset_rank];
  }
};

SecretPermutations sample_permutations(const Params& params, std::uint64_t seed);
SecretPermutations identity_permutations(const Params& params);

// Exhaustive-enumeration support: the joint permutation assignment space has
// (sub_size!)^(K*sub_count) points, addressed in mixed radix over the
// Lehmer rank of each per-(message, subset) permutation.
std::uint64_t joint_permutation_count(const Params& params, std::uint64_t limit);
SecretPermutations permutations_from_joint_index(const Params& params,
                                                 std::uint64_t joint_index);
std::uint64_t joint_permutation_index(const Params& params,
                                      const SecretPermutations& perms);

// Full user-side plan. per_db element order is computable from the sanitized
// query alone: (stage, subset rank, sorted message set, sequence number).
struct QueryPlan {
  Params params;
  int theta = 0;
  SecretPermutations perms;
  std::vector<std::vector<QueryElement>> per_db;                 // [db-1]
  std::vector<std::vector<std::optional<SideRef>>> side_refs;    // aligned with per_db
  std::vector<std::uint64_t> fresh_counts;  // final counters [(m-1)*sub_count + rank]

  std::uint64_t total_elements() const;
};

QueryPlan build_query_plan(const Params& params, const Placement& placement,
                           int theta, SecretPermutations perms);

// Closed-form per-database totals for one stage (total, desired):
//   stage 1:  ( K*C(N-1,t-1),                      C(N-1,t-1) )
//   stage i:  ( C(K,i)(N-1)C(N-2,t-2)(t-1)^(i-2),  C(K-1,i-1)(N-1)C(N-2,t-2)(t-1)^(i-2) )
struct StageCounts {
  std::uint64_t total_per_db = 0;
  std::uint64_t desired_per_db = 0;
  bool operator==(const StageCounts& other) const = default;
};

StageCounts stage_counts(const Params& params, int stage);

// What a database is allowed to see: ordered elements with bare bit
// references. No kind, no theta, no permutations, no side references.
struct ViewElement {
  int stage = 0;
  std::uint64_t subset_rank = 0;
  std::vector<BitRef> bits;
  bool operator==(const ViewElement& other) const = default;
};

using DbView = std::vector<ViewElement>;

DbView db_view(const QueryPlan& plan, int db);

}  // namespace scpir
