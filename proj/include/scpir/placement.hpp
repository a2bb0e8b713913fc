#pragma once

#include <cstdint>
#include <vector>

#include "scpir/bitvec.hpp"
#include "scpir/combinatorics.hpp"
#include "scpir/rational.hpp"

namespace scpir {

// Validated system parameters for one storage level, with every derived size
// computed exactly. Each message splits into sub_count sub-messages of
// sub_size bits; a sub-message is indexed by a size-t subset of databases and
// stored at exactly those databases.
struct Params {
  int db_count = 0;        // N
  int message_count = 0;   // K
  int storage_level = 0;   // t, 1..N

  std::uint64_t sub_count = 0;       // C(N,t) sub-messages per message
  std::uint64_t sub_size = 0;        // t^K bits per sub-message
  std::uint64_t message_len = 0;     // L = C(N,t) * t^K bits
  std::uint64_t per_db_storage = 0;  // K * C(N-1,t-1) * t^K bits
  Rational mu;                       // t/N, normalized storage

  std::vector<SubsetId> subsets;                        // canonical enumeration
  std::vector<std::vector<std::uint64_t>> db_subsets;   // [db-1] -> ranks containing db

  const SubsetId& subset(std::uint64_t rank) const { return subsets[rank]; }
};

Params make_params(int db_count, int message_count, int storage_level);

// One stored sub-message slot: message index (1-based) and subset rank.
struct StoredPair {
  int message = 0;
  std::uint64_t subset_rank = 0;
  bool operator==(const StoredPair& other) const = default;
};

// Which (message, subset) pairs each database holds, ordered by message then
// subset rank. Database n holds (m, S) exactly when n is a member of S.
struct Placement {
  Params params;
  std::vector<std::vector<StoredPair>> per_db;  // [db-1]
};

Placement build_placement(const Params& params);

// Materialized contents of one database: the bit vectors of every sub-message
// assigned to it. Immutable after construction.
class DatabaseStore {
 public:
  DatabaseStore(int db_index, const Params& params);

  int db_index() const { return db_index_; }
  std::uint64_t stored_bits() const { return stored_bits_; }

  bool holds(int message, std::uint64_t subset_rank) const;
  std::uint8_t bit(int message, std::uint64_t subset_rank, std::uint64_t position) const;

  void put(int message, std::uint64_t subset_rank, BitVec contents);
  const BitVec& sub_message(int message, std::uint64_t subset_rank) const;

 private:
  std::size_t slot(int message, std::uint64_t subset_rank) const;

  int db_index_;
  std::uint64_t sub_size_;
  std::uint64_t sub_count_;
  std::uint64_t stored_bits_ = 0;
  std::vector<BitVec> slots_;  // empty vector = not stored here
};

// Loads K messages of exactly L bits each into the N database stores.
// Sub-message (m, S) takes the slice of message m at offset rank(S)*sub_size.
std::vector<DatabaseStore> init_databases(const Placement& placement,
                                          const std::vector<BitVec>& messages);

// Both sides of the storage accounting identity: the per-database count
// K*C(N-1,t-1)*t^K and the budget mu*K*L, evaluated independently.
struct StorageReport {
  std::uint64_t per_db_counted = 0;  // from the placement lists
  std::uint64_t budget_bits = 0;     // mu*K*L, exact
  bool equal = false;
};

StorageReport verify_storage(const Placement& placement, const Params& params);

}  // namespace scpir
