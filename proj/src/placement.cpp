#include "scpir/placement.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace scpir {
namespace {

// Materialization guard: placement and planning walk every sub-message, so
// refuse parameter sets whose layout would not fit in memory anyway.
constexpr std::uint64_t kMaxMessageBits = std::uint64_t{1} << 27;
constexpr std::uint64_t kMaxSubsets = std::uint64_t{1} << 20;

}  // namespace

Params make_params(int db_count, int message_count, int storage_level) {
  if (db_count < 1) throw std::invalid_argument("params: db count must be >= 1");
  if (message_count < 1) throw std::invalid_argument("params: message count must be >= 1");
  if (message_count > 24) {
    // message sets are tracked as 32-bit masks; beyond this the layout is
    // unsimulable anyway
    throw std::invalid_argument("params: message count above supported limit (24)");
  }
  if (storage_level < 1 || storage_level > db_count) {
    throw std::invalid_argument("params: storage level t must satisfy 1 <= t <= N (got t=" +
                                std::to_string(storage_level) + ", N=" +
                                std::to_string(db_count) + ")");
  }

  Params p;
  p.db_count = db_count;
  p.message_count = message_count;
  p.storage_level = storage_level;
  p.sub_count = binom(static_cast<std::uint64_t>(db_count), storage_level);
  p.sub_size = checked_pow(static_cast<std::uint64_t>(storage_level),
                           static_cast<std::uint64_t>(message_count));
  p.message_len = checked_mul(p.sub_count, p.sub_size);
  p.per_db_storage = checked_mul(
      checked_mul(static_cast<std::uint64_t>(message_count),
                  binom(static_cast<std::uint64_t>(db_count - 1), storage_level - 1)),
      p.sub_size);
  p.mu = Rational(storage_level, db_count);

  if (p.message_len > kMaxMessageBits || p.sub_count > kMaxSubsets) {
    throw std::invalid_argument("params: layout too large to materialize");
  }

  p.subsets = enum_subsets(db_count, storage_level);
  p.db_subsets.assign(db_count, {});
  for (const SubsetId& s : p.subsets) {
    for (int member : s.members) {
      p.db_subsets[member - 1].push_back(s.rank);
    }
  }

  // per_db_storage * N == t * K * L must hold exactly
  if (checked_mul(p.per_db_storage, db_count) !=
      checked_mul(checked_mul(static_cast<std::uint64_t>(storage_level),
                              static_cast<std::uint64_t>(message_count)),
                  p.message_len)) {
    throw std::logic_error("params: storage identity violated");
  }
  return p;
}

Placement build_placement(const Params& params) {
  Placement placement;
  placement.params = params;
  placement.per_db.assign(params.db_count, {});
  for (int db = 1; db <= params.db_count; ++db) {
    auto& list = placement.per_db[db - 1];
    list.reserve(params.message_count * params.db_subsets[db - 1].size());
    for (int m = 1; m <= params.message_count; ++m) {
      for (std::uint64_t rank : params.db_subsets[db - 1]) {
        list.push_back(StoredPair{m, rank});
      }
    }
  }
  return placement;
}

DatabaseStore::DatabaseStore(int db_index, const Params& params)
    : db_index_(db_index),
      sub_size_(params.sub_size),
      sub_count_(params.sub_count),
      slots_(static_cast<std::size_t>(params.message_count) * params.sub_count) {}

std::size_t DatabaseStore::slot(int message, std::uint64_t subset_rank) const {
  return static_cast<std::size_t>(message - 1) * sub_count_ + subset_rank;
}

bool DatabaseStore::holds(int message, std::uint64_t subset_rank) const {
  if (message < 1 || subset_rank >= sub_count_) return false;
  std::size_t s = slot(message, subset_rank);
  return s < slots_.size() && !slots_[s].empty();
}

std::uint8_t DatabaseStore::bit(int message, std::uint64_t subset_rank,
                                std::uint64_t position) const {
  return sub_message(message, subset_rank).at(position);
}

void DatabaseStore::put(int message, std::uint64_t subset_rank, BitVec contents) {
  if (contents.size() != sub_size_) {
    throw std::invalid_argument("store: sub-message has wrong size");
  }
  BitVec& dst = slots_.at(slot(message, subset_rank));
  if (!dst.empty()) {
    throw std::logic_error("store: slot filled twice");
  }
  stored_bits_ += contents.size();
  dst = std::move(contents);
}

const BitVec& DatabaseStore::sub_message(int message, std::uint64_t subset_rank) const {
  const BitVec& v = slots_.at(slot(message, subset_rank));
  if (v.empty()) {
    throw std::out_of_range("store: sub-message not stored at this database");
  }
  return v;
}

std::vector<DatabaseStore> init_databases(const Placement& placement,
                                          const std::vector<BitVec>& messages) {
  const Params& p = placement.params;
  if (messages.size() != static_cast<std::size_t>(p.message_count)) {
    throw std::invalid_argument("init_databases: expected " +
                                std::to_string(p.message_count) + " messages");
  }
  for (const BitVec& m : messages) {
    if (m.size() != p.message_len) {
      throw std::invalid_argument("init_databases: message must be exactly L = " +
                                  std::to_string(p.message_len) + " bits");
    }
    for (std::uint8_t b : m) {
      if (b > 1) throw std::invalid_argument("init_databases: bits must be 0 or 1");
    }
  }

  std::vector<DatabaseStore> stores;
  stores.reserve(p.db_count);
  for (int db = 1; db <= p.db_count; ++db) {
    DatabaseStore store(db, p);
    for (const StoredPair& pair : placement.per_db[db - 1]) {
      const BitVec& msg = messages[pair.message - 1];
      std::uint64_t offset = pair.subset_rank * p.sub_size;
      store.put(pair.message, pair.subset_rank,
                BitVec(msg.begin() + offset, msg.begin() + offset + p.sub_size));
    }
    if (store.stored_bits() != p.per_db_storage) {
      throw std::logic_error("init_databases: stored bit count mismatch");
    }
    stores.push_back(std::move(store));
  }
  return stores;
}

StorageReport verify_storage(const Placement& placement, const Params& params) {
  StorageReport report;
  // Count what the placement actually assigns to database 1..N; all databases
  // must agree, so report the common value.
  std::uint64_t counted = 0;
  for (int db = 1; db <= params.db_count; ++db) {
    std::uint64_t bits =
        checked_mul(placement.per_db[db - 1].size(), params.sub_size);
    if (db == 1) {
      counted = bits;
    } else if (bits != counted) {
      report.equal = false;
      report.per_db_counted = bits;
      return report;
    }
  }
  report.per_db_counted = counted;

  // Budget side: mu*K*L evaluated in exact rational arithmetic.
  Rational budget = params.mu * Rational(params.message_count) *
                    Rational(static_cast<std::int64_t>(params.message_len));
  if (!budget.is_integer() || budget.num() < 0) {
    throw std::logic_error("verify_storage: mu*K*L is not a whole bit count");
  }
  report.budget_bits = static_cast<std::uint64_t>(budget.num());
  report.equal = report.per_db_counted == report.budget_bits;
  return report;
}

}  // namespace scpir
