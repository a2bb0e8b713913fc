#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scpir/planner.hpp"

namespace scpir {

// An honest database rejects queries touching sub-messages it does not store.
class IllegalQueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Retrieval postcondition failures (decode mismatch, misaligned answers).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// answers[db-1][j] is the XOR of the stored bits referenced by element j of
// that database's view.
using AnswerSet = std::vector<std::vector<std::uint8_t>>;

std::vector<std::uint8_t> answer_query(const DatabaseStore& store, const DbView& view);

// Recovers the L bits of the desired message. Stage-1 desired singles read
// directly; every later desired-containing element cancels its interference
// with the answer bit of its side reference.
BitVec decode(const QueryPlan& plan, const AnswerSet& answers);

struct StageRow {
  int stage = 0;
  std::uint64_t total_per_db = 0;
  std::uint64_t desired_per_db = 0;
  bool operator==(const StageRow& other) const = default;
};

struct RetrievalReport {
  BitVec decoded;
  std::uint64_t downloaded_bits = 0;  // D
  std::uint64_t desired_bits = 0;     // L
  Rational cost;                      // D/L in lowest terms
  std::vector<StageRow> per_stage;    // per-database counts, stages 1..K
};

// Full pipeline: placement, stores, permutations, plan, per-database answers,
// decode. Throws VerificationError if the decoded message differs from the
// stored one.
RetrievalReport run_retrieval(const Params& params, const std::vector<BitVec>& messages,
                              int theta, std::uint64_t seed);

}  // namespace scpir
