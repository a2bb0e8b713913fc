#include "scpir/planner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "scpir/rng.hpp"

namespace scpir {
namespace {

std::size_t pair_index(const Params& p, int message, std::uint64_t rank) {
  return static_cast<std::size_t>(message - 1) * p.sub_count + rank;
}

void check_perms(const Params& params, const SecretPermutations& perms) {
  const std::size_t want =
      static_cast<std::size_t>(params.message_count) * params.sub_count;
  if (perms.sub_size != params.sub_size || perms.perms.size() != want) {
    throw std::invalid_argument("permutations do not match parameters");
  }
  std::vector<bool> seen(params.sub_size);
  for (const auto& perm : perms.perms) {
    if (perm.size() != params.sub_size) {
      throw std::invalid_argument("permutation has wrong length");
    }
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t v : perm) {
      if (v >= params.sub_size || seen[v]) {
        throw std::invalid_argument("permutation entry is not a bijection");
      }
      seen[v] = true;
    }
  }
}

// Consistency gate run on every constructed plan. A failure here is a
// construction bug, never a caller error.
void validate_plan(const QueryPlan& plan) {
  const Params& p = plan.params;
  const std::uint64_t t = p.storage_level;

  // Per-database, per-stage element counts match the closed forms.
  for (int db = 1; db <= p.db_count; ++db) {
    std::vector<std::uint64_t> total(p.message_count + 1, 0);
    std::vector<std::uint64_t> desired(p.message_count + 1, 0);
    for (const QueryElement& e : plan.per_db[db - 1]) {
      ++total[e.stage];
      if (e.kind == ElementKind::kDesiredContaining) ++desired[e.stage];
    }
    for (int stage = 1; stage <= p.message_count; ++stage) {
      StageCounts want = stage_counts(p, stage);
      if (total[stage] != want.total_per_db || desired[stage] != want.desired_per_db) {
        throw std::logic_error("plan: stage " + std::to_string(stage) +
                               " count mismatch at db " + std::to_string(db));
      }
    }
  }

  // Fresh-bit counters: theta exhausts every sub-message, the others stop at
  // t^(K-1).
  std::uint64_t undesired_final =
      checked_pow(t, static_cast<std::uint64_t>(p.message_count - 1));
  for (int m = 1; m <= p.message_count; ++m) {
    for (std::uint64_t rank = 0; rank < p.sub_count; ++rank) {
      std::uint64_t got = plan.fresh_counts[pair_index(p, m, rank)];
      std::uint64_t want = (m == plan.theta) ? p.sub_size : undesired_final;
      if (got != want) {
        throw std::logic_error("plan: fresh-bit counter mismatch for message " +
                               std::to_string(m));
      }
    }
  }

  // Desired coverage: over all databases, the desired-message bit references
  // hit every position of every sub-message of theta exactly once.
  std::vector<std::vector<bool>> covered(p.sub_count,
                                         std::vector<bool>(p.sub_size, false));
  for (int db = 1; db <= p.db_count; ++db) {
    for (const QueryElement& e : plan.per_db[db - 1]) {
      if (e.kind != ElementKind::kDesiredContaining) continue;
      for (const BitRef& b : e.bits) {
        if (b.message != plan.theta) continue;
        if (covered[b.subset_rank][b.position]) {
          throw std::logic_error("plan: desired position covered twice");
        }
        covered[b.subset_rank][b.position] = true;
      }
    }
  }
  for (const auto& sub : covered) {
    for (bool c : sub) {
      if (!c) throw std::logic_error("plan: desired position never queried");
    }
  }
}

}  // namespace

SecretPermutations sample_permutations(const Params& params, std::uint64_t seed) {
  SecretPermutations sp;
  sp.seed = seed;
  sp.sub_size = params.sub_size;
  sp.perms.reserve(static_cast<std::size_t>(params.message_count) * params.sub_count);
  for (int m = 1; m <= params.message_count; ++m) {
    for (std::uint64_t rank = 0; rank < params.sub_count; ++rank) {
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(m), rank}));
      sp.perms.push_back(
          random_permutation(rng, static_cast<std::uint32_t>(params.sub_size)));
    }
  }
  return sp;
}

SecretPermutations identity_permutations(const Params& params) {
  SecretPermutations sp;
  sp.sub_size = params.sub_size;
  std::vector<std::uint32_t> identity(params.sub_size);
  for (std::uint32_t i = 0; i < params.sub_size; ++i) identity[i] = i;
  sp.perms.assign(static_cast<std::size_t>(params.message_count) * params.sub_count,
                  identity);
  return sp;
}

std::uint64_t joint_permutation_count(const Params& params, std::uint64_t limit) {
  std::uint64_t fact = factorial(params.sub_size);
  std::uint64_t count = 1;
  std::uint64_t slots = checked_mul(params.message_count, params.sub_count);
  for (std::uint64_t i = 0; i < slots; ++i) {
    if (count > limit / fact + 1) throw std::overflow_error("joint permutation count");
    count = checked_mul(count, fact);
  }
  return count;
}

SecretPermutations permutations_from_joint_index(const Params& params,
                                                 std::uint64_t joint_index) {
  SecretPermutations sp;
  sp.sub_size = params.sub_size;
  std::uint64_t fact = factorial(params.sub_size);
  std::uint64_t slots =
      static_cast<std::uint64_t>(params.message_count) * params.sub_count;
  sp.perms.reserve(slots);
  for (std::uint64_t i = 0; i < slots; ++i) {
    sp.perms.push_back(permutation_unrank(
        joint_index % fact, static_cast<std::uint32_t>(params.sub_size)));
    joint_index /= fact;
  }
  if (joint_index != 0) {
    throw std::invalid_argument("joint permutation index out of range");
  }
  return sp;
}

std::uint64_t joint_permutation_index(const Params& params,
                                      const SecretPermutations& perms) {
  check_perms(params, perms);
  std::uint64_t fact = factorial(params.sub_size);
  std::uint64_t index = 0;
  for (std::size_t i = perms.perms.size(); i > 0; --i) {
    index = checked_add(checked_mul(index, fact), permutation_rank(perms.perms[i - 1]));
  }
  return index;
}

std::uint64_t QueryPlan::total_elements() const {
  std::uint64_t n = 0;
  for (const auto& q : per_db) n += q.size();
  return n;
}

QueryPlan build_query_plan(const Params& params, const Placement& placement,
                           int theta, SecretPermutations perms) {
  if (theta < 1 || theta > params.message_count) {
    throw std::invalid_argument("theta must be in 1..K");
  }
  if (placement.params.db_count != params.db_count ||
      placement.params.message_count != params.message_count ||
      placement.params.storage_level != params.storage_level) {
    throw std::invalid_argument("placement does not match parameters");
  }
  check_perms(params, perms);

  const int db_count = params.db_count;
  const int msg_count = params.message_count;
  const std::uint64_t t = params.storage_level;

  QueryPlan plan;
  plan.params = params;
  plan.theta = theta;
  plan.perms = std::move(perms);
  plan.per_db.assign(db_count, {});
  plan.side_refs.assign(db_count, {});
  plan.fresh_counts.assign(static_cast<std::size_t>(msg_count) * params.sub_count, 0);

  // Fresh-bit allocation: counters are global across databases; the secret
  // permutation maps counter value -> true stored position.
  auto alloc_fresh = [&](int message, std::uint64_t rank) -> BitRef {
    std::uint64_t& counter = plan.fresh_counts[pair_index(params, message, rank)];
    if (counter >= params.sub_size) {
      throw std::logic_error("plan: fresh-bit counter exhausted");
    }
    std::uint64_t position = plan.perms.perm(message, rank, params.sub_count)[counter];
    ++counter;
    return BitRef{message, rank, position};
  };

  struct LedgerRec {
    std::size_t element_index;
    std::vector<BitRef> bits;
  };
  // (generator db, subset rank, message-set mask) -> records in creation order
  using Ledger = std::map<std::tuple<int, std::uint64_t, std::uint32_t>,
                          std::vector<LedgerRec>>;
  Ledger prev_ledger;

  auto emit = [&](int db, QueryElement element,
                  std::optional<SideRef> side) -> std::size_t {
    auto& list = plan.per_db[db - 1];
    std::size_t index = list.size();
    list.push_back(std::move(element));
    plan.side_refs[db - 1].push_back(side);
    return index;
  };

  // Stage 1: one single bit of every message from every sub-message a
  // database holds. Undesired singles seed the stage-2 ledger.
  {
    Ledger next_ledger;
    for (int db = 1; db <= db_count; ++db) {
      for (std::uint64_t rank : params.db_subsets[db - 1]) {
        for (int m = 1; m <= msg_count; ++m) {
          BitRef bit = alloc_fresh(m, rank);
          QueryElement e{1, rank, {bit},
                         m == theta ? ElementKind::kDesiredContaining
                                    : ElementKind::kPureUndesired};
          std::size_t index = emit(db, std::move(e), std::nullopt);
          if (m != theta) {
            next_ledger[{db, rank, 1u << (m - 1)}].push_back(
                LedgerRec{index, {bit}});
          }
        }
      }
    }
    prev_ledger = std::move(next_ledger);
  }

  // Stage i >= 2: for each sub-message a database holds, walk all size-i
  // message sets in lexicographic order. Sets containing theta pair one fresh
  // desired bit with a previous-stage ledger entry from each other holder of
  // the sub-message; theta-free sets emit (t-1)^(i-1) fresh padding tuples
  // that feed the next stage's ledger.
  for (int stage = 2; stage <= msg_count; ++stage) {
    Ledger next_ledger;
    const std::vector<SubsetId> message_sets = enum_subsets(msg_count, stage);
    const std::uint64_t padding_copies =
        checked_pow(t - 1, static_cast<std::uint64_t>(stage - 1));
    for (int db = 1; db <= db_count; ++db) {
      for (std::uint64_t rank : params.db_subsets[db - 1]) {
        const SubsetId& subset = params.subset(rank);
        for (const SubsetId& mset : message_sets) {
          if (mset.contains(theta)) {
            std::uint32_t ledger_mask = 0;
            for (int m : mset.members) {
              if (m != theta) ledger_mask |= 1u << (m - 1);
            }
            for (int other : subset.members) {
              if (other == db) continue;
              auto it = prev_ledger.find({other, rank, ledger_mask});
              if (it == prev_ledger.end()) continue;
              for (const LedgerRec& rec : it->second) {
                BitRef fresh = alloc_fresh(theta, rank);
                std::vector<BitRef> bits = rec.bits;
                bits.insert(std::upper_bound(bits.begin(), bits.end(), fresh,
                                             [](const BitRef& a, const BitRef& b) {
                                               return a.message < b.message;
                                             }),
                            fresh);
                emit(db, QueryElement{stage, rank, std::move(bits),
                                      ElementKind::kDesiredContaining},
                     SideRef{other, rec.element_index});
              }
            }
          } else {
            std::uint32_t mask = 0;
            for (int m : mset.members) mask |= 1u << (m - 1);
            for (std::uint64_t copy = 0; copy < padding_copies; ++copy) {
              std::vector<BitRef> bits;
              bits.reserve(mset.members.size());
              for (int m : mset.members) bits.push_back(alloc_fresh(m, rank));
              std::size_t index =
                  emit(db, QueryElement{stage, rank, bits,
                                        ElementKind::kPureUndesired},
                       std::nullopt);
              next_ledger[{db, rank, mask}].push_back(LedgerRec{index, std::move(bits)});
            }
          }
        }
      }
    }
    prev_ledger = std::move(next_ledger);
  }

  validate_plan(plan);
  return plan;
}

StageCounts stage_counts(const Params& params, int stage) {
  if (stage < 1 || stage > params.message_count) {
    throw std::invalid_argument("stage must be in 1..K");
  }
  const std::uint64_t n = params.db_count;
  const std::uint64_t k = params.message_count;
  const std::uint64_t t = params.storage_level;
  if (stage == 1) {
    std::uint64_t desired = binom(n - 1, static_cast<std::int64_t>(t) - 1);
    return StageCounts{checked_mul(k, desired), desired};
  }
  std::uint64_t shared = checked_mul(
      checked_mul(n - 1, binom(n - 2, static_cast<std::int64_t>(t) - 2)),
      checked_pow(t - 1, static_cast<std::uint64_t>(stage - 2)));
  return StageCounts{
      checked_mul(binom(k, stage), shared),
      checked_mul(binom(k - 1, stage - 1), shared)};
}

DbView db_view(const QueryPlan& plan, int db) {
  if (db < 1 || db > plan.params.db_count) {
    throw std::invalid_argument("db index out of range");
  }
  DbView view;
  view.reserve(plan.per_db[db - 1].size());
  for (const QueryElement& e : plan.per_db[db - 1]) {
    for (const BitRef& b : e.bits) {
      if (!plan.params.subset(b.subset_rank).contains(db)) {
        throw std::logic_error("plan references a sub-message not stored at this db");
      }
    }
    view.push_back(ViewElement{e.stage, e.subset_rank, e.bits});
  }
  return view;
}

}  // namespace scpir
