#include "scpir/runtime.hpp"

#include <string>

namespace scpir {

std::vector<std::uint8_t> answer_query(const DatabaseStore& store, const DbView& view) {
  std::vector<std::uint8_t> answers;
  answers.reserve(view.size());
  for (const ViewElement& e : view) {
    std::uint8_t acc = 0;
    for (const BitRef& b : e.bits) {
      if (!store.holds(b.message, b.subset_rank)) {
        throw IllegalQueryError("db " + std::to_string(store.db_index()) +
                                " does not store message " + std::to_string(b.message) +
                                " subset rank " + std::to_string(b.subset_rank));
      }
      if (b.position >= store.sub_message(b.message, b.subset_rank).size()) {
        throw IllegalQueryError("bit position out of range");
      }
      acc ^= store.bit(b.message, b.subset_rank, b.position);
    }
    answers.push_back(acc);
  }
  return answers;
}

BitVec decode(const QueryPlan& plan, const AnswerSet& answers) {
  const Params& p = plan.params;
  if (answers.size() != static_cast<std::size_t>(p.db_count)) {
    throw VerificationError("answer set has wrong database count");
  }
  for (int db = 1; db <= p.db_count; ++db) {
    if (answers[db - 1].size() != plan.per_db[db - 1].size()) {
      throw VerificationError("answers misaligned with plan at db " + std::to_string(db));
    }
  }

  BitVec message(p.message_len, 0);
  for (int db = 1; db <= p.db_count; ++db) {
    const auto& elements = plan.per_db[db - 1];
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const QueryElement& e = elements[j];
      if (e.kind != ElementKind::kDesiredContaining) continue;

      std::uint8_t value = answers[db - 1][j];
      if (e.stage >= 2) {
        const auto& ref = plan.side_refs[db - 1][j];
        if (!ref.has_value()) {
          throw VerificationError("desired element lacks a side reference");
        }
        if (ref->db < 1 || ref->db > p.db_count ||
            ref->element_index >= answers[ref->db - 1].size()) {
          throw VerificationError("side reference out of range");
        }
        value ^= answers[ref->db - 1][ref->element_index];
      }

      for (const BitRef& b : e.bits) {
        if (b.message != plan.theta) continue;
        message[b.subset_rank * p.sub_size + b.position] = value;
      }
    }
  }
  return message;
}

RetrievalReport run_retrieval(const Params& params, const std::vector<BitVec>& messages,
                              int theta, std::uint64_t seed) {
  Placement placement = build_placement(params);
  std::vector<DatabaseStore> stores = init_databases(placement, messages);
  QueryPlan plan =
      build_query_plan(params, placement, theta, sample_permutations(params, seed));

  AnswerSet answers(params.db_count);
  for (int db = 1; db <= params.db_count; ++db) {
    answers[db - 1] = answer_query(stores[db - 1], db_view(plan, db));
  }

  RetrievalReport report;
  report.decoded = decode(plan, answers);
  if (report.decoded != messages[theta - 1]) {
    throw VerificationError("decoded message differs from the stored message");
  }
  report.downloaded_bits = plan.total_elements();
  report.desired_bits = params.message_len;
  report.cost = Rational(static_cast<std::int64_t>(report.downloaded_bits),
                         static_cast<std::int64_t>(report.desired_bits));

  // Per-stage table from the plan as built (all databases are symmetric;
  // validate_plan already pinned each one to the closed forms).
  for (int stage = 1; stage <= params.message_count; ++stage) {
    StageRow row{stage, 0, 0};
    for (const QueryElement& e : plan.per_db[0]) {
      if (e.stage != stage) continue;
      ++row.total_per_db;
      if (e.kind == ElementKind::kDesiredContaining) ++row.desired_per_db;
    }
    report.per_stage.push_back(row);
  }
  return report;
}

}  // namespace scpir
