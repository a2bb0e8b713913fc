#include "scpir/json_io.hpp"

#include <iomanip>
#include <sstream>

namespace scpir {
namespace {

constexpr int kPlacementVersion = 1;

std::string hex_string(const std::vector<std::uint8_t>& bytes) {
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (std::uint8_t b : bytes) out << std::setw(2) << static_cast<int>(b);
  return out.str();
}

}  // namespace

json rational_json(const Rational& r) {
  return json{{"num", r.num()},
              {"den", r.den()},
              {"string", r.str()},
              {"decimal", r.to_double()}};
}

json params_json(const Params& p) {
  return json{{"N", p.db_count},
              {"K", p.message_count},
              {"t", p.storage_level},
              {"sub_count", p.sub_count},
              {"sub_size", p.sub_size},
              {"message_len", p.message_len},
              {"per_db_storage", p.per_db_storage},
              {"mu", rational_json(p.mu)}};
}

json placement_json(const Placement& placement) {
  const Params& p = placement.params;
  json assignments = json::array();
  for (int db = 1; db <= p.db_count; ++db) {
    for (const StoredPair& pair : placement.per_db[db - 1]) {
      assignments.push_back(json{{"db", db},
                                 {"message", pair.message},
                                 {"subset_members", p.subset(pair.subset_rank).members}});
    }
  }
  return json{{"version", kPlacementVersion},
              {"N", p.db_count},
              {"K", p.message_count},
              {"t", p.storage_level},
              {"assignments", assignments}};
}

Placement placement_from_json(const json& doc) {
  if (doc.at("version").get<int>() != kPlacementVersion) {
    throw std::invalid_argument("placement document has unsupported version");
  }
  Params params = make_params(doc.at("N").get<int>(), doc.at("K").get<int>(),
                              doc.at("t").get<int>());
  Placement placement;
  placement.params = params;
  placement.per_db.assign(params.db_count, {});
  for (const json& entry : doc.at("assignments")) {
    int db = entry.at("db").get<int>();
    if (db < 1 || db > params.db_count) {
      throw std::invalid_argument("placement document: db index out of range");
    }
    auto members = entry.at("subset_members").get<std::vector<int>>();
    std::uint64_t rank = subset_rank(members, params.db_count);
    placement.per_db[db - 1].push_back(
        StoredPair{entry.at("message").get<int>(), rank});
  }
  return placement;
}

json view_json(const Params& params, const DbView& view) {
  json elements = json::array();
  for (const ViewElement& e : view) {
    json bits = json::array();
    for (const BitRef& b : e.bits) {
      bits.push_back(json{{"message", b.message}, {"position", b.position}});
    }
    elements.push_back(json{{"stage", e.stage},
                            {"subset_members", params.subset(e.subset_rank).members},
                            {"bits", bits}});
  }
  return elements;
}

json plan_json(const QueryPlan& plan) {
  const Params& p = plan.params;
  json queries = json::array();
  for (int db = 1; db <= p.db_count; ++db) {
    json elements = json::array();
    const auto& list = plan.per_db[db - 1];
    for (std::size_t j = 0; j < list.size(); ++j) {
      const QueryElement& e = list[j];
      json bits = json::array();
      for (const BitRef& b : e.bits) {
        bits.push_back(json{{"message", b.message}, {"position", b.position}});
      }
      json element{{"stage", e.stage},
                   {"subset_members", p.subset(e.subset_rank).members},
                   {"bits", bits},
                   {"kind", e.kind == ElementKind::kDesiredContaining
                                ? "desired-containing"
                                : "pure-undesired"}};
      const auto& ref = plan.side_refs[db - 1][j];
      if (ref.has_value()) {
        element["side_ref"] = json{{"db", ref->db}, {"element_index", ref->element_index}};
      }
      elements.push_back(std::move(element));
    }
    queries.push_back(json{{"db", db}, {"elements", elements}});
  }
  return json{{"params", params_json(p)},
              {"theta", plan.theta},
              {"permutation_seed", plan.perms.seed},
              {"permutations", plan.perms.perms},
              {"queries", queries}};
}

json answers_json(const AnswerSet& answers) {
  json out = json::array();
  for (std::size_t db = 1; db <= answers.size(); ++db) {
    out.push_back(json{{"db", db}, {"bits", answers[db - 1]}});
  }
  return out;
}

json report_json(const RetrievalReport& report) {
  json stages = json::array();
  for (const StageRow& row : report.per_stage) {
    stages.push_back(json{{"stage", row.stage},
                          {"total_per_db", row.total_per_db},
                          {"desired_per_db", row.desired_per_db}});
  }
  return json{{"downloaded_bits", report.downloaded_bits},
              {"desired_bits", report.desired_bits},
              {"cost", rational_json(report.cost)},
              {"per_stage", stages},
              {"decoded_len", report.decoded.size()},
              {"decoded_hex", hex_string(pack_bits(report.decoded))}};
}

json structural_json(const Params& params, const StructuralReport& report) {
  json per_db = json::array();
  for (int db = 1; db <= params.db_count; ++db) {
    json row{{"db", db}, {"pass", report.pass}};
    if (report.pass && !report.census_per_db.empty()) {
      row["signatures"] = report.census_per_db[db - 1].size();
    }
    per_db.push_back(row);
  }
  return json{{"mode", "structural"},
              {"params", params_json(params)},
              {"per_db", per_db},
              {"pass", report.pass},
              {"detail", report.detail}};
}

json exhaustive_json(const Params& params, const ExhaustiveReport& report) {
  return json{{"mode", "exhaustive"},
              {"params", params_json(params)},
              {"joint_permutations", report.joint_count},
              {"pass", report.pass},
              {"detail", report.detail}};
}

json monte_carlo_json(const Params& params, const MonteCarloReport& report) {
  json per_db = json::array();
  for (const MonteCarloDbRow& row : report.per_db) {
    per_db.push_back(json{{"db", row.db},
                          {"max_tv", row.max_tv},
                          {"chi_square", row.chi_square},
                          {"chi_square_dof", row.chi_square_dof},
                          {"pass", row.pass}});
  }
  return json{{"mode", "montecarlo"},
              {"params", params_json(params)},
              {"trials", report.trials},
              {"tv_threshold", report.threshold},
              {"per_db", per_db},
              {"pass", report.pass}};
}

json memshare_json(const MemShareSpec& spec) {
  return json{{"mu", rational_json(spec.mu)},
              {"t_low", spec.t_low},
              {"t_high", spec.t_high},
              {"alpha", rational_json(spec.alpha)},
              {"unit_low", spec.unit_low},
              {"unit_high", spec.unit_high},
              {"part1_len", spec.part1_len},
              {"part2_len", spec.part2_len},
              {"cost", rational_json(spec.cost)}};
}

json composite_json(const CompositeReport& report) {
  auto part = [](const PartSummary& s) {
    return json{{"storage_level", s.storage_level},
                {"rounds", s.rounds},
                {"part_len", s.part_len},
                {"downloaded_bits", s.downloaded_bits}};
  };
  return json{{"spec", memshare_json(report.spec)},
              {"part1", part(report.part1)},
              {"part2", part(report.part2)},
              {"downloaded_bits", report.downloaded_bits},
              {"desired_bits", report.desired_bits},
              {"cost", rational_json(report.cost)},
              {"decoded_len", report.decoded.size()},
              {"decoded_hex", hex_string(pack_bits(report.decoded))}};
}

json curve_json(int db_count, int message_count) {
  json points = json::array();
  for (const TradeoffPoint& p : tradeoff_curve(db_count, message_count)) {
    points.push_back(json{
        {"t", p.storage_level},
        {"mu", rational_json(p.mu)},
        {"cost", rational_json(p.cost)},
        {"on_hull", p.on_hull},
        {"baseline",
         rational_json(baseline_extremes(db_count, message_count, p.mu))}});
  }
  return json{{"N", db_count}, {"K", message_count}, {"points", points}};
}

}  // namespace scpir
