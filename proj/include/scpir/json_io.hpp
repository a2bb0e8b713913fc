#pragma once

#include <json.hpp>

#include "scpir/analysis.hpp"
#include "scpir/placement.hpp"
#include "scpir/planner.hpp"
#include "scpir/privacy.hpp"
#include "scpir/runtime.hpp"

namespace scpir {

using json = nlohmann::json;

json rational_json(const Rational& r);  // {num, den, string, decimal}
json params_json(const Params& p);

// Versioned placement document: {version, N, K, t, assignments:[...]}.
json placement_json(const Placement& placement);
Placement placement_from_json(const json& doc);

// Sanitized per-database query: [{stage, subset_members, bits:[{message, position}]}].
json view_json(const Params& params, const DbView& view);

// Full user-side plan, secrets included.
json plan_json(const QueryPlan& plan);

json answers_json(const AnswerSet& answers);
json report_json(const RetrievalReport& report);

json structural_json(const Params& params, const StructuralReport& report);
json exhaustive_json(const Params& params, const ExhaustiveReport& report);
json monte_carlo_json(const Params& params, const MonteCarloReport& report);

json memshare_json(const MemShareSpec& spec);
json composite_json(const CompositeReport& report);
json curve_json(int db_count, int message_count);

}  // namespace scpir
