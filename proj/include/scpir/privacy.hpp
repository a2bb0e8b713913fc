#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpir/planner.hpp"

namespace scpir {

// Census signature of a query element as a database sees it: which
// sub-message subset it touches and which message set it spans.
using Signature = std::pair<std::uint64_t, std::uint32_t>;  // (subset rank, message mask)
using Census = std::map<Signature, std::uint64_t>;

// Necessary-condition audit: for every desired index the per-database census
// must equal (t-1)^(|M|-1) for each (subset, message-set) signature, and both
// the census and the emission-order signature sequence must be literally
// identical across all desired indices.
struct StructuralReport {
  bool pass = false;
  std::string detail;                      // first mismatch, empty when passing
  std::vector<std::uint64_t> census_diff;  // per db: signatures off expectation or reference
  std::vector<Census> census_per_db;       // for theta = 1
};

StructuralReport structural_audit(const Params& params);

// Thrown when exhaustive enumeration would exceed the caller's bound.
class EnumerationBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sufficient check at tiny scale: enumerate every joint permutation
// assignment and require the multiset of sanitized queries per database to be
// identical for every desired index.
struct ExhaustiveReport {
  bool pass = false;
  std::uint64_t joint_count = 0;
  std::vector<bool> per_db_pass;
  std::string detail;
};

ExhaustiveReport exhaustive_audit(const Params& params, std::uint64_t bound = 2'000'000);

// Statistical check at larger scale. Draws `trials` independent plans per
// desired index and compares, per database and element slot, the empirical
// distributions of sanitized elements between theta=1 and every other theta.
// The reported distance is the maximum per-slot total-variation distance;
// whole-query plug-in TV needs on the order of support/epsilon^2 samples and
// would drown identical distributions in estimator bias.
struct MonteCarloDbRow {
  int db = 0;
  double max_tv = 0.0;
  double chi_square = 0.0;  // summed two-sample statistic across slots
  std::uint64_t chi_square_dof = 0;
  bool pass = false;
};

struct MonteCarloReport {
  bool pass = false;
  std::uint64_t trials = 0;
  double threshold = 0.0;
  std::vector<MonteCarloDbRow> per_db;
};

MonteCarloReport monte_carlo_audit(const Params& params, std::uint64_t trials,
                                   std::uint64_t seed, double threshold = 0.05);

// Canonical byte encoding of a sanitized element / view; equal encodings iff
// equal sanitized content.
std::string encode_element(const QueryElement& element);
std::string encode_view(const QueryPlan& plan, int db);

}  // namespace scpir
