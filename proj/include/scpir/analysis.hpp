#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scpir/runtime.hpp"

namespace scpir {

// Download cost at storage level t: 1 + 1/t + ... + 1/t^(K-1), exact.
Rational theoretical_cost(int storage_level, int message_count);

struct TradeoffPoint {
  int storage_level = 0;
  Rational mu;
  Rational cost;
  bool on_hull = false;
};

// Achievable (mu, cost) pairs for t = 1..N with exact lower-convex-hull
// membership flags.
std::vector<TradeoffPoint> tradeoff_curve(int db_count, int message_count);

// Memory-sharing composition for a target mu between grid points: mix the two
// adjacent storage levels with exact weight alpha, realized with whole-bit
// part sizes (each part a multiple of its scheme's unit message length).
struct MemShareSpec {
  Rational mu;
  int t_low = 0;
  int t_high = 0;
  Rational alpha;               // weight on t_low; alpha*t_low/N + (1-alpha)*t_high/N = mu
  std::uint64_t unit_low = 0;   // C(N,t_low) * t_low^K
  std::uint64_t unit_high = 0;
  std::uint64_t part1_len = 0;  // L1, multiple of unit_low
  std::uint64_t part2_len = 0;  // L2, multiple of unit_high
  Rational cost;                // alpha*D(t_low) + (1-alpha)*D(t_high)
};

MemShareSpec memory_share(int db_count, int message_count, Rational mu);

struct PartSummary {
  int storage_level = 0;
  std::uint64_t rounds = 0;
  std::uint64_t part_len = 0;
  std::uint64_t downloaded_bits = 0;
};

struct CompositeReport {
  MemShareSpec spec;
  PartSummary part1;
  PartSummary part2;
  BitVec decoded;
  std::uint64_t downloaded_bits = 0;
  std::uint64_t desired_bits = 0;
  Rational cost;
};

// Runs the two schemes end to end on message parts of L1 and L2 bits and
// checks that the stitched decode and the exact composite cost both hold.
CompositeReport composite_retrieval(int db_count, int message_count, Rational mu,
                                    const std::vector<BitVec>& messages, int theta,
                                    std::uint64_t seed);

// Straight line between the storage extremes (1/N, K) and (1, D(N)).
Rational baseline_extremes(int db_count, int message_count, Rational mu);

struct ImprovementRow {
  int storage_level = 0;
  Rational scheme_cost;
  Rational baseline_cost;
  bool strict = false;  // scheme_cost < baseline_cost
};

// Interior grid points 1 < t < N compared against extreme memory sharing.
std::vector<ImprovementRow> improvement_report(int db_count, int message_count);

// CSV: t,mu_num,mu_den,cost_num,cost_den,cost_decimal,on_hull,baseline_decimal
std::string curve_csv(int db_count, int message_count);

}  // namespace scpir
