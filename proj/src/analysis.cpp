#include "scpir/analysis.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "scpir/rng.hpp"

namespace scpir {
namespace {

void check_counts(int db_count, int message_count) {
  if (db_count < 1 || message_count < 1) {
    throw std::invalid_argument("need at least one database and one message");
  }
}

void check_mu_range(int db_count, const Rational& mu) {
  if (mu < Rational(1, db_count) || mu > Rational(1)) {
    throw std::invalid_argument("mu must lie in [1/N, 1], got " + mu.str());
  }
}

// C(N,t) * t^K, the scheme's unit message length at storage level t.
std::uint64_t unit_message_len(int db_count, int message_count, int storage_level) {
  return checked_mul(binom(static_cast<std::uint64_t>(db_count), storage_level),
                     checked_pow(static_cast<std::uint64_t>(storage_level),
                                 static_cast<std::uint64_t>(message_count)));
}

}  // namespace

Rational theoretical_cost(int storage_level, int message_count) {
  if (storage_level < 1 || message_count < 1) {
    throw std::invalid_argument("cost needs t >= 1 and K >= 1");
  }
  const std::uint64_t t = storage_level;
  // sum_{i=0}^{K-1} t^-i = (1 + t + ... + t^(K-1)) / t^(K-1)
  std::uint64_t numerator = 0;
  for (int i = 0; i < message_count; ++i) {
    numerator = checked_add(numerator, checked_pow(t, static_cast<std::uint64_t>(i)));
  }
  std::uint64_t denominator = checked_pow(t, static_cast<std::uint64_t>(message_count - 1));
  return Rational(static_cast<std::int64_t>(numerator),
                  static_cast<std::int64_t>(denominator));
}

std::vector<TradeoffPoint> tradeoff_curve(int db_count, int message_count) {
  check_counts(db_count, message_count);
  std::vector<TradeoffPoint> points;
  points.reserve(db_count);
  for (int t = 1; t <= db_count; ++t) {
    points.push_back(TradeoffPoint{t, Rational(t, db_count),
                                   theoretical_cost(t, message_count), false});
  }
  // A point is on the lower hull iff no chord between two other points passes
  // strictly below it. Exact rational comparisons throughout.
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool on_hull = true;
    for (std::size_t j = 0; j < i && on_hull; ++j) {
      for (std::size_t k = i + 1; k < points.size() && on_hull; ++k) {
        Rational span = points[k].mu - points[j].mu;
        Rational weight = (points[k].mu - points[i].mu) / span;
        Rational chord =
            weight * points[j].cost + (Rational(1) - weight) * points[k].cost;
        if (chord < points[i].cost) on_hull = false;
      }
    }
    points[i].on_hull = on_hull;
  }
  return points;
}

MemShareSpec memory_share(int db_count, int message_count, Rational mu) {
  check_counts(db_count, message_count);
  check_mu_range(db_count, mu);

  MemShareSpec spec;
  spec.mu = mu;

  Rational scaled = mu * Rational(db_count);  // = t at grid points
  if (scaled.is_integer()) {
    int t = static_cast<int>(scaled.num());
    spec.t_low = spec.t_high = t;
    spec.alpha = Rational(1);
    spec.unit_low = spec.unit_high = unit_message_len(db_count, message_count, t);
    spec.part1_len = spec.unit_low;
    spec.part2_len = 0;
    spec.cost = theoretical_cost(t, message_count);
    return spec;
  }

  spec.t_low = static_cast<int>(scaled.num() / scaled.den());  // floor, scaled > 0
  spec.t_high = spec.t_low + 1;
  // alpha * t_low + (1-alpha) * t_high = N*mu  =>  alpha = t_high - N*mu
  spec.alpha = Rational(spec.t_high) - scaled;
  spec.cost = spec.alpha * theoretical_cost(spec.t_low, message_count) +
              (Rational(1) - spec.alpha) * theoretical_cost(spec.t_high, message_count);

  spec.unit_low = unit_message_len(db_count, message_count, spec.t_low);
  spec.unit_high = unit_message_len(db_count, message_count, spec.t_high);

  // Smallest whole-bit split with L1/(L1+L2) = alpha exactly:
  // a*unit_low*(q-p) = b*unit_high*p for alpha = p/q in lowest terms.
  std::uint64_t p = static_cast<std::uint64_t>(spec.alpha.num());
  std::uint64_t q = static_cast<std::uint64_t>(spec.alpha.den());
  std::uint64_t x = checked_mul(spec.unit_low, q - p);
  std::uint64_t y = checked_mul(spec.unit_high, p);
  std::uint64_t g = std::gcd(x, y);
  std::uint64_t rounds_low = y / g;
  std::uint64_t rounds_high = x / g;
  spec.part1_len = checked_mul(rounds_low, spec.unit_low);
  spec.part2_len = checked_mul(rounds_high, spec.unit_high);

  Rational share(static_cast<std::int64_t>(spec.part1_len),
                 static_cast<std::int64_t>(spec.part1_len + spec.part2_len));
  if (share != spec.alpha) {
    throw std::logic_error("memory_share: part sizing does not realize alpha");
  }
  return spec;
}

CompositeReport composite_retrieval(int db_count, int message_count, Rational mu,
                                    const std::vector<BitVec>& messages, int theta,
                                    std::uint64_t seed) {
  MemShareSpec spec = memory_share(db_count, message_count, mu);
  const std::uint64_t total_len = spec.part1_len + spec.part2_len;
  if (messages.size() != static_cast<std::size_t>(message_count)) {
    throw std::invalid_argument("composite: expected K messages");
  }
  for (const BitVec& m : messages) {
    if (m.size() != total_len) {
      throw std::invalid_argument("composite: messages must be L1+L2 = " +
                                  std::to_string(total_len) + " bits");
    }
  }

  CompositeReport report;
  report.spec = spec;
  report.decoded.reserve(total_len);
  report.desired_bits = total_len;

  // Each part runs its scheme round by round on unit-length slices.
  auto run_part = [&](int part, int level, std::uint64_t offset, std::uint64_t part_len,
                      std::uint64_t unit) -> PartSummary {
    PartSummary summary;
    summary.storage_level = level;
    summary.part_len = part_len;
    if (part_len == 0) return summary;
    Params params = make_params(db_count, message_count, level);
    summary.rounds = part_len / unit;
    for (std::uint64_t round = 0; round < summary.rounds; ++round) {
      std::vector<BitVec> slice(message_count);
      std::uint64_t begin = offset + round * unit;
      for (int m = 0; m < message_count; ++m) {
        slice[m].assign(messages[m].begin() + begin, messages[m].begin() + begin + unit);
      }
      RetrievalReport rr = run_retrieval(
          params, slice, theta,
          derive_seed(seed, {static_cast<std::uint64_t>(part), round}));
      summary.downloaded_bits += rr.downloaded_bits;
      report.decoded.insert(report.decoded.end(), rr.decoded.begin(), rr.decoded.end());
    }
    return summary;
  };

  report.part1 = run_part(1, spec.t_low, 0, spec.part1_len, spec.unit_low);
  report.part2 = run_part(2, spec.t_high, spec.part1_len, spec.part2_len, spec.unit_high);
  report.downloaded_bits = report.part1.downloaded_bits + report.part2.downloaded_bits;
  report.cost = Rational(static_cast<std::int64_t>(report.downloaded_bits),
                         static_cast<std::int64_t>(report.desired_bits));

  if (report.decoded != messages[theta - 1]) {
    throw VerificationError("composite: decoded message differs from the stored one");
  }
  if (report.cost != spec.cost) {
    throw VerificationError("composite: achieved cost " + report.cost.str() +
                            " differs from the mixing cost " + spec.cost.str());
  }
  return report;
}

Rational baseline_extremes(int db_count, int message_count, Rational mu) {
  check_counts(db_count, message_count);
  check_mu_range(db_count, mu);
  Rational low_mu(1, db_count);
  Rational low_cost(message_count);
  Rational high_cost = theoretical_cost(db_count, message_count);
  if (db_count == 1) return high_cost;  // degenerate segment
  Rational slope = (high_cost - low_cost) / (Rational(1) - low_mu);
  return low_cost + (mu - low_mu) * slope;
}

std::vector<ImprovementRow> improvement_report(int db_count, int message_count) {
  check_counts(db_count, message_count);
  std::vector<ImprovementRow> rows;
  for (int t = 2; t < db_count; ++t) {
    ImprovementRow row;
    row.storage_level = t;
    row.scheme_cost = theoretical_cost(t, message_count);
    row.baseline_cost = baseline_extremes(db_count, message_count, Rational(t, db_count));
    row.strict = row.scheme_cost < row.baseline_cost;
    rows.push_back(row);
  }
  return rows;
}

std::string curve_csv(int db_count, int message_count) {
  std::ostringstream out;
  out << "t,mu_num,mu_den,cost_num,cost_den,cost_decimal,on_hull,baseline_decimal\n";
  out.precision(9);
  for (const TradeoffPoint& p : tradeoff_curve(db_count, message_count)) {
    Rational baseline = baseline_extremes(db_count, message_count, p.mu);
    out << p.storage_level << ',' << p.mu.num() << ',' << p.mu.den() << ','
        << p.cost.num() << ',' << p.cost.den() << ',' << p.cost.to_double() << ','
        << (p.on_hull ? 1 : 0) << ',' << baseline.to_double() << '\n';
  }
  return out.str();
}

}  // namespace scpir
