// Acceptance suite: runs the full verification battery and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "scpir/analysis.hpp"
#include "scpir/privacy.hpp"
#include "scpir/rng.hpp"

using namespace scpir;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s | criterion %2d | %-58s | %6.2fs%s%s\n", ok ? "PASS" : "FAIL", id,
              name.c_str(), seconds, detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::vector<BitVec> random_messages(const Params& params, std::uint64_t seed) {
  std::vector<BitVec> messages;
  for (int m = 1; m <= params.message_count; ++m) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(m)}));
    messages.push_back(random_bits(rng, params.message_len));
  }
  return messages;
}

bool golden_run(int n, int k, int t, std::uint64_t downloaded, std::uint64_t desired,
                Rational cost, std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  Params params = make_params(n, k, t);
  RetrievalReport report = run_retrieval(params, random_messages(params, 909), 1, 7);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 1.0) {
    detail = "run exceeded 1s";
    return false;
  }
  if (report.downloaded_bits != downloaded || report.desired_bits != desired ||
      report.cost != cost) {
    detail = "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(t) +
             "): got " + std::to_string(report.downloaded_bits) + "/" +
             std::to_string(report.desired_bits) + " = " + report.cost.str();
    return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "golden costs 18/12, 42/24, 12/9 and K at t=1", [](std::string& detail) {
    bool ok = golden_run(3, 2, 2, 18, 12, Rational(3, 2), detail) &&
              golden_run(3, 3, 2, 42, 24, Rational(7, 4), detail) &&
              golden_run(3, 2, 3, 12, 9, Rational(4, 3), detail) &&
              golden_run(3, 2, 1, 6, 3, Rational(2), detail) &&
              golden_run(4, 3, 1, 12, 4, Rational(3), detail);
    return ok;
  });

  criterion(2, "decode + cost sweep N<=6, K<=5, all t/theta, 20 runs", [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 5; ++k) {
        for (int t = 1; t <= n; ++t) {
          Params params = make_params(n, k, t);
          Rational expected = theoretical_cost(t, k);
          for (int theta = 1; theta <= k; ++theta) {
            for (std::uint64_t run = 0; run < 20; ++run) {
              std::uint64_t seed = derive_seed(4242, {static_cast<std::uint64_t>(n),
                                                      static_cast<std::uint64_t>(k),
                                                      static_cast<std::uint64_t>(t),
                                                      static_cast<std::uint64_t>(theta),
                                                      run});
              auto messages = random_messages(params, seed);
              RetrievalReport report = run_retrieval(params, messages, theta, seed);
              if (report.decoded != messages[theta - 1]) {
                detail = "decode mismatch";
                return false;
              }
              if (report.cost != expected) {
                detail = "cost mismatch at (" + std::to_string(n) + "," +
                         std::to_string(k) + "," + std::to_string(t) + ")";
                return false;
              }
            }
          }
        }
      }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 300.0) {
      detail = "sweep exceeded 5 minutes";
      return false;
    }
    return true;
  });

  criterion(3, "per-stage counts match closed forms + summation identities",
            [](std::string& detail) {
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 5; ++k) {
        for (int t = 1; t <= n; ++t) {
          Params params = make_params(n, k, t);
          Placement placement = build_placement(params);
          for (int theta = 1; theta <= k; ++theta) {
            QueryPlan plan = build_query_plan(params, placement, theta,
                                              identity_permutations(params));
            std::uint64_t sum_total = 0;
            std::uint64_t sum_desired = 0;
            for (int stage = 1; stage <= k; ++stage) {
              StageCounts closed = stage_counts(params, stage);
              for (int db = 1; db <= n; ++db) {
                std::uint64_t total = 0;
                std::uint64_t desired = 0;
                for (const QueryElement& e : plan.per_db[db - 1]) {
                  if (e.stage != stage) continue;
                  ++total;
                  if (e.kind == ElementKind::kDesiredContaining) ++desired;
                }
                if (total != closed.total_per_db || desired != closed.desired_per_db) {
                  detail = "stage table mismatch at (" + std::to_string(n) + "," +
                           std::to_string(k) + "," + std::to_string(t) + ")";
                  return false;
                }
              }
              sum_total += closed.total_per_db;
              sum_desired += closed.desired_per_db;
            }
            std::uint64_t holders = binom(n - 1, t - 1);
            std::uint64_t geometric = 0;
            for (int i = 0; i < k; ++i) geometric += checked_pow(t, i);
            if (sum_desired != holders * checked_pow(t, k - 1) ||
                sum_total != holders * geometric) {
              detail = "summation identity failed";
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  criterion(4, "per-database storage equals mu*K*L (16 and 48 bit goldens)",
            [](std::string& detail) {
    Params p322 = make_params(3, 2, 2);
    Params p332 = make_params(3, 3, 2);
    if (verify_storage(build_placement(p322), p322).budget_bits != 16 ||
        verify_storage(build_placement(p332), p332).budget_bits != 48) {
      detail = "golden storage sizes wrong";
      return false;
    }
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 5; ++k) {
        for (int t = 1; t <= n; ++t) {
          Params params = make_params(n, k, t);
          StorageReport report = verify_storage(build_placement(params), params);
          if (!report.equal) {
            detail = "storage accounting failed at (" + std::to_string(n) + "," +
                     std::to_string(k) + "," + std::to_string(t) + ")";
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(5, "exact privacy tier: exhaustive audit of (2,2,2), 576 joints",
            [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    ExhaustiveReport report = exhaustive_audit(make_params(2, 2, 2));
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 10.0) {
      detail = "audit exceeded 10s";
      return false;
    }
    if (report.joint_count != 576) {
      detail = "joint count " + std::to_string(report.joint_count);
      return false;
    }
    detail = report.detail;
    return report.pass;
  });

  criterion(6, "structural privacy tier: census symmetry over the sweep",
            [](std::string& detail) {
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 5; ++k) {
        for (int t = 1; t <= n; ++t) {
          StructuralReport report = structural_audit(make_params(n, k, t));
          if (!report.pass) {
            detail = report.detail;
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(7, "statistical privacy tier: TV <= 0.05 at 1e5 trials", [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    for (auto [n, k, t] : {std::tuple{3, 2, 2}, std::tuple{3, 3, 2}}) {
      MonteCarloReport report = monte_carlo_audit(make_params(n, k, t), 100000, 2026);
      if (!report.pass) {
        double worst = 0;
        for (const auto& row : report.per_db) worst = std::max(worst, row.max_tv);
        detail = "max TV " + std::to_string(worst) + " at (" + std::to_string(n) + "," +
                 std::to_string(k) + "," + std::to_string(t) + ")";
        return false;
      }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 120.0) {
      detail = "audits exceeded 2 minutes";
      return false;
    }
    return true;
  });

  criterion(8, "memory sharing at mu=1/2 achieves 7/4 with exact decode",
            [](std::string& detail) {
    MemShareSpec spec = memory_share(3, 2, Rational(1, 2));
    if (spec.cost != Rational(7, 4) ||
        spec.cost != Rational(1, 2) * Rational(2) + Rational(1, 2) * Rational(3, 2)) {
      detail = "mixing cost " + spec.cost.str();
      return false;
    }
    std::vector<BitVec> messages;
    for (int m = 1; m <= 2; ++m) {
      Rng rng(derive_seed(808, {static_cast<std::uint64_t>(m)}));
      messages.push_back(random_bits(rng, spec.part1_len + spec.part2_len));
    }
    for (int theta = 1; theta <= 2; ++theta) {
      CompositeReport report =
          composite_retrieval(3, 2, Rational(1, 2), messages, theta, 44);
      if (report.cost != Rational(7, 4) || report.decoded != messages[theta - 1]) {
        detail = "composite run failed";
        return false;
      }
    }
    return true;
  });

  criterion(9, "strict improvement over extreme memory sharing (3<=N<=8, 2<=K<=6)",
            [](std::string& detail) {
    if (!(theoretical_cost(2, 2) < baseline_extremes(3, 2, Rational(2, 3)))) {
      detail = "golden instance 3/2 < 5/3 failed";
      return false;
    }
    for (int n = 3; n <= 8; ++n) {
      for (int k = 2; k <= 6; ++k) {
        for (const ImprovementRow& row : improvement_report(n, k)) {
          if (!row.strict) {
            detail = "not strict at N=" + std::to_string(n) + ", K=" + std::to_string(k) +
                     ", t=" + std::to_string(row.storage_level);
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(10, "extreme points: full storage and minimal storage costs",
            [](std::string& detail) {
    if (theoretical_cost(3, 2) != Rational(4, 3) ||
        theoretical_cost(3, 3) != Rational(13, 9)) {
      detail = "full-storage costs wrong";
      return false;
    }
    auto curve32 = tradeoff_curve(3, 2);
    auto curve33 = tradeoff_curve(3, 3);
    if (curve32.front().cost != Rational(2) || curve33.front().cost != Rational(3)) {
      detail = "t=1 endpoint is not K";
      return false;
    }
    if (curve32.back().cost != Rational(4, 3) || curve33.back().cost != Rational(13, 9)) {
      detail = "t=N endpoint mismatch";
      return false;
    }
    for (int n = 2; n <= 6; ++n) {
      for (int k = 1; k <= 5; ++k) {
        if (tradeoff_curve(n, k).front().cost != Rational(k)) {
          detail = "t=1 cost differs from K";
          return false;
        }
      }
    }
    return true;
  });

  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "OK" : "FAILED", 10 - failures);
  return failures;
}
