// scpir: storage-constrained PIR simulator, auditor and tradeoff explorer.
//
// Exit status: 0 = all checks passed, 1 = a verification failed,
// 2 = usage or parameter error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "scpir/json_io.hpp"
#include "scpir/rng.hpp"

namespace {

using scpir::BitVec;
using scpir::json;
using scpir::Params;
using scpir::Rational;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCPIR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("SCPIR_SEED is not a valid unsigned integer");
    }
  }
  return 0;
}

std::vector<BitVec> load_messages(const std::string& source, const std::string& path,
                                  const Params& params, std::uint64_t seed) {
  std::vector<BitVec> messages;
  if (source == "zero") {
    messages.assign(params.message_count, BitVec(params.message_len, 0));
  } else if (source == "random") {
    for (int m = 1; m <= params.message_count; ++m) {
      scpir::Rng rng(scpir::derive_seed(seed, {0xBEEF, static_cast<std::uint64_t>(m)}));
      messages.push_back(scpir::random_bits(rng, params.message_len));
    }
  } else if (source == "file") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open message file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    std::uint64_t per_message = (params.message_len + 7) / 8;
    if (bytes.size() != per_message * params.message_count) {
      throw std::invalid_argument(
          "message file must hold K blocks of ceil(L/8) bytes (expected " +
          std::to_string(per_message * params.message_count) + " bytes, got " +
          std::to_string(bytes.size()) + ")");
    }
    for (int m = 0; m < params.message_count; ++m) {
      std::vector<std::uint8_t> block(bytes.begin() + m * per_message,
                                      bytes.begin() + (m + 1) * per_message);
      messages.push_back(scpir::unpack_bits(block, params.message_len));
    }
  } else {
    throw std::invalid_argument("message source must be random, zero or file");
  }
  return messages;
}

int run_simulate_once(int n, int k, int t, int theta, std::uint64_t seed,
                      const std::string& source, const std::string& file, json& out) {
  Params params = scpir::make_params(n, k, t);
  std::vector<BitVec> messages = load_messages(source, file, params, seed);
  scpir::RetrievalReport report = scpir::run_retrieval(params, messages, theta, seed);
  Rational expected = scpir::theoretical_cost(t, k);
  bool cost_ok = report.cost == expected;
  out = json{{"params", scpir::params_json(params)},
             {"theta", theta},
             {"seed", seed},
             {"report", scpir::report_json(report)},
             {"expected_cost", scpir::rational_json(expected)},
             {"cost_match", cost_ok},
             {"decode_exact", true}};
  return cost_ok ? kExitOk : kExitVerification;
}

int cmd_simulate(int n, int k, int t, int theta, std::uint64_t seed,
                 const std::string& source, const std::string& file, bool sweep) {
  if (!sweep) {
    json out;
    int rc = run_simulate_once(n, k, t, theta, seed, source, file, out);
    std::cout << out.dump(2) << "\n";
    return rc;
  }
  json runs = json::array();
  int rc = kExitOk;
  for (int level = 1; level <= n; ++level) {
    for (int want = 1; want <= k; ++want) {
      json out;
      rc = std::max(rc, run_simulate_once(n, k, level, want, seed, source, file, out));
      runs.push_back(std::move(out));
    }
  }
  std::cout << json{{"sweep", runs}}.dump(2) << "\n";
  return rc;
}

int run_counts_once(int n, int k, int t, json& out) {
  Params params = scpir::make_params(n, k, t);
  scpir::Placement placement = scpir::build_placement(params);
  scpir::QueryPlan plan = scpir::build_query_plan(
      params, placement, 1, scpir::identity_permutations(params));

  json stages = json::array();
  std::uint64_t sum_total = 0;
  std::uint64_t sum_desired = 0;
  bool match = true;
  for (int stage = 1; stage <= k; ++stage) {
    scpir::StageCounts closed = scpir::stage_counts(params, stage);
    std::uint64_t built_total = 0;
    std::uint64_t built_desired = 0;
    for (const scpir::QueryElement& e : plan.per_db[0]) {
      if (e.stage != stage) continue;
      ++built_total;
      if (e.kind == scpir::ElementKind::kDesiredContaining) ++built_desired;
    }
    match = match && built_total == closed.total_per_db &&
            built_desired == closed.desired_per_db;
    sum_total += closed.total_per_db;
    sum_desired += closed.desired_per_db;
    stages.push_back(json{{"stage", stage},
                          {"total_per_db", closed.total_per_db},
                          {"desired_per_db", closed.desired_per_db},
                          {"built_total_per_db", built_total},
                          {"built_desired_per_db", built_desired}});
  }

  // The two closed-form chains the per-stage rows must add up to.
  std::uint64_t holders = scpir::binom(static_cast<std::uint64_t>(n - 1), t - 1);
  std::uint64_t desired_closed =
      holders * scpir::checked_pow(t, static_cast<std::uint64_t>(k - 1));
  std::uint64_t geometric = 0;
  for (int i = 0; i < k; ++i) {
    geometric += scpir::checked_pow(t, static_cast<std::uint64_t>(i));
  }
  std::uint64_t total_closed = holders * geometric;
  match = match && sum_total == total_closed && sum_desired == desired_closed;

  out = json{{"params", scpir::params_json(params)},
             {"stages", stages},
             {"sum_total_per_db", sum_total},
             {"sum_desired_per_db", sum_desired},
             {"closed_form_total_per_db", total_closed},
             {"closed_form_desired_per_db", desired_closed},
             {"match", match}};
  return match ? kExitOk : kExitVerification;
}

int cmd_counts(int n, int k, int t, bool sweep) {
  if (!sweep) {
    json out;
    int rc = run_counts_once(n, k, t, out);
    std::cout << out.dump(2) << "\n";
    return rc;
  }
  json runs = json::array();
  int rc = kExitOk;
  for (int level = 1; level <= n; ++level) {
    json out;
    rc = std::max(rc, run_counts_once(n, k, level, out));
    runs.push_back(std::move(out));
  }
  std::cout << json{{"sweep", runs}}.dump(2) << "\n";
  return rc;
}

int cmd_audit(int n, int k, int t, const std::string& mode, std::uint64_t trials,
              std::uint64_t seed, std::uint64_t bound, double threshold) {
  Params params = scpir::make_params(n, k, t);
  if (mode == "structural") {
    scpir::StructuralReport report = scpir::structural_audit(params);
    std::cout << scpir::structural_json(params, report).dump(2) << "\n";
    return report.pass ? kExitOk : kExitVerification;
  }
  if (mode == "exhaustive") {
    scpir::ExhaustiveReport report = scpir::exhaustive_audit(params, bound);
    std::cout << scpir::exhaustive_json(params, report).dump(2) << "\n";
    return report.pass ? kExitOk : kExitVerification;
  }
  if (mode == "montecarlo") {
    scpir::MonteCarloReport report =
        scpir::monte_carlo_audit(params, trials, seed, threshold);
    std::cout << scpir::monte_carlo_json(params, report).dump(2) << "\n";
    return report.pass ? kExitOk : kExitVerification;
  }
  throw std::invalid_argument("audit mode must be structural, exhaustive or montecarlo");
}

int cmd_tradeoff(int n, int k, const std::string& format) {
  if (format == "csv") {
    std::cout << scpir::curve_csv(n, k);
    return kExitOk;
  }
  if (format == "json") {
    std::cout << scpir::curve_json(n, k).dump(2) << "\n";
    return kExitOk;
  }
  throw std::invalid_argument("format must be csv or json");
}

int cmd_memshare(int n, int k, const std::string& mu_text, int theta,
                 std::uint64_t seed) {
  Rational mu = scpir::parse_rational(mu_text);
  scpir::MemShareSpec spec = scpir::memory_share(n, k, mu);
  std::vector<BitVec> messages;
  for (int m = 1; m <= k; ++m) {
    scpir::Rng rng(scpir::derive_seed(seed, {0xBEEF, static_cast<std::uint64_t>(m)}));
    messages.push_back(scpir::random_bits(rng, spec.part1_len + spec.part2_len));
  }
  scpir::CompositeReport report =
      scpir::composite_retrieval(n, k, mu, messages, theta, seed);
  std::cout << scpir::composite_json(report).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"storage-constrained private information retrieval toolkit"};
  app.require_subcommand(1);

  int n = 0, k = 0, t = 0, theta = 1;
  std::uint64_t seed = 0, trials = 100000, bound = 2'000'000;
  double threshold = 0.05;
  bool sweep = false;
  std::string source = "random", file, mode = "structural", format = "csv", mu;
  bool seed_given = false;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "deterministic seed (default: $SCPIR_SEED or 0)")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one full retrieval");
  simulate->add_option("-N,--dbs", n, "database count")->required();
  simulate->add_option("-K,--messages", k, "message count")->required();
  simulate->add_option("-t,--storage-level", t, "storage level");
  simulate->add_option("--theta", theta, "desired message index (1-based)");
  simulate->add_option("--message-source", source, "random | zero | file");
  simulate->add_option("--message-file", file, "packed message file for --message-source file");
  simulate->add_flag("--sweep", sweep, "iterate all (t, theta)");
  add_seed(simulate);

  CLI::App* counts = app.add_subcommand("counts", "per-stage download counts vs closed forms");
  counts->add_option("-N,--dbs", n, "database count")->required();
  counts->add_option("-K,--messages", k, "message count")->required();
  counts->add_option("-t,--storage-level", t, "storage level");
  counts->add_flag("--sweep", sweep, "iterate all t");

  CLI::App* audit = app.add_subcommand("audit", "privacy audits");
  audit->add_option("-N,--dbs", n, "database count")->required();
  audit->add_option("-K,--messages", k, "message count")->required();
  audit->add_option("-t,--storage-level", t, "storage level")->required();
  audit->add_option("--mode", mode, "structural | exhaustive | montecarlo");
  audit->add_option("--trials", trials, "montecarlo trials per desired index");
  audit->add_option("--bound", bound, "exhaustive enumeration bound");
  audit->add_option("--threshold", threshold, "montecarlo TV pass threshold");
  add_seed(audit);

  CLI::App* tradeoff = app.add_subcommand("tradeoff", "storage/download tradeoff curve");
  tradeoff->add_option("-N,--dbs", n, "database count")->required();
  tradeoff->add_option("-K,--messages", k, "message count")->required();
  tradeoff->add_option("--format", format, "csv | json");

  CLI::App* memshare = app.add_subcommand("memshare", "memory-sharing composition");
  memshare->add_option("-N,--dbs", n, "database count")->required();
  memshare->add_option("-K,--messages", k, "message count")->required();
  memshare->add_option("--mu", mu, "target storage fraction, e.g. 1/2")->required();
  memshare->add_option("--theta", theta, "desired message index (1-based)");
  add_seed(memshare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (simulate->parsed()) {
      if (!sweep && (t == 0 || theta == 0)) {
        throw std::invalid_argument("simulate needs -t and --theta unless --sweep is set");
      }
      return cmd_simulate(n, k, t, theta, seed, source, file, sweep);
    }
    if (counts->parsed()) {
      if (!sweep && t == 0) {
        throw std::invalid_argument("counts needs -t unless --sweep is set");
      }
      return cmd_counts(n, k, t, sweep);
    }
    if (audit->parsed()) return cmd_audit(n, k, t, mode, trials, seed, bound, threshold);
    if (tradeoff->parsed()) return cmd_tradeoff(n, k, format);
    if (memshare->parsed()) return cmd_memshare(n, k, mu, theta, seed);
  } catch (const scpir::EnumerationBoundError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const scpir::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: parameters overflow exact arithmetic: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
