#include "scpir/privacy.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "scpir/rng.hpp"

namespace scpir {
namespace {

void append_u64(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

std::uint32_t element_mask(const QueryElement& e) {
  std::uint32_t mask = 0;
  for (const BitRef& b : e.bits) mask |= 1u << (b.message - 1);
  return mask;
}

void check_encodable(const Params& params) {
  if (params.sub_count > 0xFFFF || params.sub_size > 0xFFFFFFFFull) {
    throw std::invalid_argument("audit: parameters too large to encode");
  }
}

}  // namespace

std::string encode_element(const QueryElement& e) {
  std::string out;
  out.reserve(3 + e.bits.size() * 5);
  out.push_back(static_cast<char>(e.stage));
  append_u64(out, e.subset_rank, 2);
  for (const BitRef& b : e.bits) {
    out.push_back(static_cast<char>(b.message));
    append_u64(out, b.position, 4);
  }
  return out;
}

std::string encode_view(const QueryPlan& plan, int db) {
  std::string out;
  for (const QueryElement& e : plan.per_db[db - 1]) {
    std::string piece = encode_element(e);
    out.push_back(static_cast<char>(piece.size()));
    out += piece;
  }
  return out;
}

StructuralReport structural_audit(const Params& params) {
  check_encodable(params);
  StructuralReport report;
  report.census_diff.assign(params.db_count, 0);
  const std::uint64_t t = params.storage_level;
  Placement placement = build_placement(params);

  auto note = [&report](int db, std::string text) {
    ++report.census_diff[db - 1];
    if (report.detail.empty()) report.detail = std::move(text);
  };

  std::vector<Census> reference;                       // theta = 1
  std::vector<std::vector<std::tuple<int, std::uint64_t, std::uint32_t>>> ref_order;

  for (int theta = 1; theta <= params.message_count; ++theta) {
    QueryPlan plan =
        build_query_plan(params, placement, theta, identity_permutations(params));

    std::vector<Census> census(params.db_count);
    std::vector<std::vector<std::tuple<int, std::uint64_t, std::uint32_t>>> order(
        params.db_count);
    for (int db = 1; db <= params.db_count; ++db) {
      for (const QueryElement& e : plan.per_db[db - 1]) {
        std::uint32_t mask = element_mask(e);
        ++census[db - 1][{e.subset_rank, mask}];
        order[db - 1].emplace_back(e.stage, e.subset_rank, mask);
      }
    }

    // Expected census: (t-1)^(|M|-1) for every subset the database holds and
    // every nonempty message set, zero counts included.
    for (int db = 1; db <= params.db_count; ++db) {
      for (std::uint64_t rank : params.db_subsets[db - 1]) {
        for (std::uint32_t mask = 1;
             mask < (1u << params.message_count); ++mask) {
          std::uint64_t expected = checked_pow(t - 1, __builtin_popcount(mask) - 1);
          auto it = census[db - 1].find({rank, mask});
          std::uint64_t actual = it == census[db - 1].end() ? 0 : it->second;
          if (actual != expected) {
            note(db, "census mismatch: db " + std::to_string(db) + ", rank " +
                         std::to_string(rank) + ", mask " + std::to_string(mask) +
                         ", theta " + std::to_string(theta) + ": expected " +
                         std::to_string(expected) + ", got " + std::to_string(actual));
          }
        }
      }
      // No signature outside the expected key space may appear.
      for (const auto& [sig, count] : census[db - 1]) {
        if (!params.subset(sig.first).contains(db)) {
          note(db, "census touches a subset not stored at db " + std::to_string(db));
        }
      }
    }

    if (theta == 1) {
      reference = census;
      ref_order = order;
      report.census_per_db = census;
    } else {
      for (int db = 1; db <= params.db_count; ++db) {
        if (census[db - 1] != reference[db - 1]) {
          note(db, "census differs between theta 1 and theta " + std::to_string(theta) +
                       " at db " + std::to_string(db));
        }
        if (order[db - 1] != ref_order[db - 1]) {
          note(db, "emission-order signatures differ between theta 1 and theta " +
                       std::to_string(theta) + " at db " + std::to_string(db));
        }
      }
    }
  }
  report.pass = true;
  for (std::uint64_t diff : report.census_diff) report.pass = report.pass && diff == 0;
  return report;
}

ExhaustiveReport exhaustive_audit(const Params& params, std::uint64_t bound) {
  check_encodable(params);
  ExhaustiveReport report;
  try {
    report.joint_count = joint_permutation_count(params, bound);
  } catch (const std::overflow_error&) {
    throw EnumerationBoundError("joint permutation space exceeds the enumeration bound");
  }
  if (report.joint_count > bound) {
    throw EnumerationBoundError(
        "joint permutation space (" + std::to_string(report.joint_count) +
        ") exceeds the enumeration bound (" + std::to_string(bound) + ")");
  }

  Placement placement = build_placement(params);
  // multiset[db-1][theta-1]: serialized view -> multiplicity
  std::vector<std::vector<std::unordered_map<std::string, std::uint64_t>>> multiset(
      params.db_count,
      std::vector<std::unordered_map<std::string, std::uint64_t>>(params.message_count));

  for (std::uint64_t joint = 0; joint < report.joint_count; ++joint) {
    for (int theta = 1; theta <= params.message_count; ++theta) {
      QueryPlan plan = build_query_plan(params, placement, theta,
                                        permutations_from_joint_index(params, joint));
      for (int db = 1; db <= params.db_count; ++db) {
        ++multiset[db - 1][theta - 1][encode_view(plan, db)];
      }
    }
  }

  for (int db = 1; db <= params.db_count; ++db) {
    for (int theta = 2; theta <= params.message_count; ++theta) {
      if (multiset[db - 1][theta - 1] != multiset[db - 1][0]) {
        report.detail = "query multisets differ between theta 1 and theta " +
                        std::to_string(theta) + " at db " + std::to_string(db);
        return report;
      }
    }
  }
  report.pass = true;
  return report;
}

MonteCarloReport monte_carlo_audit(const Params& params, std::uint64_t trials,
                                   std::uint64_t seed, double threshold) {
  if (trials < 1) throw std::invalid_argument("audit: trials must be >= 1");
  check_encodable(params);

  MonteCarloReport report;
  report.trials = trials;
  report.threshold = threshold;

  Placement placement = build_placement(params);
  const std::size_t slots =
      build_query_plan(params, placement, 1, identity_permutations(params))
          .per_db[0].size();

  // counts[theta-1][db-1][slot]: element encoding -> frequency
  using SlotCounts = std::unordered_map<std::string, std::uint64_t>;
  std::vector<std::vector<std::vector<SlotCounts>>> counts(
      params.message_count,
      std::vector<std::vector<SlotCounts>>(params.db_count,
                                           std::vector<SlotCounts>(slots)));

  for (int theta = 1; theta <= params.message_count; ++theta) {
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      SecretPermutations perms = sample_permutations(
          params, derive_seed(seed, {static_cast<std::uint64_t>(theta), trial}));
      QueryPlan plan = build_query_plan(params, placement, theta, std::move(perms));
      for (int db = 1; db <= params.db_count; ++db) {
        const auto& elements = plan.per_db[db - 1];
        for (std::size_t j = 0; j < elements.size(); ++j) {
          ++counts[theta - 1][db - 1][j][encode_element(elements[j])];
        }
      }
    }
  }

  report.pass = true;
  for (int db = 1; db <= params.db_count; ++db) {
    MonteCarloDbRow row;
    row.db = db;
    for (int theta = 2; theta <= params.message_count; ++theta) {
      for (std::size_t j = 0; j < slots; ++j) {
        const SlotCounts& a = counts[0][db - 1][j];
        const SlotCounts& b = counts[theta - 1][db - 1][j];
        double tv = 0.0;
        std::uint64_t support = 0;
        for (const auto& [value, ca] : a) {
          auto it = b.find(value);
          std::uint64_t cb = it == b.end() ? 0 : it->second;
          tv += std::abs(static_cast<double>(ca) - static_cast<double>(cb));
          double diff = static_cast<double>(ca) - static_cast<double>(cb);
          row.chi_square += diff * diff / static_cast<double>(ca + cb);
          ++support;
        }
        for (const auto& [value, cb] : b) {
          if (a.contains(value)) continue;
          tv += static_cast<double>(cb);
          row.chi_square += static_cast<double>(cb);
          ++support;
        }
        tv /= 2.0 * static_cast<double>(trials);
        row.max_tv = std::max(row.max_tv, tv);
        if (support > 0) row.chi_square_dof += support - 1;
      }
    }
    row.pass = params.message_count == 1 || row.max_tv <= threshold;
    report.pass = report.pass && row.pass;
    report.per_db.push_back(row);
  }
  return report;
}

}  // namespace scpir
