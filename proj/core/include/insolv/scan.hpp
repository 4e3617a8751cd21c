#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "insolv/decide.hpp"
#include "insolv/reduction.hpp"

namespace insolv::scan {

struct Options {
  int workers = 1;
  std::uint64_t chunk = std::uint64_t{1} << 16;  // integers per work unit
};

struct ConditionTally {
  std::string kind;                  // "odd", "even", "divisible", "irrational"
  std::vector<std::int64_t> params;  // value / (core, q) / (a, b)
  std::uint64_t count = 0;
};

struct Discrepancy {
  std::uint64_t p = 0;
  std::string description;
};

struct ScanReport {
  std::uint64_t lo = 0, hi = 0;
  std::uint64_t primes_scanned = 0;
  std::uint64_t bad_primes_skipped = 0;
  std::uint64_t matching_count = 0;         // every pair insolvable, direct test
  std::uint64_t condition_match_count = 0;  // reduced condition set holds
  std::vector<std::uint64_t> first_matches;  // up to 100
  double density_estimate = 0.0;
  std::vector<ConditionTally> per_condition;
  std::vector<Discrepancy> discrepancies;
};

/// Scan primes in [lo, hi), skipping bad primes. For each prime, p-1 is
/// factored once and every pair is evaluated both directly (ground truth via
/// the order test) and through the reduced condition set; any disagreement of
/// an exact criterion with the direct test is recorded as a discrepancy.
/// The report is identical for any worker count and any chunk size.
ScanReport scan(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
                const reduction::ConditionSet& cs, std::uint64_t lo, std::uint64_t hi,
                const Options& opts = {});

struct PairCheck {
  std::size_t pair_index = 0;
  bool pass = true;
  std::string description;
};

struct CrossCheckResult {
  bool pass = true;
  std::vector<PairCheck> pairs;
};

/// Direction-aware per-pair comparison at a single prime: equivalence for
/// trivial/odd/even/strongly-even pairs, implication only for divisible.
CrossCheckResult cross_check(std::uint64_t p,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
                             const reduction::ConditionSet& cs);

/// First prime in [lo, hi) at which every pair is insolvable (direct test),
/// scanning in order with early exit.
std::optional<std::uint64_t> find_first_match(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
    const reduction::ConditionSet& cs, std::uint64_t lo, std::uint64_t hi);

/// Witness mining for the order-condition deciders: primes satisfying every
/// listed condition, in ascending order, at most max_count of them.
std::vector<std::uint64_t> divisibility_witnesses(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& reqs, std::uint64_t lo,
    std::uint64_t hi, std::size_t max_count);

std::vector<std::uint64_t> indivisibility_witnesses(std::uint64_t q,
                                                    const std::vector<std::int64_t>& bases,
                                                    std::uint64_t lo, std::uint64_t hi,
                                                    std::size_t max_count);

std::vector<std::uint64_t> gcd_witnesses(const std::vector<decide::GcdTriple>& triples,
                                         std::uint64_t lo, std::uint64_t hi,
                                         std::size_t max_count);

}  // namespace insolv::scan
