#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace insolv::selfcheck {

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<CheckEntry> entries;
  bool pass = true;
};

/// A fixed pair corpus with at least 50 members of every classification
/// variant, used by the self-check and the acceptance suite.
std::vector<std::pair<std::int64_t, std::int64_t>> pair_class_corpus();

/// Runs the built-in consistency suites:
///  - multiplicative_order against the naive loop (p < min(limit, 1000)),
///  - the order solvability test against brute-force exponent search
///    (p < min(limit, 2000), |a|, |b| <= 30),
///  - the per-class order criteria against the direct test over the corpus,
///    for all non-bad primes p < limit.
SelfCheckReport run_selfcheck(std::uint64_t limit);

}  // namespace insolv::selfcheck
