#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "insolv/json_io.hpp"
#include "insolv/scan.hpp"

using namespace insolv::scan;
using insolv::reduction::ConditionSet;
using insolv::reduction::build_conditions;

namespace {

const std::vector<std::pair<std::int64_t, std::int64_t>> kFiniteExample = {
    {4, -16}, {9, -81}, {4, 2}, {9, 3}, {36, 6}};

ScanReport run(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
               std::uint64_t lo, std::uint64_t hi, Options opts = {}) {
  ConditionSet cs = build_conditions(prs);
  return scan(prs, cs, lo, hi, opts);
}

}  // namespace

TEST_CASE("the finite example has no matches at all") {
  ScanReport rep = run(kFiniteExample, 5, 100000);
  CHECK(rep.matching_count == 0);
  CHECK(rep.condition_match_count == 0);
  CHECK(rep.first_matches.empty());
  CHECK(rep.discrepancies.empty());
  CHECK(rep.primes_scanned > 9500);
}

TEST_CASE("odd-order density sits in the expected band") {
  ScanReport rep = run({{2, -4}}, 3, 10000);
  double fraction = rep.density_estimate;
  CHECK(fraction >= 0.25);
  CHECK(fraction <= 0.34);
  CHECK(rep.discrepancies.empty());
  // One odd condition; the tally must equal the matching count exactly.
  REQUIRE(rep.per_condition.size() == 1);
  CHECK(rep.per_condition[0].kind == "odd");
  CHECK(rep.per_condition[0].count == rep.matching_count);
  CHECK(rep.matching_count == rep.condition_match_count);
}

TEST_CASE("irrational insolvability density sits in the expected band") {
  ScanReport rep = run({{2, 3}}, 3, 10000);
  CHECK(rep.density_estimate >= 0.35);
  CHECK(rep.density_estimate <= 0.50);
  CHECK(rep.discrepancies.empty());
}

TEST_CASE("reports are identical across worker counts and chunk sizes") {
  Options serial;
  serial.workers = 1;
  ScanReport ref = run(kFiniteExample, 3, 60000, serial);
  std::string ref_json = insolv::json_io::to_json(ref);

  Options parallel;
  parallel.workers = 8;
  CHECK(insolv::json_io::to_json(run(kFiniteExample, 3, 60000, parallel)) == ref_json);

  Options tiny_chunks;
  tiny_chunks.workers = 3;
  tiny_chunks.chunk = 1999;
  CHECK(insolv::json_io::to_json(run(kFiniteExample, 3, 60000, tiny_chunks)) == ref_json);
}

TEST_CASE("adjacent ranges merge to the full range") {
  auto whole = run({{2, -4}, {2, 3}}, 3, 40000);
  auto left = run({{2, -4}, {2, 3}}, 3, 20000);
  auto right = run({{2, -4}, {2, 3}}, 20000, 40000);
  CHECK(left.primes_scanned + right.primes_scanned == whole.primes_scanned);
  CHECK(left.matching_count + right.matching_count == whole.matching_count);
  CHECK(left.condition_match_count + right.condition_match_count ==
        whole.condition_match_count);
  std::vector<std::uint64_t> merged = left.first_matches;
  for (std::uint64_t p : right.first_matches)
    if (merged.size() < 100) merged.push_back(p);
  CHECK(merged == whole.first_matches);
}

TEST_CASE("bad primes are skipped and counted") {
  ScanReport rep = run(kFiniteExample, 2, 100);
  CHECK(rep.bad_primes_skipped == 2);  // 2 and 3
  ScanReport rep2 = run(kFiniteExample, 5, 100);
  CHECK(rep2.bad_primes_skipped == 0);
}

TEST_CASE("scan validates systems with early verdicts too") {
  // Always-solvable pair: no prime can match.
  ScanReport rep = run({{2, 8}, {2, 3}}, 3, 20000);
  CHECK(rep.matching_count == 0);
  CHECK(rep.discrepancies.empty());

  // -1 product: the odd conditions are never simultaneously satisfiable.
  ScanReport rep2 = run({{2, -2}, {-8, 8}}, 3, 20000);
  CHECK(rep2.matching_count == 0);
  CHECK(rep2.condition_match_count == 0);
  CHECK(rep2.discrepancies.empty());
}

TEST_CASE("trivial and zero-containing pairs scan cleanly") {
  // Scan above every bad prime of either system so the prime sets coincide.
  ScanReport rep = run({{1, 5}, {0, 7}, {5, 0}, {2, 3}}, 11, 5000);
  CHECK(rep.discrepancies.empty());
  // The dropped pairs are insolvable at every scanned prime, so matching is
  // governed by the irrational pair alone.
  ScanReport alone = run({{2, 3}}, 11, 5000);
  CHECK(rep.matching_count == alone.matching_count);
}

TEST_CASE("sign-sensitive disagreement instances scan as predicted") {
  // Sign-extended finite: zero matches.
  ScanReport fin = run({{4, -16}, {4, 8}, {16, -8}}, 5, 100000);
  CHECK(fin.matching_count == 0);
  CHECK(fin.discrepancies.empty());
  // Sign-extended infinite where the literal reading says finite: matching
  // primes exist.
  ScanReport inf = run({{2, -2}, {4, -2}}, 3, 10000);
  CHECK(inf.matching_count > 0);
  CHECK(inf.discrepancies.empty());
}

TEST_CASE("cross_check on the worked examples") {
  auto cs1 = build_conditions({{2, -4}});
  CHECK(cross_check(11, {{2, -4}}, cs1).pass);

  auto cs2 = build_conditions({{8, 32}});
  CHECK(cross_check(7, {{8, 32}}, cs2).pass);
  CHECK(cross_check(5, {{8, 32}}, cs2).pass);  // criterion off, pair solvable

  CHECK_THROWS_AS(cross_check(2, {{2, -4}}, cs1), insolv::pairs::BadPrimeError);
}

TEST_CASE("find_first_match stops at the first matching prime") {
  auto cs = build_conditions({{2, 3}, {3, 5}});
  auto p = find_first_match({{2, 3}, {3, 5}}, cs, 3, 1000000);
  REQUIRE(p.has_value());
  CHECK(*p == 41);  // from the full-scan first_matches list

  auto none = find_first_match(kFiniteExample, build_conditions(kFiniteExample), 5, 50000);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("witness miners reproduce the worked witnesses") {
  auto div = divisibility_witnesses({{2, 12}}, 3, 1000, 5);
  REQUIRE(!div.empty());
  CHECK(div.front() == 13);

  auto indiv = indivisibility_witnesses(2, {2, 3}, 3, 1000, 5);
  REQUIRE(!indiv.empty());
  CHECK(indiv.front() == 23);

  auto gcd = gcd_witnesses({insolv::decide::GcdTriple{2, 4, 12}}, 3, 1000, 10);
  CHECK(std::find(gcd.begin(), gcd.end(), 17) != gcd.end());

  auto div2 = divisibility_witnesses({{2, 3}, {3, 3}}, 3, 1000, 5);
  REQUIRE(!div2.empty());
  CHECK(div2.front() == 7);  // ord_7(2) = 3 and ord_7(3) = 6
}

TEST_CASE("scan argument validation") {
  auto cs = build_conditions({{2, 3}});
  CHECK_THROWS_AS(scan({{2, 3}}, cs, 10, 5), std::invalid_argument);
  CHECK_THROWS_AS(scan({{2, 5}}, cs, 3, 10), std::invalid_argument);  // wrong cs
}
