#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "insolv/multiplicative.hpp"
#include "insolv/pairs.hpp"

namespace insolv::reduction {

enum class Mode { Literal, SignExtended };

enum class EarlyVerdict {
  Never,            // some pair is solvable for every large prime
  MinusOneProduct,  // the odd-order requirements already force a contradiction
};

/// The reduced order conditions extracted from a list of pairs:
///   odd_list       elements whose orders must be odd (post odd-basis, so
///                  multiplicatively independent)
///   even_list      cores of even pairs and squared cores of strongly even
///                  pairs, whose orders must be even
///   divisible_list (core, q): q must divide ord_p(core)
///   irrational_list independent pairs, checked directly by the scanner
///   bad_primes     primes excluded from every per-prime statement
/// The pre-reduction odd elements and their odd-power certificates over the
/// selected basis are retained.
struct ConditionSet {
  std::vector<multgroup::SignedFactored> odd_list;
  std::vector<multgroup::SignedFactored> odd_original;
  std::vector<multgroup::OddBasisCertificate> odd_certificates;
  std::vector<multgroup::SignedFactored> even_list;
  std::vector<std::pair<std::int64_t, std::uint64_t>> divisible_list;
  std::vector<std::pair<std::int64_t, std::int64_t>> irrational_list;
  std::vector<std::uint64_t> bad_primes;  // sorted ascending
  std::optional<EarlyVerdict> early_verdict;
  std::vector<std::int64_t> minus_one_exponents;  // over odd_original
  std::vector<std::pair<std::int64_t, std::int64_t>> dropped_trivial;
  std::vector<pairs::PairClass> classes;  // one per input pair, input order
};

ConditionSet build_conditions(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& prs);

/// One incongruence: sum coeffs[i] * x[i] + offset != 0 (mod 2^modulus_log2).
struct Row {
  std::vector<std::uint64_t> coeffs;
  std::uint64_t offset = 0;
  std::int64_t source = 0;  // the even-list element this row encodes
};

struct IncongruenceSystem {
  int modulus_log2 = 1;
  Mode mode = Mode::SignExtended;
  std::size_t num_vars = 0;                // one variable per odd_list element
  std::vector<Row> rows;                   // one per A-member, even_list order
  std::vector<std::int64_t> b_members;     // even elements outside the span
};

/// Builds the incongruence system over Z/2^M. A is the set of even elements
/// whose magnitude-exponent vector lies in the rational span of the odd
/// basis; membership ignores signs. In Literal mode offsets are zero. In
/// SignExtended mode each row carries offset 2^(M-1) * (s_a - sum f_i s_i)
/// reduced mod 2^M, where s_a and s_i are the sign bits of the source and of
/// the odd basis elements; M is minimal such that every 2^M f(a)_i and every
/// offset term has an odd denominator. On all-positive inputs the two modes
/// produce identical systems.
IncongruenceSystem build_system(const ConditionSet& cs, Mode mode);

}  // namespace insolv::reduction
