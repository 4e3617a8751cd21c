#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "insolv/reduction.hpp"

namespace insolv::decide {

/// Thrown when the exhaustive search space 2^(M*O) exceeds the cap; the
/// solver never guesses beyond it.
struct SolverCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  std::uint64_t cap = std::uint64_t{1} << 24;
  std::uint64_t preflight_samples = 10000;
  std::uint64_t seed = 1;
};

/// Lexicographically first witness in (Z/2^M)^O satisfying every row
/// strictly, or nullopt after exhaustive enumeration. A seeded randomized
/// preflight runs first as a consistency probe; exhaustion is the only way
/// absence is declared, and a preflight hit with an empty exhaustion is a
/// hard internal error.
std::optional<std::vector<std::uint64_t>> solve_system(
    const reduction::IncongruenceSystem& sys, const SolverOptions& opts = {});

enum class Outcome { Infinite, Finite };

enum class FiniteReason { TrivialAlwaysSolvable, MinusOneProduct, UnsolvableSystem };

struct Verdict {
  Outcome outcome = Outcome::Finite;
  std::optional<FiniteReason> reason;
  std::optional<std::vector<std::uint64_t>> witness;
  reduction::ConditionSet conditions;
  std::optional<reduction::IncongruenceSystem> system;
  reduction::Mode mode = reduction::Mode::SignExtended;
};

/// End-to-end decision: are there infinitely many primes p for which none of
/// a_i^x == b_i (mod p) is solvable? Irrational and divisible pairs are
/// carried for the scanner but never affect the outcome.
Verdict decide(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
               reduction::Mode mode = reduction::Mode::SignExtended,
               const SolverOptions& opts = {});

struct IndivisibilityResult {
  bool satisfiable = true;
  std::vector<std::int64_t> certificate;  // -1 product exponents when unsat
};

/// q odd: always satisfiable. q == 2: satisfiable iff no product of the
/// bases equals -1; the exponent vector is returned as the certificate
/// otherwise.
IndivisibilityResult decide_indivisibility(std::uint64_t q,
                                           const std::vector<std::int64_t>& bases);

struct DivisibilityResult {
  // (|a|, m) with m doubled for negative a; the conditions actually imposed.
  std::vector<std::pair<std::int64_t, std::int64_t>> normalized;
  // Insolvability encoding: one pair (a^(q^k), a^(q^(k-1))) per prime power
  // q^k dividing m exactly.
  std::vector<std::pair<std::int64_t, std::int64_t>> encoded_pairs;
};

/// Always satisfiable for |a| > 1; returns the congruence-pair encoding.
DivisibilityResult decide_divisibility(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& reqs);

struct GcdTriple {
  std::int64_t a = 0;
  std::uint64_t g = 1;
  std::uint64_t m = 1;
};

struct GcdSplit {
  std::uint64_t q = 2;
  std::vector<GcdTriple> conditions;  // (a_i, q^{v_q(m_i)}, q^{v_q(g_i)})
};

/// Decompose gcd(ord_p(a_i), m_i) == g_i into one condition list per prime
/// dividing some m_i. Primes absent from every m_i are omitted.
std::vector<GcdSplit> split_gcd(const std::vector<GcdTriple>& triples);

}  // namespace insolv::decide
