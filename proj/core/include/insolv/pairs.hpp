#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "insolv/arith.hpp"

namespace insolv::pairs {

enum class Variant { Trivial, Irrational, Odd, Divisible, Even, StronglyEven };

enum class TrivialKind { AlwaysSolvable, EventuallyInsolvable };

/// Classification of an integer pair (a, b) by the shape of the multiplicative
/// dependence between a and b. Exactly one variant applies to every pair
/// within the magnitude bounds.
struct PairClass {
  Variant variant = Variant::Trivial;
  std::int64_t a = 0;
  std::int64_t b = 0;

  std::optional<TrivialKind> trivial_kind;  // Trivial only
  std::optional<std::int64_t> power_k;      // Trivial: b == a^k; Odd: b == -a^k

  std::optional<std::int64_t> core;  // Divisible / Even / StronglyEven
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::uint64_t> q;    // Divisible: least odd prime factor of s
};

/// Precedence: trivial, then odd, then irrational, then the dependent
/// variants split on whether s is a power of two and on the sign case.
PairClass classify_pair(std::int64_t a, std::int64_t b);

/// Thrown when a prime divides 2ab; every per-prime test assumes p does not.
struct BadPrimeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Whether a^x == b (mod p) has a solution x >= 0, decided by the order test
/// ord_p(b) | ord_p(a). Requires p odd, p not dividing ab.
bool solvable_at(std::uint64_t p, std::int64_t a, std::int64_t b);
bool solvable_at(std::uint64_t p, std::int64_t a, std::int64_t b,
                 const arith::Factorization& p_minus_one);

/// The order-theoretic insolvability criterion at p, when one applies:
///   Odd           insolvable iff ord_p(a) odd          (exact)
///   Even          insolvable iff ord_p(c) even         (exact)
///   StronglyEven  insolvable iff ord_p(c^2) even       (exact)
///   Divisible     insolvable if q | ord_p(c)           (sufficient only)
/// Trivial and Irrational pairs have no order criterion (nullopt).
std::optional<bool> criterion_at(std::uint64_t p, const PairClass& pc);
std::optional<bool> criterion_at(std::uint64_t p, const PairClass& pc,
                                 const arith::Factorization& p_minus_one);

}  // namespace insolv::pairs
