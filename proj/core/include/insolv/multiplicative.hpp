#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "insolv/exact_linalg.hpp"

namespace insolv::multgroup {

/// A nonzero integer (or formal quotient of integers) as a sign bit plus a
/// prime -> exponent map. The map never stores zero exponents. Two values
/// compare equal iff their sign bits and exponent maps are equal; the
/// provenance value is carried for reporting only.
struct SignedFactored {
  bool negative = false;
  std::map<std::uint64_t, std::int64_t> exponents;
  std::optional<std::int64_t> value;

  friend bool operator==(const SignedFactored& a, const SignedFactored& b) {
    return a.negative == b.negative && a.exponents == b.exponents;
  }
};

/// Canonical representation of a nonzero integer, |n| <= 2^62.
SignedFactored signed_factored(std::int64_t n);

/// Sorted union of the primes appearing in any of the inputs.
std::vector<std::uint64_t> prime_support(const std::vector<SignedFactored>& xs);

/// Magnitude-exponent matrix: one row per prime (in the given order), one
/// column per element. Sign bits are not represented.
exactla::IntMatrix exponent_matrix(const std::vector<SignedFactored>& xs,
                                   const std::vector<std::uint64_t>& primes);

/// Exponents e with prod gens[i]^e[i] == -1, or nullopt when -1 is not in the
/// generated group. Decided on the kernel lattice of the magnitude-exponent
/// matrix: -1 is reachable iff the sign-parity functional is nonzero there.
/// The returned witness is verified exactly before being returned.
std::optional<std::vector<std::int64_t>> has_minus_one_product(
    const std::vector<SignedFactored>& gens);

struct OddBasisCertificate {
  std::int64_t x = 1;                   // odd
  std::vector<std::int64_t> exponents;  // over the selected basis, basis order
};

struct OddBasis {
  std::vector<std::size_t> basis_indices;          // into the input list
  std::vector<OddBasisCertificate> certificates;   // one per input generator
};

/// A multiplicatively independent subset S of gens such that every generator
/// satisfies gens[i]^x == prod_{s in S} s^{f(s)} with x odd, together with
/// those certificates. Selection is greedy on images in H/2H, where H is the
/// group generated by gens inside {+-1} x Z^(primes); H is torsion-free
/// because no product of the generators equals -1 (checked, throws if it
/// does, or if any generator is +-1). Every certificate is re-verified as an
/// exact identity before returning.
OddBasis odd_basis(const std::vector<SignedFactored>& gens);

struct SpanCoordinates {
  std::vector<exactla::Rational> coords;  // |target| == prod |basis_i|^coords_i
  bool target_negative = false;           // raw sign bit; callers do sign math
};

/// The unique rational coordinates of |target| over the magnitudes of a
/// multiplicatively independent basis, or nullopt when |target| is outside
/// the rational span. Sign arithmetic is deliberately deferred to callers.
std::optional<SpanCoordinates> express_in_span(
    const SignedFactored& target, const std::vector<SignedFactored>& basis);

/// Shape of a dependent pair: |a| == t^s, |b| == t^r with t > 1 and
/// gcd(r, s) = 1. signed_core is the integer c with b == c^r and
/// a == (negated ? -1 : 1) * c^s when such a c exists; for r even with b < 0
/// there is none. negated records whether b^s == -a^r (else b^s == a^r).
struct DependenceShape {
  std::int64_t t = 0;  // positive magnitude core
  std::int64_t r = 1;
  std::int64_t s = 1;
  bool negated = false;
  std::optional<std::int64_t> signed_core;
};

/// Throws for independent pairs and for pairs with s == 1 (those are trivial
/// or odd, with distinct messages).
DependenceShape dependence_shape(std::int64_t a, std::int64_t b);

/// True when the exponent vectors of |a| and |b| are parallel, i.e. the pair
/// is multiplicatively dependent. Requires |a| > 1 and |b| > 1.
bool magnitudes_dependent(std::int64_t a, std::int64_t b);

struct Core {
  std::int64_t c = 0;
  std::int64_t r = 1;
  std::int64_t s = 1;
  bool negated = false;  // true: b^s == -a^r and a == -c^s
};

/// The signed core of a dependent pair, identities re-verified exactly.
/// Distinct errors for independent, trivial, odd, and core-less inputs.
Core core_of(std::int64_t a, std::int64_t b);

}  // namespace insolv::multgroup
