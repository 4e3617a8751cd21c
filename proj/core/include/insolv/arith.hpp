#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace insolv::arith {

/// Every public entry point bounds its integer inputs by 2^62 in magnitude so
/// that all internal products fit in 128 bits. Exceeding the cap throws.
inline constexpr std::int64_t kMagnitudeCap = std::int64_t{1} << 62;

/// Largest range endpoint accepted by primes_in (segmented enumeration bound).
inline constexpr std::uint64_t kSieveBound = std::uint64_t{1} << 40;

/// sign * prod(prime^exponent) == value, primes strictly ascending.
struct Factorization {
  std::int64_t value = 1;
  int sign = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;

  std::uint64_t magnitude() const {
    return value < 0 ? static_cast<std::uint64_t>(-value)
                     : static_cast<std::uint64_t>(value);
  }
};

/// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime(std::uint64_t n);

/// Trial division to 1e5 followed by Brent's variant of Pollard rho with a
/// fixed parameter schedule, so results are reproducible. Rejects n == 0 and
/// |n| > 2^62.
Factorization factorize(std::int64_t n);

/// v_q(n) for a factored n: the exponent of q, 0 if q does not appear.
int valuation(const Factorization& f, std::uint64_t q);

/// base^exp mod modulus with negative bases reduced canonically first.
/// modulus must lie in [2, 2^62].
std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t modulus);

/// Canonical residue of a in [0, modulus).
std::uint64_t canonical_residue(std::int64_t a, std::uint64_t modulus);

/// ord_p(a): least e >= 1 with a^e == 1 mod p. Throws if p | a.
/// The second overload takes a prefactored p-1 to amortize across bases.
std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p);
std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p,
                                   const Factorization& p_minus_one);

/// Ascending primes in [lo, hi), hi <= 2^40. Memory is O(segment).
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::size_t segment = std::size_t{1} << 16);

/// Exact k-th root: r with r^k == x, or nullopt when none exists.
/// x < 0 with even k is a domain error, distinct from "no root".
std::optional<std::int64_t> int_root(std::int64_t x, int k);

/// base^exp as an exact integer, nullopt once the magnitude cap is exceeded.
std::optional<std::int64_t> checked_pow(std::int64_t base, int exp);

}  // namespace insolv::arith
