#include "insolv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace insolv::arith {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
  std::uint64_t x = pow_mod_u64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Small primes for trial division, built once.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t bound = 100000;
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's cycle-finding variant with batched gcds. The parameter schedule is
// fixed (x0 = 2, c = 1, 2, 3, ...) so factorizations are reproducible.
std::uint64_t pollard_rho_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = 2, r = 1;
    constexpr std::uint64_t batch = 128;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && d == 1; k += batch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This base set is exact for every n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

Factorization factorize(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  if (n > kMagnitudeCap || n < -kMagnitudeCap)
    throw std::invalid_argument("factorize: |n| exceeds 2^62");

  Factorization result;
  result.value = n;
  result.sign = n < 0 ? -1 : 1;

  std::uint64_t m = result.magnitude();
  std::map<std::uint64_t, int> acc;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) break;
    while (m % p == 0) {
      m /= p;
      ++acc[p];
    }
  }
  if (m > 1) {
    constexpr std::uint64_t trial_limit = 100000;
    if (m < trial_limit * trial_limit || is_prime(m)) {
      ++acc[m];  // no factor <= 1e5 and m < 1e10 implies m is prime
    } else {
      factor_into(m, acc);
    }
  }
  result.factors.assign(acc.begin(), acc.end());
  return result;
}

int valuation(const Factorization& f, std::uint64_t q) {
  for (const auto& [p, e] : f.factors)
    if (p == q) return e;
  return 0;
}

std::uint64_t canonical_residue(std::int64_t a, std::uint64_t modulus) {
  std::int64_t m = static_cast<std::int64_t>(modulus);
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
  if (modulus > static_cast<std::uint64_t>(kMagnitudeCap))
    throw std::invalid_argument("mod_pow: modulus exceeds 2^62");
  return pow_mod_u64(canonical_residue(base, modulus), exp, modulus);
}

std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("multiplicative_order: p must be >= 2");
  return multiplicative_order(a, p, factorize(static_cast<std::int64_t>(p - 1)));
}

std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p,
                                   const Factorization& p_minus_one) {
  if (p < 2) throw std::invalid_argument("multiplicative_order: p must be >= 2");
  std::uint64_t residue = canonical_residue(a, p);
  if (residue == 0) throw std::domain_error("multiplicative_order: p divides a");
  if (p == 2) return 1;

  std::uint64_t order = p - 1;
  for (const auto& [q, e] : p_minus_one.factors) {
    for (int i = 0; i < e; ++i) {
      if (order % q != 0) break;
      if (pow_mod_u64(residue, order / q, p) == 1)
        order /= q;
      else
        break;
    }
  }
  return order;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::size_t segment) {
  if (lo > hi) throw std::invalid_argument("primes_in: lo > hi");
  if (hi > kSieveBound) throw std::invalid_argument("primes_in: hi exceeds 2^40");
  if (segment == 0) throw std::invalid_argument("primes_in: segment must be positive");

  std::vector<std::uint64_t> out;
  if (hi <= 2) return out;
  std::uint64_t start = std::max<std::uint64_t>(lo, 2);

  // Base primes up to sqrt(hi - 1).
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi - 1)));
  while ((root + 1) * (root + 1) <= hi - 1) ++root;
  while (root > 1 && root * root > hi - 1) --root;
  std::vector<bool> base_composite(root + 1, false);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (base_composite[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) base_composite[j] = true;
  }

  std::vector<std::uint8_t> flags;
  for (std::uint64_t low = start; low < hi; low += segment) {
    std::uint64_t high = std::min<std::uint64_t>(low + segment, hi);
    flags.assign(static_cast<std::size_t>(high - low), 1);
    for (std::uint64_t q : base) {
      std::uint64_t first = std::max(q * q, (low + q - 1) / q * q);
      for (std::uint64_t j = first; j < high; j += q) flags[j - low] = 0;
    }
    for (std::uint64_t n = low; n < high; ++n) {
      if (flags[n - low] && n >= 2) out.push_back(n);
    }
  }
  return out;
}

std::optional<std::int64_t> checked_pow(std::int64_t base, int exp) {
  if (exp < 0) return std::nullopt;
  __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > kMagnitudeCap || acc < -static_cast<__int128>(kMagnitudeCap))
      return std::nullopt;
  }
  return static_cast<std::int64_t>(acc);
}

std::optional<std::int64_t> int_root(std::int64_t x, int k) {
  if (k < 1) throw std::invalid_argument("int_root: k must be >= 1");
  if (x < 0 && k % 2 == 0)
    throw std::domain_error("int_root: negative x with even k");
  if (x > kMagnitudeCap || x < -kMagnitudeCap)
    throw std::invalid_argument("int_root: |x| exceeds 2^62");
  if (k == 1 || x == 0 || x == 1 || x == -1) return x;

  std::uint64_t mag = x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x);
  std::int64_t guess = static_cast<std::int64_t>(
      std::llround(std::pow(static_cast<double>(mag), 1.0 / k)));
  for (std::int64_t r = std::max<std::int64_t>(guess - 2, 0); r <= guess + 2; ++r) {
    auto p = checked_pow(r, k);
    if (p && static_cast<std::uint64_t>(*p) == mag)
      return x < 0 ? -r : r;
  }
  return std::nullopt;
}

}  // namespace insolv::arith
