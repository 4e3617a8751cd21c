#include "insolv/pairs.hpp"

#include <stdexcept>

#include "insolv/multiplicative.hpp"

namespace insolv::pairs {

namespace {

void check_cap(std::int64_t v, const char* what) {
  if (v > arith::kMagnitudeCap || v < -arith::kMagnitudeCap)
    throw std::invalid_argument(what);
}

/// Least k >= 1 with a^k == b, if any. Only called with |a| >= 2.
std::optional<std::int64_t> power_index(std::int64_t a, std::int64_t b) {
  __int128 acc = 1;
  for (std::int64_t k = 1; k <= 64; ++k) {
    acc *= a;
    if (acc == b) return k;
    if (acc > arith::kMagnitudeCap || acc < -static_cast<__int128>(arith::kMagnitudeCap))
      break;
  }
  return std::nullopt;
}

std::uint64_t least_odd_prime_factor(std::int64_t s) {
  arith::Factorization f = arith::factorize(s);
  for (const auto& [p, e] : f.factors)
    if (p % 2 == 1) return p;
  throw std::logic_error("least_odd_prime_factor: s is a power of two");
}

bool is_power_of_two(std::int64_t s) { return s > 0 && (s & (s - 1)) == 0; }

}  // namespace

PairClass classify_pair(std::int64_t a, std::int64_t b) {
  check_cap(a, "classify_pair: |a| exceeds 2^62");
  check_cap(b, "classify_pair: |b| exceeds 2^62");

  PairClass pc;
  pc.a = a;
  pc.b = b;

  // Trivial: |a| <= 1, b in {0, 1}, or b a positive power of a. Always
  // solvable exactly when b == a^k for some k >= 0 (with a^0 == 1).
  {
    bool small_a = a >= -1 && a <= 1;
    std::optional<std::int64_t> k;
    if (b == 1) {
      k = 0;
    } else if (a == 0) {
      if (b == 0) k = 1;
    } else if (a == 1) {
      // only b == 1, handled above
    } else if (a == -1) {
      if (b == -1) k = 1;
    } else if (b != 0) {
      k = power_index(a, b);
    }
    if (small_a || b == 0 || b == 1 || (k && *k >= 1)) {
      pc.variant = Variant::Trivial;
      pc.trivial_kind = k ? TrivialKind::AlwaysSolvable : TrivialKind::EventuallyInsolvable;
      pc.power_k = k;
      return pc;
    }
  }

  // Odd: b == -a^k for some k >= 0. Here |a| >= 2 and b is not 0 or +-a^j.
  if (b == -1) {
    pc.variant = Variant::Odd;
    pc.power_k = 0;
    return pc;
  }
  if (auto k = power_index(a, -b)) {
    pc.variant = Variant::Odd;
    pc.power_k = *k;
    return pc;
  }

  if (!multgroup::magnitudes_dependent(a, b)) {
    pc.variant = Variant::Irrational;
    return pc;
  }
  multgroup::DependenceShape shape = multgroup::dependence_shape(a, b);

  pc.core = shape.signed_core ? *shape.signed_core : shape.t;
  pc.r = shape.r;
  pc.s = shape.s;
  if (is_power_of_two(shape.s)) {
    pc.variant = shape.negated ? Variant::StronglyEven : Variant::Even;
  } else {
    pc.variant = Variant::Divisible;
    pc.q = least_odd_prime_factor(shape.s);
  }
  return pc;
}

namespace {

void check_good_prime(std::uint64_t p, std::int64_t a, std::int64_t b) {
  if (p < 3) throw BadPrimeError("p must be an odd prime");
  if (a % static_cast<std::int64_t>(p) == 0 || b % static_cast<std::int64_t>(p) == 0)
    throw BadPrimeError("p divides ab");
}

}  // namespace

bool solvable_at(std::uint64_t p, std::int64_t a, std::int64_t b) {
  return solvable_at(p, a, b, arith::factorize(static_cast<std::int64_t>(p - 1)));
}

bool solvable_at(std::uint64_t p, std::int64_t a, std::int64_t b,
                 const arith::Factorization& p_minus_one) {
  check_good_prime(p, a, b);
  std::uint64_t ord_a = arith::multiplicative_order(a, p, p_minus_one);
  std::uint64_t ord_b = arith::multiplicative_order(b, p, p_minus_one);
  return ord_a % ord_b == 0;
}

std::optional<bool> criterion_at(std::uint64_t p, const PairClass& pc) {
  return criterion_at(p, pc, arith::factorize(static_cast<std::int64_t>(p - 1)));
}

std::optional<bool> criterion_at(std::uint64_t p, const PairClass& pc,
                                 const arith::Factorization& p_minus_one) {
  switch (pc.variant) {
    case Variant::Trivial:
    case Variant::Irrational:
      return std::nullopt;
    case Variant::Odd: {
      check_good_prime(p, pc.a, pc.b);
      return arith::multiplicative_order(pc.a, p, p_minus_one) % 2 == 1;
    }
    case Variant::Even: {
      check_good_prime(p, pc.a, pc.b);
      return arith::multiplicative_order(*pc.core, p, p_minus_one) % 2 == 0;
    }
    case Variant::StronglyEven: {
      check_good_prime(p, pc.a, pc.b);
      std::int64_t c2 = *pc.core * *pc.core;
      return arith::multiplicative_order(c2, p, p_minus_one) % 2 == 0;
    }
    case Variant::Divisible: {
      check_good_prime(p, pc.a, pc.b);
      return arith::multiplicative_order(*pc.core, p, p_minus_one) % *pc.q == 0;
    }
  }
  return std::nullopt;
}

}  // namespace insolv::pairs
