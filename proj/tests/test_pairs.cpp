#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "insolv/multiplicative.hpp"
#include "insolv/pairs.hpp"
#include "insolv/selfcheck.hpp"
#include "oracles.hpp"

using namespace insolv::pairs;

TEST_CASE("classify_pair worked examples") {
  PairClass t = classify_pair(2, 8);
  CHECK(t.variant == Variant::Trivial);
  CHECK(t.trivial_kind == TrivialKind::AlwaysSolvable);
  CHECK(t.power_k == 3);

  PairClass o = classify_pair(2, -4);
  CHECK(o.variant == Variant::Odd);
  CHECK(o.power_k == 2);

  CHECK(classify_pair(2, 3).variant == Variant::Irrational);

  PairClass d = classify_pair(8, 32);
  CHECK(d.variant == Variant::Divisible);
  CHECK(d.core == 2);
  CHECK(d.r == 5);
  CHECK(d.s == 3);
  CHECK(d.q == 3);

  PairClass e = classify_pair(4, 2);
  CHECK(e.variant == Variant::Even);
  CHECK(e.core == 2);
  CHECK(e.r == 1);
  CHECK(e.s == 2);

  PairClass se = classify_pair(-4, 2);
  CHECK(se.variant == Variant::StronglyEven);
  CHECK(se.core == 2);
  CHECK(se.r == 1);
  CHECK(se.s == 2);

  PairClass ei = classify_pair(1, 5);
  CHECK(ei.variant == Variant::Trivial);
  CHECK(ei.trivial_kind == TrivialKind::EventuallyInsolvable);
}

TEST_CASE("classify_pair corner cases") {
  CHECK(classify_pair(0, 0).trivial_kind == TrivialKind::AlwaysSolvable);
  CHECK(classify_pair(0, 1).trivial_kind == TrivialKind::AlwaysSolvable);
  CHECK(classify_pair(0, 5).trivial_kind == TrivialKind::EventuallyInsolvable);
  CHECK(classify_pair(-1, -1).trivial_kind == TrivialKind::AlwaysSolvable);
  CHECK(classify_pair(-1, 5).trivial_kind == TrivialKind::EventuallyInsolvable);
  CHECK(classify_pair(7, 1).trivial_kind == TrivialKind::AlwaysSolvable);
  CHECK(classify_pair(7, 0).trivial_kind == TrivialKind::EventuallyInsolvable);
  CHECK(classify_pair(5, -1).variant == Variant::Odd);   // k = 0
  CHECK(classify_pair(-2, 2).variant == Variant::Odd);   // k = 1
  CHECK(classify_pair(-2, -8).trivial_kind == TrivialKind::AlwaysSolvable);  // (-2)^3
  // No signed core exists, the magnitude core stands in.
  PairClass noc = classify_pair(8, -4);
  CHECK(noc.variant == Variant::Divisible);
  CHECK(noc.core == 2);
  CHECK(noc.q == 3);
  CHECK_THROWS_AS(classify_pair((std::int64_t{1} << 62) + 1, 2), std::invalid_argument);
}

TEST_CASE("classify_pair is exhaustive and identities re-verify") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10000; ++t) {
    std::int64_t a = static_cast<std::int64_t>(rng() % 201) - 100;
    std::int64_t b = static_cast<std::int64_t>(rng() % 201) - 100;
    PairClass pc = classify_pair(a, b);
    switch (pc.variant) {
      case Variant::Trivial:
        if (pc.trivial_kind == TrivialKind::AlwaysSolvable) {
          REQUIRE(pc.power_k.has_value());
          if (*pc.power_k == 0) {
            CHECK(b == 1);
          } else {
            CHECK(insolv::arith::checked_pow(a, static_cast<int>(*pc.power_k)) == b);
          }
        } else {
          CHECK((a >= -1 && a <= 1 ? true : (b == 0 || b == 1)));
        }
        break;
      case Variant::Odd: {
        REQUIRE(pc.power_k.has_value());
        CHECK(insolv::arith::checked_pow(a, static_cast<int>(*pc.power_k)) == -b);
        break;
      }
      case Variant::Irrational:
        CHECK_FALSE(insolv::multgroup::magnitudes_dependent(a, b));
        break;
      case Variant::Even:
      case Variant::StronglyEven: {
        REQUIRE(pc.core.has_value());
        std::int64_t s = *pc.s;
        CHECK((s & (s - 1)) == 0);
        CHECK(std::gcd(*pc.r, *pc.s) == 1);
        auto br = insolv::arith::checked_pow(*pc.core, static_cast<int>(*pc.r));
        auto as = insolv::arith::checked_pow(*pc.core, static_cast<int>(*pc.s));
        CHECK(*br == b);
        CHECK(*as == (pc.variant == Variant::StronglyEven ? -a : a));
        break;
      }
      case Variant::Divisible: {
        REQUIRE(pc.q.has_value());
        CHECK(*pc.s % static_cast<std::int64_t>(*pc.q) == 0);
        CHECK(*pc.q % 2 == 1);
        CHECK(std::gcd(*pc.r, *pc.s) == 1);
        // Magnitude identities always hold, sign identities when a core exists.
        __int128 bs = 1, ar = 1;
        for (std::int64_t i = 0; i < *pc.s; ++i) bs *= b < 0 ? -b : b;
        for (std::int64_t i = 0; i < *pc.r; ++i) ar *= a < 0 ? -a : a;
        CHECK(bs == ar);
        break;
      }
    }
  }
}

TEST_CASE("powers of a never reach the dependent branches") {
  for (std::int64_t a = -10; a <= 10; ++a)
    for (int k = 1; k <= 5; ++k) {
      auto b = insolv::arith::checked_pow(a, k);
      if (!b) continue;
      CHECK(classify_pair(a, *b).variant == Variant::Trivial);
    }
}

TEST_CASE("solvable_at worked examples") {
  CHECK(solvable_at(7, 2, 4));
  CHECK_FALSE(solvable_at(7, 4, 3));
  CHECK(solvable_at(11, 2, -4));  // 2^7 = 128 = -4 (mod 11)
  CHECK_THROWS_AS(solvable_at(2, 3, 5), BadPrimeError);
  CHECK_THROWS_AS(solvable_at(7, 14, 3), BadPrimeError);
  CHECK_THROWS_AS(solvable_at(7, 3, 21), BadPrimeError);
}

TEST_CASE("solvable_at equals brute-force exponent search") {
  for (std::uint64_t p : oracles::simple_sieve(500)) {
    if (p == 2) continue;
    auto pm1 = insolv::arith::factorize(static_cast<std::int64_t>(p - 1));
    for (std::int64_t a = -30; a <= 30; ++a) {
      if (a == 0 || a % static_cast<std::int64_t>(p) == 0) continue;
      for (std::int64_t b = -30; b <= 30; ++b) {
        if (b == 0 || b % static_cast<std::int64_t>(p) == 0) continue;
        CHECK(solvable_at(p, a, b, pm1) == oracles::brute_solvable(p, a, b));
      }
    }
  }
}

TEST_CASE("criterion_at worked examples") {
  auto pm7 = insolv::arith::factorize(6);
  auto odd = classify_pair(2, -4);
  CHECK(criterion_at(7, odd, pm7) == true);  // ord_7(2) = 3 is odd
  CHECK_FALSE(solvable_at(7, 2, -4, pm7));

  auto even = classify_pair(4, 2);
  auto pm5 = insolv::arith::factorize(4);
  CHECK(criterion_at(5, even, pm5) == true);  // ord_5(2) = 4 is even
  CHECK_FALSE(solvable_at(5, 4, 2, pm5));

  auto strong = classify_pair(-4, 2);
  auto pm13 = insolv::arith::factorize(12);
  CHECK(criterion_at(13, strong, pm13) == true);  // ord_13(4) = 6 is even
  CHECK_FALSE(solvable_at(13, -4, 2, pm13));

  auto div = classify_pair(8, 32);
  CHECK(criterion_at(5, div, pm5) == false);  // 3 does not divide ord_5(2) = 4
  CHECK(solvable_at(5, 8, 32, pm5));          // and indeed solvable

  CHECK_FALSE(criterion_at(7, classify_pair(2, 3), pm7).has_value());
  CHECK_FALSE(criterion_at(7, classify_pair(2, 8), pm7).has_value());
  CHECK_THROWS_AS(criterion_at(2, odd), BadPrimeError);
}

TEST_CASE("criteria match direct solvability on the corpus") {
  auto corpus = insolv::selfcheck::pair_class_corpus();
  std::vector<PairClass> classes;
  for (const auto& [a, b] : corpus) classes.push_back(classify_pair(a, b));

  for (std::uint64_t p : oracles::simple_sieve(1000)) {
    if (p == 2) continue;
    auto pm1 = insolv::arith::factorize(static_cast<std::int64_t>(p - 1));
    for (const auto& pc : classes) {
      if (pc.a % static_cast<std::int64_t>(p) == 0 ||
          pc.b % static_cast<std::int64_t>(p) == 0)
        continue;
      auto crit = criterion_at(p, pc, pm1);
      if (!crit) continue;
      bool insolvable = !solvable_at(p, pc.a, pc.b, pm1);
      if (pc.variant == Variant::Divisible) {
        if (*crit) CHECK(insolvable);
      } else {
        CHECK(*crit == insolvable);
      }
    }
  }
}
