#include "insolv/selfcheck.hpp"

#include <algorithm>
#include <set>

#include "insolv/arith.hpp"
#include "insolv/pairs.hpp"

namespace insolv::selfcheck {

namespace {

using pairs::PairClass;
using pairs::Variant;

std::uint64_t naive_order(std::int64_t a, std::uint64_t p) {
  std::uint64_t residue = arith::canonical_residue(a, p);
  std::uint64_t cur = residue, e = 1;
  while (cur != 1) {
    cur = cur * residue % p;
    ++e;
  }
  return e;
}

void add_pairs(std::vector<std::pair<std::int64_t, std::int64_t>>& out,
               std::set<std::pair<std::int64_t, std::int64_t>>& seen, Variant expect,
               std::int64_t a, std::int64_t b) {
  if (!seen.insert({a, b}).second) return;
  PairClass pc = pairs::classify_pair(a, b);
  if (pc.variant != expect) throw std::logic_error("pair_class_corpus: unexpected class");
  out.emplace_back(a, b);
}

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> pair_class_corpus() {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  const std::vector<std::int64_t> cores = {2,  -2, 3,  -3, 5,  -5, 6,  -6,
                                           7,  -7, 10, -10, 11, -11, 13, -13};

  // Odd pairs: b == -a^k.
  for (std::int64_t a : cores)
    for (int k = 0; k <= 3; ++k)
      add_pairs(out, seen, Variant::Odd, a, -*arith::checked_pow(a, k));

  // Even pairs: a == c^s, b == c^r with s a power of two and r odd.
  for (std::int64_t c : cores)
    for (std::int64_t s : {2, 4})
      for (std::int64_t r : {1, 3})
        add_pairs(out, seen, Variant::Even, *arith::checked_pow(c, static_cast<int>(s)),
                  *arith::checked_pow(c, static_cast<int>(r)));

  // Strongly even pairs: a == -c^s.
  for (std::int64_t c : cores)
    for (std::int64_t s : {2, 4})
      for (std::int64_t r : {1, 3})
        add_pairs(out, seen, Variant::StronglyEven,
                  -*arith::checked_pow(c, static_cast<int>(s)),
                  *arith::checked_pow(c, static_cast<int>(r)));

  // Divisible pairs: s has an odd prime factor. The (r even, b < 0) family,
  // where no signed core exists, is included deliberately.
  for (std::int64_t c : {2, -2, 3, -3, 5, -5, 6, 7, 10, 11}) {
    for (auto [s, r] : std::vector<std::pair<int, int>>{
             {3, 1}, {3, 2}, {5, 1}, {5, 2}, {6, 1}, {3, 4}}) {
      std::int64_t a = *arith::checked_pow(c, s);
      std::int64_t b = *arith::checked_pow(c, r);
      add_pairs(out, seen, Variant::Divisible, a, b);
      if (r % 2 == 0 && c > 0)
        add_pairs(out, seen, Variant::Divisible, a, -b);
    }
  }

  // Irrational pairs: non-parallel prime mixes.
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 6, 10, 15, 14, -2, -3, -6, 12, 20, 18})
    for (std::int64_t b : {3, 5, 7, 11, 13, 2, -5, -7, 10, 21})
      if (pairs::classify_pair(a, b).variant == Variant::Irrational)
        add_pairs(out, seen, Variant::Irrational, a, b);

  // Trivial pairs, both kinds.
  for (std::int64_t a : {2, -2, 3, -3, 5, 6, 7, 10, 11, 13, 17, 19, 23, 29}) {
    for (int k = 1; k <= 3; ++k)
      add_pairs(out, seen, Variant::Trivial, a, *arith::checked_pow(a, k));
    add_pairs(out, seen, Variant::Trivial, a, 1);
    add_pairs(out, seen, Variant::Trivial, a, 0);
    add_pairs(out, seen, Variant::Trivial, 1, a);
  }

  for (Variant v : {Variant::Trivial, Variant::Irrational, Variant::Odd,
                    Variant::Divisible, Variant::Even, Variant::StronglyEven}) {
    std::size_t count = 0;
    for (const auto& [a, b] : out)
      if (pairs::classify_pair(a, b).variant == v) ++count;
    if (count < 50) throw std::logic_error("pair_class_corpus: class underfilled");
  }
  return out;
}

SelfCheckReport run_selfcheck(std::uint64_t limit) {
  SelfCheckReport rep;
  limit = std::max<std::uint64_t>(limit, 3);

  {
    CheckEntry e;
    e.name = "order_vs_naive_loop";
    for (std::uint64_t p : arith::primes_in(2, std::min<std::uint64_t>(limit, 1000))) {
      arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
      for (std::int64_t a = 2; a <= 50; ++a) {
        if (a % static_cast<std::int64_t>(p) == 0) continue;
        ++e.cases;
        if (arith::multiplicative_order(a, p, pm1) != naive_order(a, p)) {
          e.pass = false;
          if (e.detail.empty())
            e.detail = "first failure at p=" + std::to_string(p) + " a=" + std::to_string(a);
        }
      }
    }
    rep.entries.push_back(std::move(e));
  }

  {
    CheckEntry e;
    e.name = "solvability_vs_brute_force";
    for (std::uint64_t p : arith::primes_in(3, std::min<std::uint64_t>(limit, 2000))) {
      arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
      std::vector<std::uint8_t> seen(p);
      for (std::int64_t a = -30; a <= 30; ++a) {
        if (a == 0 || a % static_cast<std::int64_t>(p) == 0) continue;
        std::fill(seen.begin(), seen.end(), 0);
        std::uint64_t residue = arith::canonical_residue(a, p);
        std::uint64_t cur = 1;
        do {
          seen[cur] = 1;
          cur = cur * residue % p;
        } while (cur != 1);
        for (std::int64_t b = -30; b <= 30; ++b) {
          if (b == 0 || b % static_cast<std::int64_t>(p) == 0) continue;
          ++e.cases;
          bool brute = seen[arith::canonical_residue(b, p)] != 0;
          if (pairs::solvable_at(p, a, b, pm1) != brute) {
            e.pass = false;
            if (e.detail.empty())
              e.detail = "first failure at p=" + std::to_string(p) + " a=" +
                         std::to_string(a) + " b=" + std::to_string(b);
          }
        }
      }
    }
    rep.entries.push_back(std::move(e));
  }

  {
    CheckEntry e;
    e.name = "criterion_vs_direct";
    auto corpus = pair_class_corpus();
    std::vector<PairClass> classes;
    classes.reserve(corpus.size());
    for (const auto& [a, b] : corpus) classes.push_back(pairs::classify_pair(a, b));
    for (std::uint64_t p : arith::primes_in(3, limit)) {
      arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
      for (const PairClass& pc : classes) {
        if (pc.a % static_cast<std::int64_t>(p) == 0 ||
            pc.b % static_cast<std::int64_t>(p) == 0)
          continue;
        auto crit = pairs::criterion_at(p, pc, pm1);
        if (!crit) continue;
        ++e.cases;
        bool insolvable = !pairs::solvable_at(p, pc.a, pc.b, pm1);
        bool ok = pc.variant == Variant::Divisible ? (!*crit || insolvable)
                                                   : (*crit == insolvable);
        if (!ok) {
          e.pass = false;
          if (e.detail.empty())
            e.detail = "first failure at p=" + std::to_string(p) + " pair=(" +
                       std::to_string(pc.a) + "," + std::to_string(pc.b) + ")";
        }
      }
    }
    rep.entries.push_back(std::move(e));
  }

  for (const auto& e : rep.entries) rep.pass = rep.pass && e.pass;
  return rep;
}

}  // namespace insolv::selfcheck
