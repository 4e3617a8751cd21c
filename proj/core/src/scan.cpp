#include "insolv/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "insolv/arith.hpp"
#include "insolv/pairs.hpp"

namespace insolv::scan {

namespace {

using pairs::PairClass;
using pairs::TrivialKind;
using pairs::Variant;

struct PairPlan {
  PairClass pc;
  int a_base = -1, b_base = -1;  // direct order test
  int crit_base = -1;            // order criterion base, -1 when none
};

struct Plan {
  std::vector<std::int64_t> bases;
  std::vector<PairPlan> pair_plans;
  std::vector<int> odd_bases;                        // tally order: odd...
  std::vector<int> even_bases;                       // ...then even...
  std::vector<std::pair<int, std::uint64_t>> div_conds;   // ...divisible...
  std::vector<std::pair<int, int>> irr_conds;             // ...irrational
  const std::vector<std::uint64_t>* bad = nullptr;
  // An always-solvable pair decouples "conditions hold" from "all pairs
  // insolvable"; the cross-implication checks only apply without one.
  bool has_always_solvable = false;
  std::size_t tally_size() const {
    return odd_bases.size() + even_bases.size() + div_conds.size() + irr_conds.size();
  }
};

int base_index(std::vector<std::int64_t>& bases, std::map<std::int64_t, int>& seen,
               std::int64_t v) {
  auto it = seen.find(v);
  if (it != seen.end()) return it->second;
  int idx = static_cast<int>(bases.size());
  bases.push_back(v);
  seen.emplace(v, idx);
  return idx;
}

Plan build_plan(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
                const reduction::ConditionSet& cs) {
  if (cs.classes.size() != prs.size())
    throw std::invalid_argument("scan: condition set was not built from these pairs");
  for (std::size_t i = 0; i < prs.size(); ++i)
    if (cs.classes[i].a != prs[i].first || cs.classes[i].b != prs[i].second)
      throw std::invalid_argument("scan: condition set was not built from these pairs");

  Plan plan;
  plan.bad = &cs.bad_primes;
  std::map<std::int64_t, int> seen;

  for (std::size_t i = 0; i < prs.size(); ++i) {
    PairPlan pp;
    pp.pc = cs.classes[i];
    if (pp.pc.variant == Variant::Trivial) {
      if (pp.pc.trivial_kind == TrivialKind::AlwaysSolvable)
        plan.has_always_solvable = true;
    } else {
      pp.a_base = base_index(plan.bases, seen, pp.pc.a);
      pp.b_base = base_index(plan.bases, seen, pp.pc.b);
    }
    switch (pp.pc.variant) {
      case Variant::Odd:
        pp.crit_base = pp.a_base;
        break;
      case Variant::Even:
        pp.crit_base = base_index(plan.bases, seen, *pp.pc.core);
        break;
      case Variant::StronglyEven:
        pp.crit_base = base_index(plan.bases, seen, *pp.pc.core * *pp.pc.core);
        break;
      case Variant::Divisible:
        pp.crit_base = base_index(plan.bases, seen, *pp.pc.core);
        break;
      default:
        break;
    }
    plan.pair_plans.push_back(std::move(pp));
  }

  for (const auto& o : cs.odd_list)
    plan.odd_bases.push_back(base_index(plan.bases, seen, o.value.value()));
  for (const auto& e : cs.even_list)
    plan.even_bases.push_back(base_index(plan.bases, seen, e.value.value()));
  for (const auto& [c, q] : cs.divisible_list)
    plan.div_conds.emplace_back(base_index(plan.bases, seen, c), q);
  for (const auto& [a, b] : cs.irrational_list)
    plan.irr_conds.emplace_back(base_index(plan.bases, seen, a),
                                base_index(plan.bases, seen, b));
  return plan;
}

bool trivial_solvable(const PairClass& pc, std::uint64_t p) {
  if (pc.trivial_kind == TrivialKind::AlwaysSolvable) return true;
  auto divides = [p](std::int64_t v) { return v % static_cast<std::int64_t>(p) == 0; };
  if (pc.a == 0) return divides(pc.b) || divides(pc.b - 1);
  if (pc.a == 1) return divides(pc.b - 1);
  if (pc.a == -1) return divides(pc.b - 1) || divides(pc.b + 1);
  if (pc.b == 0) return divides(pc.a);
  throw std::logic_error("trivial_solvable: unexpected trivial shape");
}

struct PrimeEval {
  bool matching = false;
  bool cond_match = false;
  std::vector<std::uint8_t> cond_values;
  std::vector<std::string> problems;  // per-prime discrepancy descriptions
};

std::vector<std::uint64_t> base_orders(const Plan& plan, std::uint64_t p,
                                       const arith::Factorization& pm1) {
  std::vector<std::uint64_t> orders(plan.bases.size());
  for (std::size_t i = 0; i < plan.bases.size(); ++i)
    orders[i] = arith::multiplicative_order(plan.bases[i], p, pm1);
  return orders;
}

std::vector<std::uint8_t> direct_insolvable(const Plan& plan, std::uint64_t p,
                                            const std::vector<std::uint64_t>& orders) {
  std::vector<std::uint8_t> out(plan.pair_plans.size());
  for (std::size_t i = 0; i < plan.pair_plans.size(); ++i) {
    const PairPlan& pp = plan.pair_plans[i];
    bool solvable;
    if (pp.pc.variant == Variant::Trivial) {
      solvable = trivial_solvable(pp.pc, p);
    } else {
      solvable = orders[pp.a_base] % orders[pp.b_base] == 0;
    }
    out[i] = !solvable;
  }
  return out;
}

PrimeEval evaluate_prime(const Plan& plan, std::uint64_t p,
                         const arith::Factorization& pm1, bool full) {
  PrimeEval ev;
  std::vector<std::uint64_t> orders = base_orders(plan, p, pm1);
  std::vector<std::uint8_t> insolvable = direct_insolvable(plan, p, orders);
  ev.matching = std::all_of(insolvable.begin(), insolvable.end(),
                            [](std::uint8_t v) { return v != 0; });
  if (!full) return ev;

  ev.cond_values.reserve(plan.tally_size());
  bool all = true;
  for (int b : plan.odd_bases) ev.cond_values.push_back(orders[b] % 2 == 1);
  for (int b : plan.even_bases) ev.cond_values.push_back(orders[b] % 2 == 0);
  for (const auto& [b, q] : plan.div_conds) ev.cond_values.push_back(orders[b] % q == 0);
  for (const auto& [ab, bb] : plan.irr_conds)
    ev.cond_values.push_back(orders[ab] % orders[bb] != 0);
  for (std::uint8_t v : ev.cond_values) all = all && v;
  ev.cond_match = all;

  // Criterion cross-checks: exact criteria must match the direct test, the
  // divisible criterion may only ever fire on insolvable pairs.
  for (std::size_t i = 0; i < plan.pair_plans.size(); ++i) {
    const PairPlan& pp = plan.pair_plans[i];
    bool ins = insolvable[i] != 0;
    switch (pp.pc.variant) {
      case Variant::Trivial: {
        bool expect_insolvable = pp.pc.trivial_kind == TrivialKind::EventuallyInsolvable;
        if (ins != expect_insolvable)
          ev.problems.push_back("trivial pair " + std::to_string(pp.pc.a) + "," +
                                std::to_string(pp.pc.b) + ": direct test contradicts class");
        break;
      }
      case Variant::Odd:
        if ((orders[pp.crit_base] % 2 == 1) != ins)
          ev.problems.push_back("odd pair " + std::to_string(pp.pc.a) + "," +
                                std::to_string(pp.pc.b) + ": criterion != direct");
        break;
      case Variant::Even:
        if ((orders[pp.crit_base] % 2 == 0) != ins)
          ev.problems.push_back("even pair " + std::to_string(pp.pc.a) + "," +
                                std::to_string(pp.pc.b) + ": criterion != direct");
        break;
      case Variant::StronglyEven:
        if ((orders[pp.crit_base] % 2 == 0) != ins)
          ev.problems.push_back("strongly even pair " + std::to_string(pp.pc.a) + "," +
                                std::to_string(pp.pc.b) + ": criterion != direct");
        break;
      case Variant::Divisible:
        if (orders[pp.crit_base] % *pp.pc.q == 0 && !ins)
          ev.problems.push_back("divisible pair " + std::to_string(pp.pc.a) + "," +
                                std::to_string(pp.pc.b) + ": criterion fired on solvable");
        break;
      case Variant::Irrational:
        break;
    }
  }

  if (!plan.has_always_solvable) {
    if (ev.cond_match && !ev.matching)
      ev.problems.push_back("reduced conditions hold but some pair is solvable");
    if (plan.div_conds.empty() && ev.cond_match != ev.matching)
      ev.problems.push_back("exact condition set disagrees with direct matching");
  }
  return ev;
}

struct ChunkOut {
  std::uint64_t primes = 0, bad = 0, match = 0, cond = 0;
  std::vector<std::uint64_t> firsts;
  std::vector<std::uint64_t> cond_counts;
  std::vector<Discrepancy> disc;
};

ChunkOut process_chunk(const Plan& plan, std::uint64_t lo, std::uint64_t hi) {
  ChunkOut out;
  out.cond_counts.assign(plan.tally_size(), 0);
  for (std::uint64_t p : arith::primes_in(lo, hi)) {
    if (std::binary_search(plan.bad->begin(), plan.bad->end(), p)) {
      ++out.bad;
      continue;
    }
    ++out.primes;
    arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
    PrimeEval ev = evaluate_prime(plan, p, pm1, true);
    if (ev.matching) {
      ++out.match;
      if (out.firsts.size() < 100) out.firsts.push_back(p);
    }
    if (ev.cond_match) ++out.cond;
    for (std::size_t i = 0; i < ev.cond_values.size(); ++i)
      out.cond_counts[i] += ev.cond_values[i];
    for (auto& msg : ev.problems) out.disc.push_back(Discrepancy{p, std::move(msg)});
  }
  return out;
}

}  // namespace

ScanReport scan(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
                const reduction::ConditionSet& cs, std::uint64_t lo, std::uint64_t hi,
                const Options& opts) {
  if (lo > hi) throw std::invalid_argument("scan: lo > hi");
  if (hi > arith::kSieveBound) throw std::invalid_argument("scan: hi exceeds 2^40");
  if (opts.chunk == 0) throw std::invalid_argument("scan: chunk must be positive");

  Plan plan = build_plan(prs, cs);
  std::uint64_t span = hi - lo;
  std::uint64_t n_chunks = span == 0 ? 0 : (span + opts.chunk - 1) / opts.chunk;

  std::vector<ChunkOut> results(n_chunks);
  int workers = std::max(1, opts.workers);
  if (workers == 1 || n_chunks <= 1) {
    for (std::uint64_t i = 0; i < n_chunks; ++i) {
      std::uint64_t clo = lo + i * opts.chunk;
      results[i] = process_chunk(plan, clo, std::min(hi, clo + opts.chunk));
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    int n_threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_chunks));
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= n_chunks) return;
            std::uint64_t clo = lo + i * opts.chunk;
            results[i] = process_chunk(plan, clo, std::min(hi, clo + opts.chunk));
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Merge in chunk order; the report is independent of the worker count.
  ScanReport rep;
  rep.lo = lo;
  rep.hi = hi;
  std::vector<std::uint64_t> cond_counts(plan.tally_size(), 0);
  for (const ChunkOut& c : results) {
    rep.primes_scanned += c.primes;
    rep.bad_primes_skipped += c.bad;
    rep.matching_count += c.match;
    rep.condition_match_count += c.cond;
    for (std::uint64_t p : c.firsts)
      if (rep.first_matches.size() < 100) rep.first_matches.push_back(p);
    for (std::size_t i = 0; i < cond_counts.size(); ++i) cond_counts[i] += c.cond_counts[i];
    rep.discrepancies.insert(rep.discrepancies.end(), c.disc.begin(), c.disc.end());
  }
  rep.density_estimate =
      rep.primes_scanned == 0
          ? 0.0
          : static_cast<double>(rep.matching_count) / static_cast<double>(rep.primes_scanned);

  std::size_t t = 0;
  for (const auto& o : cs.odd_list)
    rep.per_condition.push_back({"odd", {o.value.value()}, cond_counts[t++]});
  for (const auto& e : cs.even_list)
    rep.per_condition.push_back({"even", {e.value.value()}, cond_counts[t++]});
  for (const auto& [c, q] : cs.divisible_list)
    rep.per_condition.push_back(
        {"divisible", {c, static_cast<std::int64_t>(q)}, cond_counts[t++]});
  for (const auto& [a, b] : cs.irrational_list)
    rep.per_condition.push_back({"irrational", {a, b}, cond_counts[t++]});
  return rep;
}

CrossCheckResult cross_check(std::uint64_t p,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
                             const reduction::ConditionSet& cs) {
  if (std::binary_search(cs.bad_primes.begin(), cs.bad_primes.end(), p))
    throw pairs::BadPrimeError("cross_check: p is a bad prime for this system");
  Plan plan = build_plan(prs, cs);
  arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
  PrimeEval ev = evaluate_prime(plan, p, pm1, true);

  CrossCheckResult out;
  out.pass = ev.problems.empty();
  std::vector<std::uint64_t> orders = base_orders(plan, p, pm1);
  std::vector<std::uint8_t> insolvable = direct_insolvable(plan, p, orders);
  for (std::size_t i = 0; i < prs.size(); ++i) {
    PairCheck pc;
    pc.pair_index = i;
    pc.pass = true;
    pc.description = insolvable[i] ? "insolvable" : "solvable";
    out.pairs.push_back(std::move(pc));
  }
  for (const auto& msg : ev.problems) {
    // Attribute failures back to pairs where the message identifies one.
    for (auto& pc : out.pairs) {
      const auto& klass = cs.classes[pc.pair_index];
      std::string tag =
          "pair " + std::to_string(klass.a) + "," + std::to_string(klass.b) + ":";
      if (msg.find(tag) != std::string::npos) {
        pc.pass = false;
        pc.description = msg;
      }
    }
  }
  return out;
}

std::optional<std::uint64_t> find_first_match(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
    const reduction::ConditionSet& cs, std::uint64_t lo, std::uint64_t hi) {
  Plan plan = build_plan(prs, cs);
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  for (std::uint64_t clo = lo; clo < hi; clo += kChunk) {
    for (std::uint64_t p : arith::primes_in(clo, std::min(hi, clo + kChunk))) {
      if (std::binary_search(plan.bad->begin(), plan.bad->end(), p)) continue;
      arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
      if (evaluate_prime(plan, p, pm1, false).matching) return p;
    }
  }
  return std::nullopt;
}

namespace {

template <typename Predicate>
std::vector<std::uint64_t> mine(const std::vector<std::uint64_t>& bad, std::uint64_t lo,
                                std::uint64_t hi, std::size_t max_count, Predicate pred) {
  std::vector<std::uint64_t> out;
  if (max_count == 0) return out;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  for (std::uint64_t clo = lo; clo < hi; clo += kChunk) {
    for (std::uint64_t p : arith::primes_in(clo, std::min(hi, clo + kChunk))) {
      if (std::binary_search(bad.begin(), bad.end(), p)) continue;
      arith::Factorization pm1 = arith::factorize(static_cast<std::int64_t>(p - 1));
      if (pred(p, pm1)) {
        out.push_back(p);
        if (out.size() >= max_count) return out;
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> bad_for(const std::vector<std::int64_t>& values) {
  std::vector<std::uint64_t> bad{2};
  for (std::int64_t v : values) {
    if (v < 0) v = -v;
    if (v <= 1) continue;
    for (const auto& [p, e] : arith::factorize(v).factors) bad.push_back(p);
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

}  // namespace

std::vector<std::uint64_t> divisibility_witnesses(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& reqs, std::uint64_t lo,
    std::uint64_t hi, std::size_t max_count) {
  std::vector<std::int64_t> values;
  for (const auto& [a, m] : reqs) {
    if (a >= -1 && a <= 1) throw std::invalid_argument("divisibility_witnesses: |a| <= 1");
    if (m <= 0) throw std::invalid_argument("divisibility_witnesses: m must be positive");
    values.push_back(a);
  }
  auto bad = bad_for(values);
  return mine(bad, lo, hi, max_count, [&](std::uint64_t p, const arith::Factorization& pm1) {
    for (const auto& [a, m] : reqs)
      if (arith::multiplicative_order(a, p, pm1) % static_cast<std::uint64_t>(m) != 0)
        return false;
    return true;
  });
}

std::vector<std::uint64_t> indivisibility_witnesses(std::uint64_t q,
                                                    const std::vector<std::int64_t>& bases,
                                                    std::uint64_t lo, std::uint64_t hi,
                                                    std::size_t max_count) {
  for (std::int64_t b : bases)
    if (b == 0) throw std::invalid_argument("indivisibility_witnesses: zero base");
  auto bad = bad_for(bases);
  return mine(bad, lo, hi, max_count, [&](std::uint64_t p, const arith::Factorization& pm1) {
    for (std::int64_t b : bases)
      if (arith::multiplicative_order(b, p, pm1) % q == 0) return false;
    return true;
  });
}

std::vector<std::uint64_t> gcd_witnesses(const std::vector<decide::GcdTriple>& triples,
                                         std::uint64_t lo, std::uint64_t hi,
                                         std::size_t max_count) {
  std::vector<std::int64_t> values;
  for (const auto& t : triples) {
    if (t.a == 0) throw std::invalid_argument("gcd_witnesses: zero base");
    values.push_back(t.a);
  }
  auto bad = bad_for(values);
  return mine(bad, lo, hi, max_count, [&](std::uint64_t p, const arith::Factorization& pm1) {
    for (const auto& t : triples)
      if (std::gcd(arith::multiplicative_order(t.a, p, pm1), t.m) != t.g) return false;
    return true;
  });
}

}  // namespace insolv::scan
