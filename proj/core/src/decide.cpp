#include "insolv/decide.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "insolv/arith.hpp"

namespace insolv::decide {

namespace {

bool satisfies(const reduction::IncongruenceSystem& sys,
               const std::vector<std::uint64_t>& x, std::uint64_t mask) {
  for (const auto& row : sys.rows) {
    std::uint64_t acc = row.offset;
    for (std::size_t i = 0; i < x.size(); ++i) acc += row.coeffs[i] * x[i];
    if ((acc & mask) == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> solve_system(
    const reduction::IncongruenceSystem& sys, const SolverOptions& opts) {
  const std::size_t O = sys.num_vars;
  const int M = sys.modulus_log2;
  const std::uint64_t mod = std::uint64_t{1} << M;
  const std::uint64_t mask = mod - 1;

  std::uint64_t bits = static_cast<std::uint64_t>(M) * O;
  if (bits >= 63 || (std::uint64_t{1} << bits) > opts.cap)
    throw SolverCapExceeded("solve_system: search space 2^(M*O) exceeds the cap");
  const std::uint64_t space = std::uint64_t{1} << bits;

  // Seeded preflight: a hit guarantees the exhaustive pass must succeed.
  bool preflight_hit = false;
  if (opts.preflight_samples > 0 && O > 0) {
    std::mt19937_64 rng(opts.seed);
    std::vector<std::uint64_t> x(O);
    for (std::uint64_t t = 0; t < opts.preflight_samples; ++t) {
      for (auto& v : x) v = rng() & mask;
      if (satisfies(sys, x, mask)) {
        preflight_hit = true;
        break;
      }
    }
  }

  // Exhaustive lexicographic enumeration with incrementally maintained row
  // sums; the first witness is returned.
  std::vector<std::uint64_t> x(O, 0);
  std::vector<std::uint64_t> sums(sys.rows.size());
  for (std::size_t r = 0; r < sys.rows.size(); ++r) sums[r] = sys.rows[r].offset & mask;

  for (std::uint64_t step = 0;; ++step) {
    bool ok = true;
    for (std::uint64_t s : sums) {
      if ((s & mask) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
    if (step + 1 == space) break;

    // Odometer increment; a wrap from mod-1 to 0 contributes the same +coeff
    // as a plain +1 because mod * coeff vanishes mod 2^M.
    std::size_t j = O;
    while (j > 0) {
      --j;
      ++x[j];
      for (std::size_t r = 0; r < sys.rows.size(); ++r) sums[r] += sys.rows[r].coeffs[j];
      if (x[j] < mod) break;
      x[j] = 0;
    }
  }

  if (preflight_hit)
    throw std::logic_error("solve_system: preflight hit contradicts exhaustion");
  return std::nullopt;
}

Verdict decide(const std::vector<std::pair<std::int64_t, std::int64_t>>& prs,
               reduction::Mode mode, const SolverOptions& opts) {
  Verdict v;
  v.mode = mode;
  v.conditions = reduction::build_conditions(prs);

  if (v.conditions.early_verdict == reduction::EarlyVerdict::Never) {
    v.outcome = Outcome::Finite;
    v.reason = FiniteReason::TrivialAlwaysSolvable;
    return v;
  }
  if (v.conditions.early_verdict == reduction::EarlyVerdict::MinusOneProduct) {
    v.outcome = Outcome::Finite;
    v.reason = FiniteReason::MinusOneProduct;
    return v;
  }

  v.system = reduction::build_system(v.conditions, mode);
  auto witness = solve_system(*v.system, opts);
  if (witness) {
    v.outcome = Outcome::Infinite;
    v.witness = std::move(*witness);
  } else {
    v.outcome = Outcome::Finite;
    v.reason = FiniteReason::UnsolvableSystem;
  }
  return v;
}

IndivisibilityResult decide_indivisibility(std::uint64_t q,
                                           const std::vector<std::int64_t>& bases) {
  if (!arith::is_prime(q)) throw std::invalid_argument("decide_indivisibility: q must be prime");
  for (std::int64_t b : bases)
    if (b == 0) throw std::invalid_argument("decide_indivisibility: bases must be nonzero");

  IndivisibilityResult out;
  if (q != 2) return out;  // always satisfiable for odd q

  std::vector<multgroup::SignedFactored> gens;
  gens.reserve(bases.size());
  for (std::int64_t b : bases) gens.push_back(multgroup::signed_factored(b));
  if (auto e = multgroup::has_minus_one_product(gens)) {
    out.satisfiable = false;
    out.certificate = std::move(*e);
  }
  return out;
}

DivisibilityResult decide_divisibility(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& reqs) {
  DivisibilityResult out;
  for (const auto& [a, m] : reqs) {
    if (a >= -1 && a <= 1)
      throw std::invalid_argument("decide_divisibility: |a| must exceed 1");
    if (m == 0) throw std::invalid_argument("decide_divisibility: m must be nonzero");

    std::int64_t mm = m < 0 ? -m : m;
    std::int64_t aa = a;
    if (a < 0) {
      // ord_p(a) and ord_p(-a) differ by a factor of 1/2, 1 or 2.
      aa = -a;
      mm *= 2;
    }
    out.normalized.emplace_back(aa, mm);

    for (const auto& [qf, e] : arith::factorize(mm).factors) {
      auto qk = arith::checked_pow(static_cast<std::int64_t>(qf), e);
      auto qk1 = arith::checked_pow(static_cast<std::int64_t>(qf), e - 1);
      // |a| >= 2, so any exponent past 62 overflows the cap anyway.
      if (!qk || *qk > 62)
        throw std::invalid_argument("decide_divisibility: encoded pair exceeds the cap");
      auto lhs = arith::checked_pow(aa, static_cast<int>(*qk));
      auto rhs = arith::checked_pow(aa, static_cast<int>(*qk1));
      if (!lhs || !rhs)
        throw std::invalid_argument("decide_divisibility: encoded pair exceeds the cap");
      out.encoded_pairs.emplace_back(*lhs, *rhs);
    }
  }
  return out;
}

std::vector<GcdSplit> split_gcd(const std::vector<GcdTriple>& triples) {
  std::vector<std::uint64_t> primes;
  for (const auto& t : triples) {
    if (t.a == 0) throw std::invalid_argument("split_gcd: a must be nonzero");
    if (t.g == 0 || t.m == 0 || t.m % t.g != 0)
      throw std::invalid_argument("split_gcd: need 1 <= g | m");
    for (const auto& [p, e] : arith::factorize(static_cast<std::int64_t>(t.m)).factors) {
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());

  std::vector<GcdSplit> out;
  for (std::uint64_t q : primes) {
    GcdSplit split;
    split.q = q;
    for (const auto& t : triples) {
      auto fm = arith::factorize(static_cast<std::int64_t>(t.m));
      auto fg = arith::factorize(static_cast<std::int64_t>(t.g));
      auto qm = arith::checked_pow(static_cast<std::int64_t>(q), arith::valuation(fm, q));
      auto qg = arith::checked_pow(static_cast<std::int64_t>(q), arith::valuation(fg, q));
      split.conditions.push_back(GcdTriple{t.a, static_cast<std::uint64_t>(*qg),
                                           static_cast<std::uint64_t>(*qm)});
    }
    out.push_back(std::move(split));
  }
  return out;
}

}  // namespace insolv::decide
