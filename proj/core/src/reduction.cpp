#include "insolv/reduction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "insolv/arith.hpp"

namespace insolv::reduction {

namespace {

using exactla::Rational;
using multgroup::SignedFactored;

template <typename T>
void push_unique(std::vector<T>& xs, const T& x) {
  if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
}

void add_prime_factors(std::set<std::uint64_t>& out, std::int64_t v) {
  if (v == 0) return;
  if (v < 0) v = -v;
  if (v <= 1) return;
  for (const auto& [p, e] : arith::factorize(v).factors) out.insert(p);
}

int v2_positive(std::int64_t n) {
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

/// Reduce a rational with odd denominator to a residue mod 2^M.
std::uint64_t reduce_odd_denominator(const Rational& q, int M) {
  if (M <= 0 || M >= 63) throw std::invalid_argument("modulus 2^M out of range");
  std::uint64_t mod = std::uint64_t{1} << M;
  if (q.denominator() % 2 == 0)
    throw std::logic_error("reduce_odd_denominator: even denominator");
  // Inverse of the odd denominator mod 2^M by Newton iteration.
  std::uint64_t d = static_cast<std::uint64_t>(q.denominator()) & (mod - 1);
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv = (inv * (2 - d * inv)) & (mod - 1);
  if ((d * inv & (mod - 1)) != 1 % mod)
    throw std::logic_error("reduce_odd_denominator: inverse failed");
  std::uint64_t n = arith::canonical_residue(q.numerator(), mod);
  return (n * inv) & (mod - 1);
}

int denominator_v2(const Rational& q) { return v2_positive(q.denominator()); }

}  // namespace

ConditionSet build_conditions(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& prs) {
  ConditionSet cs;
  std::set<std::uint64_t> bad{2};
  bool never = false;

  for (const auto& [a, b] : prs) {
    pairs::PairClass pc = pairs::classify_pair(a, b);
    cs.classes.push_back(pc);
    add_prime_factors(bad, a);
    add_prime_factors(bad, b);

    switch (pc.variant) {
      case pairs::Variant::Trivial:
        if (pc.trivial_kind == pairs::TrivialKind::AlwaysSolvable) {
          never = true;
        } else {
          // Insolvable for all but finitely many p; the exceptional primes
          // join the excluded set so scans see a constant condition.
          cs.dropped_trivial.emplace_back(a, b);
          if (a == 0 || a == 1) add_prime_factors(bad, b - 1);
          if (a == -1) {
            add_prime_factors(bad, b - 1);
            add_prime_factors(bad, b + 1);
          }
        }
        break;
      case pairs::Variant::Odd:
        push_unique(cs.odd_original, multgroup::signed_factored(a));
        break;
      case pairs::Variant::Even:
        push_unique(cs.even_list, multgroup::signed_factored(*pc.core));
        break;
      case pairs::Variant::StronglyEven:
        push_unique(cs.even_list, multgroup::signed_factored(*pc.core * *pc.core));
        break;
      case pairs::Variant::Divisible:
        push_unique(cs.divisible_list, std::make_pair(*pc.core, *pc.q));
        break;
      case pairs::Variant::Irrational:
        push_unique(cs.irrational_list, std::make_pair(a, b));
        break;
    }
  }
  cs.bad_primes.assign(bad.begin(), bad.end());

  if (never) {
    cs.early_verdict = EarlyVerdict::Never;
    cs.odd_list = cs.odd_original;
    return cs;
  }

  if (auto e = multgroup::has_minus_one_product(cs.odd_original)) {
    cs.early_verdict = EarlyVerdict::MinusOneProduct;
    cs.minus_one_exponents = std::move(*e);
    cs.odd_list = cs.odd_original;
    return cs;
  }

  multgroup::OddBasis ob = multgroup::odd_basis(cs.odd_original);
  for (std::size_t idx : ob.basis_indices) cs.odd_list.push_back(cs.odd_original[idx]);
  cs.odd_certificates = std::move(ob.certificates);
  return cs;
}

IncongruenceSystem build_system(const ConditionSet& cs, Mode mode) {
  if (cs.early_verdict)
    throw std::invalid_argument("build_system: condition set has an early verdict");

  IncongruenceSystem sys;
  sys.mode = mode;
  sys.num_vars = cs.odd_list.size();

  struct Pending {
    std::int64_t source;
    std::vector<Rational> coords;
    Rational offset_term;  // s_a - sum f_i s_i, before the 2^(M-1) scaling
  };
  std::vector<Pending> pending;

  int min_m = 1;
  for (const auto& e : cs.even_list) {
    auto span = multgroup::express_in_span(e, cs.odd_list);
    if (!span) {
      sys.b_members.push_back(e.value.value());
      continue;
    }
    Pending row;
    row.source = e.value.value();
    row.coords = std::move(span->coords);

    Rational offset_term(span->target_negative ? 1 : 0);
    for (std::size_t i = 0; i < cs.odd_list.size(); ++i) {
      if (cs.odd_list[i].negative)
        offset_term = offset_term - row.coords[i];
      min_m = std::max(min_m, denominator_v2(row.coords[i]));
    }
    if (mode == Mode::SignExtended && !offset_term.is_zero())
      min_m = std::max(min_m, denominator_v2(offset_term) + 1);
    row.offset_term = offset_term;
    pending.push_back(std::move(row));
  }

  sys.modulus_log2 = min_m;
  Rational two_m(std::int64_t{1} << min_m);
  Rational two_m_half(std::int64_t{1} << (min_m - 1));

  for (const auto& p : pending) {
    Row row;
    row.source = p.source;
    row.coeffs.reserve(p.coords.size());
    for (const auto& f : p.coords)
      row.coeffs.push_back(reduce_odd_denominator(f * two_m, min_m));
    if (mode == Mode::SignExtended)
      row.offset = reduce_odd_denominator(p.offset_term * two_m_half, min_m);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

}  // namespace insolv::reduction
