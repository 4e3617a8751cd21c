#include "insolv/multiplicative.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "insolv/arith.hpp"

namespace insolv::multgroup {

namespace {

using exactla::IntMatrix;
using exactla::Rational;
using exactla::RationalMatrix;

std::vector<std::int64_t> exponent_vector(const SignedFactored& x,
                                          const std::vector<std::uint64_t>& primes) {
  std::vector<std::int64_t> v(primes.size(), 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    auto it = x.exponents.find(primes[i]);
    if (it != x.exponents.end()) v[i] = it->second;
  }
  return v;
}

bool sign_parity(const std::vector<SignedFactored>& gens,
                 const std::vector<std::int64_t>& e) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].negative) acc += e[i];
  return (acc % 2 + 2) % 2 == 1;
}

RationalMatrix to_rational(const IntMatrix& A) {
  std::size_t m = A.size(), n = m == 0 ? 0 : A[0].size();
  RationalMatrix M(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) M.at(r, c) = Rational(A[r][c]);
  return M;
}

}  // namespace

SignedFactored signed_factored(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("signed_factored: n must be nonzero");
  arith::Factorization f = arith::factorize(n);
  SignedFactored out;
  out.negative = f.sign < 0;
  for (const auto& [p, e] : f.factors) out.exponents[p] = e;
  out.value = n;
  return out;
}

std::vector<std::uint64_t> prime_support(const std::vector<SignedFactored>& xs) {
  std::set<std::uint64_t> primes;
  for (const auto& x : xs)
    for (const auto& [p, e] : x.exponents) primes.insert(p);
  return {primes.begin(), primes.end()};
}

IntMatrix exponent_matrix(const std::vector<SignedFactored>& xs,
                          const std::vector<std::uint64_t>& primes) {
  IntMatrix A(primes.size(), std::vector<std::int64_t>(xs.size(), 0));
  for (std::size_t c = 0; c < xs.size(); ++c) {
    for (const auto& [p, e] : xs[c].exponents) {
      auto it = std::lower_bound(primes.begin(), primes.end(), p);
      if (it == primes.end() || *it != p)
        throw std::invalid_argument("exponent_matrix: prime missing from support");
      A[static_cast<std::size_t>(it - primes.begin())][c] = e;
    }
  }
  return A;
}

std::optional<std::vector<std::int64_t>> has_minus_one_product(
    const std::vector<SignedFactored>& gens) {
  if (gens.empty()) return std::nullopt;
  std::vector<std::uint64_t> primes = prime_support(gens);
  IntMatrix A = exponent_matrix(gens, primes);
  std::vector<std::vector<std::int64_t>> kernel;
  if (primes.empty()) {
    // Every generator is +-1; the kernel of the zero-row map is all of Z^n.
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<std::int64_t> unit(gens.size(), 0);
      unit[i] = 1;
      kernel.push_back(std::move(unit));
    }
  } else {
    kernel = exactla::integer_kernel(A);
  }

  for (const auto& v : kernel) {
    if (!sign_parity(gens, v)) continue;
    // Verify: magnitude exponents cancel and the combined sign is negative.
    for (std::size_t r = 0; r < primes.size(); ++r) {
      __int128 acc = 0;
      for (std::size_t c = 0; c < gens.size(); ++c)
        acc += static_cast<__int128>(A[r][c]) * v[c];
      if (acc != 0) throw std::logic_error("has_minus_one_product: bad kernel vector");
    }
    return v;
  }
  return std::nullopt;
}

OddBasis odd_basis(const std::vector<SignedFactored>& gens) {
  OddBasis out;
  if (gens.empty()) return out;
  for (const auto& g : gens)
    if (g.exponents.empty())
      throw std::invalid_argument("odd_basis: generator equal to +-1");
  if (has_minus_one_product(gens))
    throw std::invalid_argument("odd_basis: generators admit a product equal to -1");

  std::vector<std::uint64_t> primes = prime_support(gens);
  IntMatrix V = exponent_matrix(gens, primes);

  // Lattice basis of the magnitude lattice; since -1 is not in the generated
  // group the magnitude map is injective on it, so this is a basis of H.
  IntMatrix B = exactla::lattice_column_basis(V);
  std::size_t rank = B.empty() ? 0 : B[0].size();

  // Integer coordinates of each generator in that basis.
  RationalMatrix Bq = to_rational(B);
  std::vector<std::vector<std::int64_t>> coords(gens.size());
  std::vector<std::vector<std::uint8_t>> images(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Rational> rhs;
    rhs.reserve(primes.size());
    std::vector<std::int64_t> v = exponent_vector(gens[i], primes);
    for (std::int64_t e : v) rhs.emplace_back(e);
    auto sol = exactla::solve_rational(Bq, rhs);
    if (!sol) throw std::logic_error("odd_basis: generator outside its own lattice");
    coords[i].resize(rank);
    images[i].resize(rank);
    for (std::size_t j = 0; j < rank; ++j) {
      if (!(*sol)[j].is_integer())
        throw std::logic_error("odd_basis: non-integer lattice coordinates");
      coords[i][j] = (*sol)[j].numerator();
      images[i][j] = static_cast<std::uint8_t>(((coords[i][j] % 2) + 2) % 2);
    }
  }

  out.basis_indices = exactla::f2_select_independent(images);
  if (out.basis_indices.size() != rank)
    throw std::logic_error("odd_basis: selected subset does not span H/2H");

  // Coordinate matrix of the selected subset; its determinant is odd, so the
  // x below (an lcm of denominators dividing the determinant) is odd too.
  RationalMatrix C(rank, rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t r = 0; r < rank; ++r)
      C.at(r, j) = Rational(coords[out.basis_indices[j]][r]);

  out.certificates.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Rational> rhs;
    rhs.reserve(rank);
    for (std::size_t r = 0; r < rank; ++r) rhs.emplace_back(coords[i][r]);
    auto y = exactla::solve_rational(C, rhs);
    if (!y) throw std::logic_error("odd_basis: basis coordinate solve failed");

    std::int64_t scale = 1;
    for (const auto& q : *y)
      scale = std::lcm(scale, q.denominator());
    std::vector<std::int64_t> f(rank);
    std::int64_t content = scale;
    for (std::size_t j = 0; j < rank; ++j) {
      Rational scaled = (*y)[j] * Rational(scale);
      if (!scaled.is_integer()) throw std::logic_error("odd_basis: lcm scaling failed");
      f[j] = scaled.numerator();
      content = std::gcd(content, f[j]);
    }
    if (content > 1) {
      scale /= content;
      for (auto& e : f) e /= content;
    }
    if (scale % 2 == 0) throw std::logic_error("odd_basis: even certificate exponent");

    // Exact verification: gens[i]^scale == prod basis[j]^f[j], signs included.
    std::vector<std::int64_t> vi = exponent_vector(gens[i], primes);
    std::int64_t lhs_sign = gens[i].negative ? scale : 0;
    std::int64_t rhs_sign = 0;
    for (std::size_t r = 0; r < primes.size(); ++r) {
      __int128 lhs = static_cast<__int128>(vi[r]) * scale;
      __int128 rhs = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        const SignedFactored& s = gens[out.basis_indices[j]];
        auto it = s.exponents.find(primes[r]);
        if (it != s.exponents.end()) rhs += static_cast<__int128>(it->second) * f[j];
      }
      if (lhs != rhs) throw std::logic_error("odd_basis: certificate verification failed");
    }
    for (std::size_t j = 0; j < rank; ++j)
      if (gens[out.basis_indices[j]].negative) rhs_sign += f[j];
    if (((lhs_sign - rhs_sign) % 2 + 2) % 2 != 0)
      throw std::logic_error("odd_basis: certificate sign verification failed");

    out.certificates[i] = OddBasisCertificate{scale, std::move(f)};
  }
  return out;
}

std::optional<SpanCoordinates> express_in_span(
    const SignedFactored& target, const std::vector<SignedFactored>& basis) {
  {
    std::vector<std::uint64_t> bp = prime_support(basis);
    if (!exactla::integer_kernel(exponent_matrix(basis, bp)).empty())
      throw std::invalid_argument("express_in_span: basis not multiplicatively independent");
  }

  std::vector<SignedFactored> all = basis;
  all.push_back(target);
  std::vector<std::uint64_t> primes = prime_support(all);
  IntMatrix A = exponent_matrix(basis, primes);
  std::vector<Rational> rhs;
  rhs.reserve(primes.size());
  std::vector<std::int64_t> tv = exponent_vector(target, primes);
  for (std::int64_t e : tv) rhs.emplace_back(e);

  auto sol = exactla::solve_rational(to_rational(A), rhs);
  if (!sol) return std::nullopt;

  // Re-verify the exponent identity rather than trusting elimination.
  for (std::size_t r = 0; r < primes.size(); ++r) {
    Rational acc;
    for (std::size_t c = 0; c < basis.size(); ++c)
      acc = acc + (*sol)[c] * Rational(A[r][c]);
    if (!(acc == Rational(tv[r])))
      throw std::logic_error("express_in_span: solution verification failed");
  }

  return SpanCoordinates{std::move(*sol), target.negative};
}

namespace {

struct ParallelData {
  std::vector<std::uint64_t> primes;
  std::vector<std::int64_t> u, w;  // exponent vectors of |a|, |b|
  std::int64_t alpha = 0, beta = 0;
  bool parallel = false;
};

ParallelData parallel_data(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0 || a == 1 || a == -1 || b == 1 || b == -1)
    throw std::invalid_argument("dependence_shape: |a| and |b| must exceed 1");

  ParallelData out;
  SignedFactored sa = signed_factored(a);
  SignedFactored sb = signed_factored(b);
  out.primes = prime_support({sa, sb});
  out.u = exponent_vector(sa, out.primes);
  out.w = exponent_vector(sb, out.primes);
  for (std::int64_t e : out.u) out.alpha = std::gcd(out.alpha, e);
  for (std::int64_t e : out.w) out.beta = std::gcd(out.beta, e);
  // Parallel iff the primitive directions coincide.
  out.parallel = true;
  for (std::size_t i = 0; i < out.primes.size(); ++i) {
    if (out.u[i] == 0 || out.w[i] == 0 || out.u[i] / out.alpha != out.w[i] / out.beta) {
      out.parallel = false;
      break;
    }
  }
  return out;
}

}  // namespace

bool magnitudes_dependent(std::int64_t a, std::int64_t b) {
  return parallel_data(a, b).parallel;
}

DependenceShape dependence_shape(std::int64_t a, std::int64_t b) {
  ParallelData pd = parallel_data(a, b);
  if (!pd.parallel)
    throw std::invalid_argument("dependence_shape: multiplicatively independent pair");
  const std::vector<std::uint64_t>& primes = pd.primes;
  const std::vector<std::int64_t>& u = pd.u;

  std::int64_t g = std::gcd(pd.alpha, pd.beta);
  DependenceShape out;
  out.s = pd.alpha / g;
  out.r = pd.beta / g;

  if (out.s == 1) {
    bool lhs_neg = b < 0;
    bool rhs_neg = (a < 0) && (out.r % 2 == 1);
    if (lhs_neg == rhs_neg)
      throw std::invalid_argument("dependence_shape: pair is trivial (b is a power of a)");
    throw std::invalid_argument("dependence_shape: pair is odd (b = -a^k)");
  }

  // t = prod p^(g * d0) where u = s * (g * d0).
  std::int64_t t = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    auto pw = arith::checked_pow(static_cast<std::int64_t>(primes[i]),
                                 static_cast<int>(u[i] / out.s));
    if (!pw) throw std::overflow_error("dependence_shape: core exceeds magnitude cap");
    __int128 next = static_cast<__int128>(t) * *pw;
    if (next > arith::kMagnitudeCap)
      throw std::overflow_error("dependence_shape: core exceeds magnitude cap");
    t = static_cast<std::int64_t>(next);
  }
  out.t = t;

  bool bs_neg = (b < 0) && (out.s % 2 == 1);
  bool ar_neg = (a < 0) && (out.r % 2 == 1);
  out.negated = bs_neg != ar_neg;

  if (out.r % 2 == 1) {
    out.signed_core = (b < 0) ? -t : t;
  } else if (b > 0) {
    // r even forces s odd; the sign of c is pinned by a.
    bool c_neg = out.negated ? (a > 0) : (a < 0);
    out.signed_core = c_neg ? -t : t;
  }
  // r even with b < 0: b == c^r is impossible for any integer c.

  if (out.signed_core) {
    auto br = arith::checked_pow(*out.signed_core, static_cast<int>(out.r));
    auto as = arith::checked_pow(*out.signed_core, static_cast<int>(out.s));
    if (!br || !as || *br != b || *as != (out.negated ? -a : a))
      throw std::logic_error("dependence_shape: core identity verification failed");
  }
  return out;
}

Core core_of(std::int64_t a, std::int64_t b) {
  DependenceShape shape = dependence_shape(a, b);
  if (!shape.signed_core)
    throw std::domain_error("core_of: no integer core exists (r even, b < 0)");
  return Core{*shape.signed_core, shape.r, shape.s, shape.negated};
}

}  // namespace insolv::multgroup
