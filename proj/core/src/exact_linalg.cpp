#include "insolv/exact_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace insolv::exactla {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
  return static_cast<std::int64_t>(v);
}

// Extended gcd on int64 via int128 accumulators: g = u*a + v*b, g >= 0.
void xgcd(i128 a, i128 b, i128& g, i128& u, i128& v) {
  i128 old_r = a, r = b;
  i128 old_u = 1, uu = 0;
  i128 old_v = 0, vv = 1;
  while (r != 0) {
    i128 q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_u -= q * uu, uu);
    std::swap(old_v -= q * vv, vv);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_u = -old_u;
    old_v = -old_v;
  }
  g = old_r;
  u = old_u;
  v = old_v;
}

using WideMatrix = std::vector<std::vector<i128>>;

struct ColumnReduction {
  WideMatrix reduced;     // same shape as input, column echelon
  WideMatrix transform;   // cols x cols unimodular, input * transform == reduced
  std::size_t rank = 0;
};

// Unimodular column reduction: for each row, pick the first nonzero column at
// or past the current lead and clear the rest of the row with xgcd column
// combinations. Pivots are normalized positive.
ColumnReduction column_reduce(const IntMatrix& A) {
  std::size_t m = A.size();
  std::size_t n = m == 0 ? 0 : A[0].size();
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("column_reduce: ragged matrix");

  ColumnReduction out;
  out.reduced.assign(m, std::vector<i128>(n, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) out.reduced[r][c] = A[r][c];
  out.transform.assign(n, std::vector<i128>(n, 0));
  for (std::size_t c = 0; c < n; ++c) out.transform[c][c] = 1;

  WideMatrix& W = out.reduced;
  WideMatrix& U = out.transform;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(W[r][a], W[r][b]);
    for (std::size_t r = 0; r < n; ++r) std::swap(U[r][a], U[r][b]);
  };
  auto negate_col = [&](std::size_t c) {
    for (std::size_t r = 0; r < m; ++r) W[r][c] = -W[r][c];
    for (std::size_t r = 0; r < n; ++r) U[r][c] = -U[r][c];
  };

  std::size_t lead = 0;
  for (std::size_t row = 0; row < m && lead < n; ++row) {
    std::size_t pivot = lead;
    while (pivot < n && W[row][pivot] == 0) ++pivot;
    if (pivot == n) continue;
    swap_cols(lead, pivot);
    if (W[row][lead] < 0) negate_col(lead);

    for (std::size_t j = lead + 1; j < n; ++j) {
      if (W[row][j] == 0) continue;
      i128 a = W[row][lead], b = W[row][j];
      i128 g, u, v;
      xgcd(a, b, g, u, v);
      i128 as = a / g, bs = b / g;
      for (std::size_t r = 0; r < m; ++r) {
        i128 wl = W[r][lead], wj = W[r][j];
        W[r][lead] = u * wl + v * wj;
        W[r][j] = as * wj - bs * wl;
      }
      for (std::size_t r = 0; r < n; ++r) {
        i128 ul = U[r][lead], uj = U[r][j];
        U[r][lead] = u * ul + v * uj;
        U[r][j] = as * uj - bs * ul;
      }
    }
    ++lead;
  }
  out.rank = lead;
  return out;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  *this = reduced(n, d);
}

Rational Rational::reduced(i128 n, i128 d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (n == 0) return Rational{};
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  n /= g;
  d /= g;
  Rational out;
  out.num_ = narrow(n, "Rational: numerator overflow");
  out.den_ = narrow(d, "Rational: denominator overflow");
  return out;
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::reduced(static_cast<i128>(a.num_) * b.den_ +
                               static_cast<i128>(b.num_) * a.den_,
                           static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduced(static_cast<i128>(a.num_) * b.num_,
                           static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
  return Rational::reduced(static_cast<i128>(a.num_) * b.den_,
                           static_cast<i128>(a.den_) * b.num_);
}

std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& A,
                                                    const std::vector<Rational>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_rational: dimension mismatch");
  std::size_t m = A.rows(), n = A.cols();

  // Augmented working copy, Gauss-Jordan with exact arithmetic.
  RationalMatrix M(m, n + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) M.at(r, c) = A.at(r, c);
    M.at(r, n) = b[r];
  }

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pr = rank;
    while (pr < m && M.at(pr, col).is_zero()) ++pr;
    if (pr == m) continue;
    for (std::size_t c = 0; c <= n; ++c) std::swap(M.at(rank, c), M.at(pr, c));
    Rational inv = Rational(1) / M.at(rank, col);
    for (std::size_t c = col; c <= n; ++c) M.at(rank, c) = M.at(rank, c) * inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || M.at(r, col).is_zero()) continue;
      Rational factor = M.at(r, col);
      for (std::size_t c = col; c <= n; ++c)
        M.at(r, c) = M.at(r, c) - factor * M.at(rank, c);
    }
    pivots.emplace_back(rank, col);
    ++rank;
  }

  for (std::size_t r = rank; r < m; ++r)
    if (!M.at(r, n).is_zero()) return std::nullopt;

  std::vector<Rational> x(n);
  for (auto [r, c] : pivots) x[c] = M.at(r, n);
  return x;
}

std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& A) {
  ColumnReduction red = column_reduce(A);
  std::size_t m = red.reduced.size();
  std::size_t n = red.transform.size();

  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t c = red.rank; c < n; ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < m; ++r)
      if (red.reduced[r][c] != 0) zero = false;
    if (!zero) throw std::logic_error("integer_kernel: reduction invariant broken");
    std::vector<std::int64_t> v(n);
    for (std::size_t r = 0; r < n; ++r)
      v[r] = narrow(red.transform[r][c], "integer_kernel: entry overflow");
    for (std::size_t r = 0; r < n; ++r) {
      if (v[r] == 0) continue;
      if (v[r] < 0)
        for (auto& e : v) e = -e;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix lattice_column_basis(const IntMatrix& A) {
  ColumnReduction red = column_reduce(A);
  std::size_t m = red.reduced.size();
  IntMatrix basis(m, std::vector<std::int64_t>(red.rank, 0));
  for (std::size_t c = 0; c < red.rank; ++c)
    for (std::size_t r = 0; r < m; ++r)
      basis[r][c] = narrow(red.reduced[r][c], "lattice_column_basis: entry overflow");
  return basis;
}

std::size_t rational_rank(const IntMatrix& A) {
  return column_reduce(A).rank;
}

std::vector<std::size_t> f2_select_independent(
    const std::vector<std::vector<std::uint8_t>>& vectors) {
  std::size_t len = vectors.empty() ? 0 : vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != len)
      throw std::invalid_argument("f2_select_independent: unequal lengths");

  std::vector<std::size_t> kept;
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> pivots;  // (pos, reduced)
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<std::uint8_t> v = vectors[i];
    for (auto& e : v) e &= 1;
    for (const auto& [pos, pv] : pivots) {
      if (v[pos]) {
        for (std::size_t j = 0; j < len; ++j) v[j] ^= pv[j];
      }
    }
    std::size_t pos = 0;
    while (pos < len && !v[pos]) ++pos;
    if (pos == len) continue;  // dependent (or zero): never selected
    kept.push_back(i);
    pivots.emplace_back(pos, std::move(v));
  }
  return kept;
}

}  // namespace insolv::exactla
