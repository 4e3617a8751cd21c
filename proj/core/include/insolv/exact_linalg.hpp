#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace insolv::exactla {

/// Exact rational with int64 numerator/denominator, always in lowest terms
/// with a positive denominator. Arithmetic goes through 128-bit intermediates
/// and throws std::overflow_error if a reduced result leaves int64 range.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static Rational reduced(__int128 n, __int128 d);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct RationalMatrix {
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Row-major integer matrix; empty rows are permitted only when cols == 0.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Some x with A x = b, exact, or nullopt when the system is inconsistent.
/// Free variables are fixed to zero, so the result is the unique solution
/// whenever A has full column rank.
std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& A,
                                                    const std::vector<Rational>& b);

/// Basis of the lattice {x : A x = 0} via unimodular column reduction.
/// Basis vectors are primitive and sign-normalized (first nonzero positive).
std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& A);

/// Basis of the lattice spanned by the columns of A, as columns, in pivot
/// order. Unimodular column operations only, so the span is preserved.
IntMatrix lattice_column_basis(const IntMatrix& A);

/// Rank of A over the rationals.
std::size_t rational_rank(const IntMatrix& A);

/// Indices, in input order, of a maximal GF(2)-independent subset.
/// Greedy: a vector is kept iff it is independent of those already kept.
std::vector<std::size_t> f2_select_independent(
    const std::vector<std::vector<std::uint8_t>>& vectors);

}  // namespace insolv::exactla
