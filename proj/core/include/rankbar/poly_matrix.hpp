#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rankbar/matrix.hpp"
#include "rankbar/polynomial.hpp"

namespace rankbar {

/// m x k matrix of polynomials over a shared variable set and basis.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars, Basis basis = Basis::standard);
  /// Row-major entries; all must share num_vars and basis.
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);
  static PolyMatrix constant(const Matrix& m, std::size_t num_vars, Basis basis = Basis::standard);
  static PolyMatrix from_rows(const std::vector<std::vector<Polynomial>>& rows);
  /// u (x) v.
  static PolyMatrix outer(const PolyVector& u, const PolyVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_vars() const { return num_vars_; }
  Basis basis() const { return basis_; }

  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Polynomial p);
  std::span<const Polynomial> entries() const { return entries_; }

  bool is_zero() const;
  /// Max entry degree, -1 for the zero matrix.
  int max_degree() const;
  /// Every entry is homogeneous of degree d (zero entries allowed).
  bool is_homogeneous_of(int d) const;
  /// Field of the coefficients (rational if no prime-field coefficient appears).
  Field field() const;

  Matrix evaluate(std::span<const Scalar> point) const;
  PolyMatrix to_basis(Basis b) const;

  PolyMatrix& operator+=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t num_vars_ = 0;
  Basis basis_ = Basis::standard;
  std::vector<Polynomial> entries_;
};

/// Rank over the rational function field F(x), by fraction-free (Bareiss)
/// elimination with exact polynomial pivots.
std::size_t exact_symbolic_rank(const PolyMatrix& m);

/// 100 * (max entry degree) * max(rows, cols), at least 2.
std::uint64_t default_sample_range(const PolyMatrix& m);
inline constexpr unsigned kDefaultRankTrials = 3;

/// Max over `trials` random evaluations at points of {0..sample_range-1}^n.
/// Never exceeds the symbolic rank. Refuses sample_range <= max degree, and
/// over F_p refuses p < 100 * deg * dim or sample_range > p.
std::size_t randomized_symbolic_rank(const PolyMatrix& m, std::uint64_t sample_range, unsigned trials,
                                     std::uint64_t seed);
std::size_t randomized_symbolic_rank(const PolyMatrix& m, std::uint64_t seed);

/// M = sum_i (1 / denominators[i]) * left.col(i) (x) right.row(i) over F(x).
class RankFactorization {
 public:
  RankFactorization() = default;
  /// Checks the reconstruction identity exactly (common-denominator test);
  /// throws ContractViolation if it fails.
  RankFactorization(const PolyMatrix& target, PolyMatrix left, PolyMatrix right, std::vector<Polynomial> denominators);

  std::size_t rank() const { return denominators_.size(); }
  const PolyMatrix& left() const { return left_; }
  const PolyMatrix& right() const { return right_; }
  const std::vector<Polynomial>& denominators() const { return denominators_; }
  PolyVector left_column(std::size_t i) const;
  PolyVector right_row(std::size_t i) const;

  /// Exact rational-function identity check against m.
  bool reconstructs(const PolyMatrix& m) const;

 private:
  friend RankFactorization rank_factorize(const PolyMatrix& m);
  struct Trusted {};
  RankFactorization(Trusted, PolyMatrix left, PolyMatrix right, std::vector<Polynomial> denominators)
      : left_(std::move(left)), right_(std::move(right)), denominators_(std::move(denominators)) {}

  PolyMatrix left_;
  PolyMatrix right_;
  std::vector<Polynomial> denominators_;
};

/// Fraction-free LU: denominators[k] = p_{k-1} * p_k for the Bareiss pivots.
/// Every exact division performed is a certificate for the recurrence
/// p_{k-1} A^(k+1) = p_k A^(k) - col_k (x) row_k, which telescopes to the
/// reconstruction identity, so the result is exact by construction.
RankFactorization rank_factorize(const PolyMatrix& m);

/// Linear span of constant matrices of a fixed shape. The echelon basis is
/// computed once on first use and shared between copies.
class MatrixSpace {
 public:
  MatrixSpace(std::size_t rows, std::size_t cols, std::vector<Matrix> generators = {});

  std::size_t ambient_rows() const { return rows_; }
  std::size_t ambient_cols() const { return cols_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  std::size_t dim() const;
  /// A linearly independent subset of the generators spanning the space.
  const std::vector<Matrix>& reduced_basis() const;
  /// Exact membership test; throws on a shape mismatch.
  bool contains(const Matrix& a) const;

 private:
  struct Cache;
  const Cache& cache() const;

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Matrix> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Max rank over the space = symbolic rank of sum_i z_i B_i over a basis B.
std::size_t max_rank_of_space(const MatrixSpace& s, std::uint64_t seed);

/// span{ M_e : M(x) = sum_e M_e x^e } with x^e in the divided basis.
MatrixSpace coefficient_space(const PolyMatrix& m);
MatrixSpace coefficient_space(const PolyVector& v);

bool space_membership(const MatrixSpace& s, const Matrix& a);

}  // namespace rankbar
