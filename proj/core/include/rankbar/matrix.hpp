#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rankbar/scalar.hpp"

namespace rankbar {

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major);
  static Matrix identity(std::size_t n);
  /// Single 1 at (i, j).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Scalar> data() const { return data_; }

  bool is_zero() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
  friend Matrix operator*(const Scalar& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// a (x) b for column vectors a (length rows) and b (length cols).
  static Matrix outer(std::span<const Scalar> a, std::span<const Scalar> b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Exact rank by Gaussian elimination.
std::size_t rank(const Matrix& m);

/// Incrementally maintained span of dense vectors, kept in echelon form
/// with unit pivots. Membership is an exact linear solve.
class VectorSpan {
 public:
  explicit VectorSpan(std::size_t length = 0) : length_(length) {}

  std::size_t length() const { return length_; }
  std::size_t dim() const { return basis_.size(); }
  /// Adds v; returns true if it was independent of the current span.
  bool insert(std::vector<Scalar> v);
  bool contains(std::vector<Scalar> v) const;
  const std::vector<std::vector<Scalar>>& basis() const { return basis_; }

 private:
  // Subtracts basis multiples; returns the index of the first nonzero left, or length_.
  std::size_t reduce(std::vector<Scalar>& v) const;

  std::size_t length_;
  std::vector<std::vector<Scalar>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace rankbar
