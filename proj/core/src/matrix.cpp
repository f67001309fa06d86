#include "rankbar/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "rankbar/error.hpp"

namespace rankbar {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require(data_.size() == rows * cols, "matrix data size does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  require(i < rows && j < cols, "unit matrix index out of range");
  Matrix m(rows, cols);
  m(i, j) = Scalar(1);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
  for (auto& s : data_) s *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "matrix shape mismatch in product");
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  }
  return r;
}

Matrix Matrix::outer(std::span<const Scalar> a, std::span<const Scalar> b) {
  Matrix r(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = a[i] * b[j];
  }
  return r;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::size_t rank(const Matrix& input) {
  Matrix m = input;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    }
    const Scalar inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    ++r;
  }
  return r;
}

std::size_t VectorSpan::reduce(std::vector<Scalar>& v) const {
  require(v.size() == length_, "vector length does not match the span");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    if (v[p].is_zero()) continue;
    const Scalar f = v[p];
    const auto& row = basis_[k];
    for (std::size_t j = p; j < length_; ++j) {
      if (!row[j].is_zero()) v[j] -= f * row[j];
    }
  }
  std::size_t first = 0;
  while (first < length_ && v[first].is_zero()) ++first;
  return first;
}

bool VectorSpan::insert(std::vector<Scalar> v) {
  std::size_t p = reduce(v);
  if (p == length_) return false;
  const Scalar inv = v[p].inverse();
  for (std::size_t j = p; j < length_; ++j) v[j] *= inv;
  basis_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool VectorSpan::contains(std::vector<Scalar> v) const { return reduce(v) == length_; }

}  // namespace rankbar
