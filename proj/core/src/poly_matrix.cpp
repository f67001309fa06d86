#include "rankbar/poly_matrix.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

#include "rankbar/error.hpp"
#include "rankbar/random.hpp"

namespace rankbar {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars, Basis basis)
    : rows_(rows), cols_(cols), num_vars_(num_vars), basis_(basis), entries_(rows * cols, Polynomial(num_vars, basis)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(entries_.size() == rows * cols, "PolyMatrix entry count does not match its shape");
  if (!entries_.empty()) {
    num_vars_ = entries_[0].num_vars();
    basis_ = entries_[0].basis();
  }
  for (const auto& e : entries_) {
    require(e.num_vars() == num_vars_ && e.basis() == basis_, "PolyMatrix entries must share num_vars and basis");
  }
}

PolyMatrix PolyMatrix::constant(const Matrix& m, std::size_t num_vars, Basis basis) {
  PolyMatrix r(m.rows(), m.cols(), num_vars, basis);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r.entries_[i * m.cols() + j] = Polynomial::constant(num_vars, m(i, j), basis);
  }
  return r;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Polynomial>>& rows) {
  require(!rows.empty(), "from_rows needs at least one row");
  const std::size_t cols = rows[0].size();
  std::vector<Polynomial> flat;
  for (const auto& r : rows) {
    require(r.size() == cols, "ragged rows in PolyMatrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PolyMatrix(rows.size(), cols, std::move(flat));
}

PolyMatrix PolyMatrix::outer(const PolyVector& u, const PolyVector& v) {
  std::vector<Polynomial> flat;
  flat.reserve(u.size() * v.size());
  for (const auto& a : u) {
    for (const auto& b : v) flat.push_back(a * b);
  }
  PolyMatrix r(u.size(), v.size(), std::move(flat));
  if (r.entries_.empty()) {
    r.num_vars_ = u.size() ? u.num_vars() : v.num_vars();
  }
  return r;
}

void PolyMatrix::set(std::size_t i, std::size_t j, Polynomial p) {
  require(i < rows_ && j < cols_, "PolyMatrix index out of range");
  require(p.num_vars() == num_vars_ && p.basis() == basis_, "entry does not match the matrix's ring");
  entries_[i * cols_ + j] = std::move(p);
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

bool PolyMatrix::is_homogeneous_of(int d) const {
  return std::all_of(entries_.begin(), entries_.end(), [d](const Polynomial& p) { return p.is_homogeneous_of(d); });
}

Field PolyMatrix::field() const {
  for (const auto& e : entries_) {
    for (const auto& t : e.terms()) {
      if (!t.second.is_rational()) return t.second.field();
    }
  }
  return Field::rational();
}

Matrix PolyMatrix::evaluate(std::span<const Scalar> point) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = rankbar::evaluate((*this)(i, j), point);
  }
  return r;
}

PolyMatrix PolyMatrix::to_basis(Basis b) const {
  if (b == basis_) return *this;
  PolyMatrix r(rows_, cols_, num_vars_, b);
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = basis_convert(entries_[k], b);
  return r;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "PolyMatrix shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

struct BareissTrace {
  std::size_t rank = 0;
  std::vector<Polynomial> pivots;                // p_0 .. p_{r-1}
  std::vector<std::vector<Polynomial>> columns;  // col_k, indexed by original row
  std::vector<std::vector<Polynomial>> rows;     // row_k, indexed by original column
};

// Pivot preference: fewest terms, then graded-lex smallest leading monomial;
// position breaks remaining ties through the scan order.
bool better_pivot(const Polynomial& a, const Polynomial& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.leading_term().first < b.leading_term().first;
}

BareissTrace bareiss(const PolyMatrix& input, bool record) {
  const PolyMatrix m = input.to_basis(Basis::standard);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t nv = m.num_vars();
  std::vector<Polynomial> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Polynomial& { return a[i * cols + j]; };
  std::vector<std::size_t> row_of(rows);
  std::vector<std::size_t> col_of(cols);
  for (std::size_t i = 0; i < rows; ++i) row_of[i] = i;
  for (std::size_t j = 0; j < cols; ++j) col_of[j] = j;

  BareissTrace trace;
  Polynomial prev = Polynomial::constant(nv, Scalar(1));
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        const auto& e = at(i, j);
        if (e.is_zero()) continue;
        if (!best || better_pivot(e, at(best->first, best->second))) best = {i, j};
      }
    }
    if (!best) break;
    auto [pi, pj] = *best;
    if (pi != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(k, j), at(pi, j));
      std::swap(row_of[k], row_of[pi]);
    }
    if (pj != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pj));
      std::swap(col_of[k], col_of[pj]);
    }
    const Polynomial pivot = at(k, k);
    if (record) {
      std::vector<Polynomial> col(rows, Polynomial(nv));
      std::vector<Polynomial> row(cols, Polynomial(nv));
      for (std::size_t i = k; i < rows; ++i) col[row_of[i]] = at(i, k);
      for (std::size_t j = k; j < cols; ++j) row[col_of[j]] = at(k, j);
      trace.columns.push_back(std::move(col));
      trace.rows.push_back(std::move(row));
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Polynomial lead = at(i, k);
      for (std::size_t j = k + 1; j < cols; ++j) {
        Polynomial num = pivot * at(i, j);
        if (!lead.is_zero() && !at(k, j).is_zero()) num -= lead * at(k, j);
        auto q = divide_exact(num, prev);
        if (!q) throw std::logic_error("Bareiss step produced an inexact division (internal error)");
        at(i, j) = std::move(*q);
      }
      at(i, k) = Polynomial(nv);
    }
    trace.pivots.push_back(pivot);
    prev = pivot;
    ++trace.rank;
  }
  return trace;
}

}  // namespace

std::size_t exact_symbolic_rank(const PolyMatrix& m) { return bareiss(m, false).rank; }

std::uint64_t default_sample_range(const PolyMatrix& m) {
  const std::uint64_t deg = static_cast<std::uint64_t>(std::max(0, m.max_degree()));
  const std::uint64_t dim = std::max(m.rows(), m.cols());
  return std::max<std::uint64_t>(2, 100 * deg * dim);
}

std::size_t randomized_symbolic_rank(const PolyMatrix& m, std::uint64_t sample_range, unsigned trials,
                                     std::uint64_t seed) {
  require(trials >= 1, "randomized rank needs at least one trial");
  const int deg = std::max(0, m.max_degree());
  if (sample_range <= static_cast<std::uint64_t>(deg)) {
    throw ContractViolation("sample range " + std::to_string(sample_range) + " must exceed the max entry degree " +
                            std::to_string(deg));
  }
  const Field f = m.field();
  if (!f.is_rational()) {
    const std::uint64_t floor = 100ULL * static_cast<std::uint64_t>(deg) * std::max(m.rows(), m.cols());
    if (f.modulus() < floor) {
      throw ContractViolation("prime field too small for randomized rank: p = " + std::to_string(f.modulus()) +
                              " < 100*deg*dim = " + std::to_string(floor));
    }
    require(sample_range <= f.modulus(), "sample range exceeds the field size");
  }
  const std::size_t full = std::min(m.rows(), m.cols());
  std::size_t best = 0;
  std::vector<Scalar> point(m.num_vars());
  for (unsigned t = 0; t < trials && best < full; ++t) {
    Rng rng = Rng::stream(seed, t);
    for (auto& x : point) {
      x = f.is_rational() ? Scalar(static_cast<long>(rng.below(sample_range)))
                          : Scalar::modular(rng.below(sample_range), f.modulus());
    }
    best = std::max(best, rank(m.evaluate(point)));
  }
  return best;
}

std::size_t randomized_symbolic_rank(const PolyMatrix& m, std::uint64_t seed) {
  return randomized_symbolic_rank(m, default_sample_range(m), kDefaultRankTrials, seed);
}

// ---------------------------------------------------------------------------

RankFactorization::RankFactorization(const PolyMatrix& target, PolyMatrix left, PolyMatrix right,
                                     std::vector<Polynomial> denominators)
    : left_(std::move(left)), right_(std::move(right)), denominators_(std::move(denominators)) {
  require(left_.cols() == denominators_.size() && right_.rows() == denominators_.size(),
          "factorization inner dimensions disagree");
  require(left_.rows() == target.rows() && right_.cols() == target.cols(), "factorization shape mismatch");
  for (const auto& t : denominators_) require(!t.is_zero(), "zero denominator in factorization");
  require(reconstructs(target), "factorization does not reconstruct the target matrix");
}

PolyVector RankFactorization::left_column(std::size_t i) const {
  std::vector<Polynomial> v;
  for (std::size_t r = 0; r < left_.rows(); ++r) v.push_back(left_(r, i));
  return PolyVector(std::move(v));
}

PolyVector RankFactorization::right_row(std::size_t i) const {
  std::vector<Polynomial> v;
  for (std::size_t c = 0; c < right_.cols(); ++c) v.push_back(right_(i, c));
  return PolyVector(std::move(v));
}

bool RankFactorization::reconstructs(const PolyMatrix& target) const {
  const PolyMatrix m = target.to_basis(Basis::standard);
  if (left_.rows() != m.rows() || right_.cols() != m.cols()) return false;
  const std::size_t nv = m.num_vars();
  // Accumulate N / D = sum_i X_i / t_i without cancelling, then compare N with D*M.
  Polynomial den = Polynomial::constant(nv, Scalar(1));
  std::vector<Polynomial> num(m.rows() * m.cols(), Polynomial(nv));
  for (std::size_t i = 0; i < rank(); ++i) {
    const Polynomial t = basis_convert(denominators_[i], Basis::standard);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const Polynomial lr = basis_convert(left_(r, i), Basis::standard);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        auto& n = num[r * m.cols() + c];
        n = n * t + den * (lr * basis_convert(right_(i, c), Basis::standard));
      }
    }
    den *= t;
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (num[r * m.cols() + c] != den * m(r, c)) return false;
    }
  }
  return true;
}

RankFactorization rank_factorize(const PolyMatrix& input) {
  const BareissTrace tr = bareiss(input, true);
  const std::size_t nv = input.num_vars();
  const std::size_t r = tr.rank;
  PolyMatrix left(input.rows(), r, nv);
  PolyMatrix right(r, input.cols(), nv);
  std::vector<Polynomial> denoms;
  denoms.reserve(r);
  Polynomial prev = Polynomial::constant(nv, Scalar(1));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < input.rows(); ++i) left.set(i, k, tr.columns[k][i]);
    for (std::size_t j = 0; j < input.cols(); ++j) right.set(k, j, tr.rows[k][j]);
    denoms.push_back(prev * tr.pivots[k]);
    prev = tr.pivots[k];
  }
  return RankFactorization(RankFactorization::Trusted{}, std::move(left), std::move(right), std::move(denoms));
}

}  // namespace rankbar
