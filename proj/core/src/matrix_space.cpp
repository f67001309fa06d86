#include <map>
#include <mutex>

#include "rankbar/error.hpp"
#include "rankbar/poly_matrix.hpp"

namespace rankbar {

struct MatrixSpace::Cache {
  std::once_flag once;
  VectorSpan span;
  std::vector<Matrix> basis;
};

MatrixSpace::MatrixSpace(std::size_t rows, std::size_t cols, std::vector<Matrix> generators)
    : rows_(rows), cols_(cols), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_) {
    require(g.rows() == rows_ && g.cols() == cols_, "MatrixSpace generators must share the ambient shape");
  }
}

const MatrixSpace::Cache& MatrixSpace::cache() const {
  std::call_once(cache_->once, [this] {
    // Row-major vectorization, exact echelon reduction.
    cache_->span = VectorSpan(rows_ * cols_);
    for (const auto& g : generators_) {
      if (cache_->span.insert(std::vector<Scalar>(g.data().begin(), g.data().end()))) cache_->basis.push_back(g);
    }
  });
  return *cache_;
}

std::size_t MatrixSpace::dim() const { return cache().span.dim(); }

const std::vector<Matrix>& MatrixSpace::reduced_basis() const { return cache().basis; }

bool MatrixSpace::contains(const Matrix& a) const {
  require(a.rows() == rows_ && a.cols() == cols_, "membership test: matrix shape does not match the space");
  return cache().span.contains(std::vector<Scalar>(a.data().begin(), a.data().end()));
}

std::size_t max_rank_of_space(const MatrixSpace& s, std::uint64_t seed) {
  const auto& basis = s.reduced_basis();
  if (basis.empty()) return 0;
  const std::size_t k = basis.size();
  PolyMatrix sym(s.ambient_rows(), s.ambient_cols(), k);
  for (std::size_t i = 0; i < s.ambient_rows(); ++i) {
    for (std::size_t j = 0; j < s.ambient_cols(); ++j) {
      std::vector<Polynomial::Term> terms;
      for (std::size_t v = 0; v < k; ++v) {
        if (!basis[v](i, j).is_zero()) terms.emplace_back(Monomial::unit(k, v), basis[v](i, j));
      }
      sym.set(i, j, Polynomial::from_terms(k, Basis::standard, std::move(terms)));
    }
  }
  return randomized_symbolic_rank(sym, seed);
}

MatrixSpace coefficient_space(const PolyMatrix& input) {
  const PolyMatrix m = input.to_basis(Basis::divided);
  std::map<Monomial, Matrix> coeffs;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& [mono, c] : m(i, j).terms()) {
        auto [it, ins] = coeffs.try_emplace(mono, m.rows(), m.cols());
        it->second(i, j) = c;
      }
    }
  }
  std::vector<Matrix> gens;
  gens.reserve(coeffs.size());
  for (auto& [mono, mat] : coeffs) gens.push_back(std::move(mat));
  return MatrixSpace(m.rows(), m.cols(), std::move(gens));
}

MatrixSpace coefficient_space(const PolyVector& v) {
  return coefficient_space(PolyMatrix(v.size(), 1, std::vector<Polynomial>(v.begin(), v.end())));
}

bool space_membership(const MatrixSpace& s, const Matrix& a) { return s.contains(a); }

}  // namespace rankbar
