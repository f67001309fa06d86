#pragma once

// Seeded generators and brute-force oracles shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rankbar/poly_matrix.hpp"
#include "rankbar/polynomial.hpp"
#include "rankbar/random.hpp"

namespace rankbar::testing {

inline Scalar small_int(Rng& rng, std::int64_t bound = 5) {
  return Scalar(static_cast<long>(rng.uniform(-bound, bound)));
}

inline Scalar small_nonzero(Rng& rng, std::int64_t bound = 5) {
  long v = static_cast<long>(rng.uniform(1, bound));
  return Scalar(rng.chance(1, 2) ? v : -v);
}

inline Monomial random_monomial(Rng& rng, std::size_t nv, std::uint32_t deg) {
  std::vector<std::uint32_t> e(nv, 0);
  for (std::uint32_t k = 0; k < deg; ++k) ++e[rng.below(nv)];
  return Monomial(std::move(e));
}

inline Polynomial random_homogeneous(Rng& rng, std::size_t nv, std::uint32_t deg, std::size_t terms) {
  std::vector<Polynomial::Term> t;
  for (std::size_t k = 0; k < terms; ++k) t.emplace_back(random_monomial(rng, nv, deg), small_nonzero(rng));
  return Polynomial::from_terms(nv, Basis::standard, std::move(t));
}

inline Polynomial random_poly(Rng& rng, std::size_t nv, std::uint32_t max_deg, std::size_t terms,
                              Basis basis = Basis::standard) {
  std::vector<Polynomial::Term> t;
  for (std::size_t k = 0; k < terms; ++k) {
    const auto deg = static_cast<std::uint32_t>(rng.below(max_deg + 1));
    t.emplace_back(random_monomial(rng, nv, deg), small_nonzero(rng));
  }
  return Polynomial::from_terms(nv, basis, std::move(t));
}

/// Product of a random rows x inner and inner x cols matrix with homogeneous
/// entries of degrees a and deg - a: rank at most `inner`, every entry
/// homogeneous of degree `deg`.
inline PolyMatrix random_homogeneous_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t nv,
                                            std::uint32_t deg, std::size_t inner) {
  const auto a = static_cast<std::uint32_t>(rng.below(deg + 1));
  std::vector<Polynomial> out(rows * cols, Polynomial(nv));
  for (std::size_t k = 0; k < inner; ++k) {
    std::vector<Polynomial> u;
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < rows; ++i) u.push_back(random_homogeneous(rng, nv, a, 1 + rng.below(2)));
    for (std::size_t j = 0; j < cols; ++j) v.push_back(random_homogeneous(rng, nv, deg - a, 1 + rng.below(2)));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += u[i] * v[j];
    }
  }
  return PolyMatrix(rows, cols, std::move(out));
}

/// Entries of degree <= max_deg; about half the instances are rank-deficient.
inline PolyMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t nv, std::uint32_t max_deg) {
  if (rng.chance(1, 2)) {
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < rows * cols; ++k) out.push_back(random_poly(rng, nv, max_deg, 1 + rng.below(3)));
    return PolyMatrix(rows, cols, std::move(out));
  }
  const std::size_t inner = 1 + rng.below(std::max<std::size_t>(1, std::min(rows, cols) - 1));
  const std::uint32_t d1 = max_deg == 0 ? 0 : static_cast<std::uint32_t>(rng.below(max_deg + 1));
  std::vector<Polynomial> out(rows * cols, Polynomial(nv));
  for (std::size_t k = 0; k < inner; ++k) {
    std::vector<Polynomial> u;
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < rows; ++i) u.push_back(random_poly(rng, nv, d1, 1 + rng.below(2)));
    for (std::size_t j = 0; j < cols; ++j) v.push_back(random_poly(rng, nv, max_deg - d1, 1 + rng.below(2)));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += u[i] * v[j];
    }
  }
  return PolyMatrix(rows, cols, std::move(out));
}

/// A set-multilinear polynomial using exactly the blocks in s.
inline Polynomial random_sm_poly(Rng& rng, const VariablePartition& part, BlockSet s, std::size_t terms) {
  std::vector<Polynomial::Term> t;
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> e(part.num_vars(), 0);
    for (auto b : s.elements()) {
      const auto& block = part.block(b);
      ++e[block[rng.below(block.size())]];
    }
    t.emplace_back(Monomial(std::move(e)), small_nonzero(rng));
  }
  return Polynomial::from_terms(part.num_vars(), Basis::standard, std::move(t));
}

/// Sum of `inner` products u (x) v with u set-multilinear in blocks s and v in
/// the complement, so entries are set-multilinear in all blocks.
inline PolyMatrix random_sm_matrix(Rng& rng, std::size_t rows, std::size_t cols, const VariablePartition& part,
                                   std::size_t inner) {
  const std::size_t d = part.block_count();
  std::vector<Polynomial> out(rows * cols, Polynomial(part.num_vars()));
  for (std::size_t k = 0; k < inner; ++k) {
    const BlockSet s(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << d)));
    const BlockSet rest = s.complement(d);
    std::vector<Polynomial> u;
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < rows; ++i) u.push_back(random_sm_poly(rng, part, s, 1 + rng.below(2)));
    for (std::size_t j = 0; j < cols; ++j) v.push_back(random_sm_poly(rng, part, rest, 1 + rng.below(2)));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += u[i] * v[j];
    }
  }
  return PolyMatrix(rows, cols, std::move(out));
}

/// Determinant by cofactor expansion along the first row.
inline Polynomial laplace_det(const std::vector<std::vector<Polynomial>>& a) {
  const std::size_t k = a.size();
  if (k == 1) return a[0][0];
  Polynomial det(a[0][0].num_vars());
  for (std::size_t c = 0; c < k; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(std::move(row));
    }
    Polynomial term = a[0][c] * laplace_det(minor);
    if (c % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Symbolic rank as the size of the largest nonvanishing minor.
inline std::size_t minor_rank(const PolyMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k >= 1; --k) {
    for (const auto& rs : subsets(m.rows(), k)) {
      for (const auto& cs : subsets(m.cols(), k)) {
        std::vector<std::vector<Polynomial>> a;
        for (auto r : rs) {
          std::vector<Polynomial> row;
          for (auto c : cs) row.push_back(m(r, c));
          a.push_back(std::move(row));
        }
        if (!laplace_det(a).is_zero()) return k;
      }
    }
  }
  return 0;
}

inline Polynomial P(std::size_t nv, std::initializer_list<std::pair<std::vector<std::uint32_t>, long>> terms) {
  std::vector<Polynomial::Term> t;
  for (const auto& [e, c] : terms) t.emplace_back(Monomial(e), Scalar(c));
  return Polynomial::from_terms(nv, Basis::standard, std::move(t));
}

inline Polynomial x(std::size_t nv, std::size_t i) { return Polynomial::variable(nv, i); }

}  // namespace rankbar::testing
