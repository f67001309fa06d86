#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rankbar/decomposition.hpp"
#include "rankbar/poly_matrix.hpp"
#include "rankbar/polynomial.hpp"

namespace rankbar {

// Variables y_{ij} (block i < D, coordinate j < n) are numbered i * n + j, so
// the block structure is VariablePartition::uniform(D, n).

/// The elementary symmetric polynomial of degree d evaluated at `forms`:
/// sum over d-subsets T of prod_{i in T} forms[i].
Polynomial sym_poly(std::size_t d, const std::vector<Polynomial>& forms);

struct PsiImage {
  std::size_t n = 0;
  std::size_t D = 0;
  std::size_t d = 0;
  /// Degree-d monomial in x (n variables) -> its coefficient, a polynomial in
  /// the D * n variables y.
  std::map<Monomial, Polynomial> coords;
};

/// Coefficients of Sym_d(sum_j y_{1j} x_j, ..., sum_j y_{Dj} x_j) with
/// respect to x. Requires D >= d >= 1.
PsiImage build_psi(std::size_t n, std::size_t D, std::size_t d);

/// Set-multilinear in the blocks and invariant under every permutation of
/// them. Blocks must all have the same size.
bool is_ssm(const Polynomial& p, const VariablePartition& blocks);

/// x_{i_1} ... x_{i_d} -> sum over injective slot-to-block assignments b of
/// prod_j y_{b(j), i_j}, with no normalization by multiplicities.
Polynomial polarize(const Monomial& mono, std::size_t D);

/// The polarizations of all degree-d monomials in n variables.
std::vector<Polynomial> polarization_basis(std::size_t n, std::size_t D, std::size_t d);

/// Every entry must lie in the span of polarization_basis(n, D, d).
VerificationResult validate_rank_method(const PolyMatrix& entries, std::size_t n, std::size_t D, std::size_t d);

}  // namespace rankbar
