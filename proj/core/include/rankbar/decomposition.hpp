#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankbar/poly_matrix.hpp"

namespace rankbar {

struct ShiftSearch {
  /// Number of grid points tried in the deterministic scan before switching
  /// to seeded random sampling (per grid size).
  std::uint64_t scan_limit = 1U << 16;
  std::uint64_t seed = 0;
};

/// A point a with prod_i t_i(a) != 0.
///
/// The grid {0..g-1}^n starts at g = deg(prod t_i) + 1 and doubles on
/// failure. Points are scanned in order of increasing coordinate sum, and
/// lexicographically (largest first coordinate first) within one sum, so
/// [x1] gives (1, 0, ..., 0) and anything nonvanishing at 0 gives 0.
std::vector<Scalar> find_shift_point(std::span<const Polynomial> denominators, const ShiftSearch& search = {});

using PolyVectorPair = std::pair<PolyVector, PolyVector>;

struct SymbolicDecomposition {
  /// (f_i, g_i) with M = sum_i H_d[f_i (x) g_i]; f_i, g_i have degree <= d.
  std::vector<PolyVectorPair> pairs;
  std::vector<Scalar> shift;
  /// Degrees of the rank-factorization denominators t_i (reporting only).
  std::vector<int> denominator_degrees;
};

struct DecomposeOptions {
#ifdef NDEBUG
  bool check_truncation = false;
#else
  bool check_truncation = true;
#endif
  ShiftSearch shift;
};

/// Constructive symbolic decomposition of a matrix whose entries are all
/// homogeneous of degree d: rank-factorize over F(x), shift by a point where
/// every denominator is nonzero, expand 1/t_i as a geometric series truncated
/// at power d, and keep components of degree <= d. Returns exactly
/// exact_symbolic_rank(m) pairs.
SymbolicDecomposition symbolic_decompose(const PolyMatrix& m, int d, const DecomposeOptions& opts = {});

struct HomTerm {
  PolyVector u;
  PolyVector v;
  int deg_u = 0;
  int deg_v = 0;
};

struct HomDecomposition {
  int degree = 0;
  std::size_t symbolic_rank = 0;
  std::vector<HomTerm> terms;
  /// r * (d + 1).
  std::size_t bound() const { return symbolic_rank * static_cast<std::size_t>(degree + 1); }
};

/// Splits each symbolic pair as sum_k H_k[f] (x) H_{d-k}[g]; at most r(d+1)
/// nonzero terms. Throws ContractViolation on a non-homogeneous entry.
HomDecomposition hom_rank_decompose(const PolyMatrix& m, int d, const DecomposeOptions& opts = {});

struct SMTerm {
  PolyVector u;
  PolyVector v;
  BlockSet blocks;  // u is set-multilinear in these blocks, v in the rest
};

struct SMDecomposition {
  std::size_t block_count = 0;
  std::size_t symbolic_rank = 0;
  std::vector<SMTerm> terms;
  /// r * 2^d.
  std::size_t bound() const { return symbolic_rank << block_count; }
};

/// Splits each symbolic pair as sum_S H^SM_S[f] (x) H^SM_{[d]\S}[g]; at most
/// r * 2^d nonzero terms. Every entry must be set-multilinear of degree d in
/// all d blocks of the partition.
SMDecomposition sm_rank_decompose(const PolyMatrix& m, const VariablePartition& part,
                                  const DecomposeOptions& opts = {});

struct VerificationResult {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Exact check of sum_i u_i (x) v_i == m plus per-term homogeneity.
VerificationResult verify_decomposition(const PolyMatrix& m, const HomDecomposition& dec);
/// Exact check of sum_i u_i (x) v_i == m plus per-term set-multilinearity.
VerificationResult verify_decomposition(const PolyMatrix& m, const SMDecomposition& dec, const VariablePartition& part);

}  // namespace rankbar
