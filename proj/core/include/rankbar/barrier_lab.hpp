#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rankbar/rank_methods.hpp"

namespace rankbar {

/// Nonzero entries of random maps are drawn uniformly from +-[1, kMapEntryBound].
inline constexpr std::int64_t kMapEntryBound = 9;
/// Coefficients of random dense inputs are uniform in [-kInputBound, kInputBound].
inline constexpr std::int64_t kInputBound = 10;

/// Every basis image is an independent m x m matrix whose entries are
/// nonzero with probability `density`.
LinearMap random_linear_map(Family family, std::size_t n, std::size_t d, std::size_t m, double density,
                            std::uint64_t seed, const Field& field = Field::rational());

/// A dense element of the domain: a polynomial of degree <= d with every
/// coefficient drawn, or a fully populated tensor.
MapInput random_dense_input(Family family, std::size_t n, std::size_t d, std::uint64_t seed,
                            const Field& field = Field::rational());

/// A random simple element: l^d for an affine form l, or a rank-one tensor.
MapInput random_simple_input(Family family, std::size_t n, std::size_t d, std::uint64_t seed,
                             const Field& field = Field::rational());

/// Randomized symbolic rank of the symbolic image of L, i.e. the maximum rank
/// of L on simple elements (with one-sided error).
std::size_t estimate_r(const LinearMap& l, std::uint64_t seed);

struct BarrierReport {
  Family family = Family::waring;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t r = 0;
  std::uint64_t per_unit = 0;
  std::uint64_t barrier = 0;
  std::size_t observed_max_rank = 0;
  std::size_t trials = 0;
  std::size_t membership_failures = 0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ranks;
};

struct BarrierOptions {
  /// Worker threads for the trials; 0 picks the hardware concurrency. The
  /// report does not depend on this value.
  unsigned threads = 1;
};

/// Draws `trials` dense inputs, records rank(L(f)) and whether L(f) lies in
/// the coefficient space of the symbolic image, and compares the maximum
/// against r times the per-unit barrier.
BarrierReport verify_barrier(const LinearMap& l, std::size_t trials, std::uint64_t seed,
                             const BarrierOptions& opts = {});

struct GapRow {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t waring_barrier = 0;
  std::uint64_t tensor_barrier = 0;
  ReferenceValues reference;
};

GapRow gap_report(std::size_t n, std::size_t d);

}  // namespace rankbar
