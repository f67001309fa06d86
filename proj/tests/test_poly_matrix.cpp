#include <gtest/gtest.h>

#include "rankbar/error.hpp"
#include "support.hpp"

namespace rankbar {
namespace {

using testing::x;

PolyMatrix swap_matrix() {
  const auto x1 = x(2, 0);
  const auto x2 = x(2, 1);
  return PolyMatrix::from_rows({{x1, x2}, {x2, x1}});
}

TEST(SymbolicRank, Examples) {
  EXPECT_EQ(exact_symbolic_rank(swap_matrix()), 2U);
  EXPECT_EQ(exact_symbolic_rank(PolyMatrix(3, 2, 2)), 0U);
  const auto x1 = x(2, 0);
  const auto x2 = x(2, 1);
  EXPECT_EQ(exact_symbolic_rank(PolyMatrix::from_rows({{x1, x2}, {Scalar(3) * x1, Scalar(3) * x2}})), 1U);
}

TEST(SymbolicRank, RandomizedExamples) {
  EXPECT_EQ(randomized_symbolic_rank(swap_matrix(), 1000, 3, 1), 2U);
  Matrix c(3, 3, {Scalar(1), Scalar(2), Scalar(3), Scalar(2), Scalar(4), Scalar(6), Scalar(0), Scalar(1), Scalar(1)});
  EXPECT_EQ(randomized_symbolic_rank(PolyMatrix::constant(c, 2), 2, 1, 9), 2U);
}

TEST(SymbolicRank, AgreesWithMinorOracle) {
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng.below(4);
    const std::size_t cols = 1 + rng.below(4);
    const auto m = testing::random_matrix(rng, rows, cols, 1 + rng.below(3), static_cast<std::uint32_t>(rng.below(3)));
    ASSERT_EQ(exact_symbolic_rank(m), testing::minor_rank(m)) << "trial " << trial;
  }
}

TEST(SymbolicRank, RandomizedNeverExceedsExact) {
  Rng rng(103);
  std::size_t agree = 0;
  const int total = 300;
  for (int trial = 0; trial < total; ++trial) {
    const auto m = testing::random_matrix(rng, 1 + rng.below(5), 1 + rng.below(5), 1 + rng.below(3),
                                          1 + static_cast<std::uint32_t>(rng.below(3)));
    const auto exact = exact_symbolic_rank(m);
    const auto randomized = randomized_symbolic_rank(m, static_cast<std::uint64_t>(trial));
    ASSERT_LE(randomized, exact);
    agree += randomized == exact;
  }
  EXPECT_GE(agree * 100, static_cast<std::size_t>(total) * 99);
}

TEST(SymbolicRank, TinySampleRangeUnderestimatesOnly) {
  // With range 2 a polynomial like x(x-1) can vanish at every sample point.
  const auto x1 = x(1, 0);
  const auto m = PolyMatrix::from_rows({{x1 * x1 - x1}});
  EXPECT_EQ(exact_symbolic_rank(m), 1U);
  EXPECT_THROW(randomized_symbolic_rank(m, 2, 3, 0), ContractViolation);
  EXPECT_EQ(randomized_symbolic_rank(m, 3, 50, 0), 1U);
}

TEST(SymbolicRank, PrimeFieldRefusesSmallCharacteristicForLargeJobs) {
  const Field f = Field::prime(2147483647ULL);
  const auto one = Scalar::modular(1, f.modulus());
  const auto m = PolyMatrix::from_rows({{x(2, 0) * one, x(2, 1) * one}, {x(2, 1) * one, x(2, 0) * one}});
  EXPECT_EQ(exact_symbolic_rank(m), 2U);
  EXPECT_EQ(randomized_symbolic_rank(m, 7), 2U);
  EXPECT_THROW(randomized_symbolic_rank(m, f.modulus() + 1, 1, 0), ContractViolation);
}

TEST(SymbolicRank, PrimeFieldDetectsCharacteristicDependence) {
  // x (p + 1) - x = p x vanishes mod p.
  const std::uint64_t p = 2147483647ULL;
  const auto a = Scalar::in_field(mpq_class(static_cast<long>(p + 1)), Field::prime(p));
  const auto m = PolyMatrix::from_rows({{x(1, 0) * a - x(1, 0)}});
  EXPECT_EQ(exact_symbolic_rank(m), 0U);
}

TEST(MatrixSpace, MaxRankExamples) {
  EXPECT_EQ(max_rank_of_space(MatrixSpace(2, 2, {Matrix::unit(2, 2, 0, 0), Matrix::unit(2, 2, 1, 1)}), 1), 2U);
  const Scalar a[] = {Scalar(1), Scalar(2)};
  const Scalar b[] = {Scalar(3), Scalar(-1), Scalar(5)};
  EXPECT_EQ(max_rank_of_space(MatrixSpace(2, 3, {Matrix::outer(a, b)}), 1), 1U);
  EXPECT_EQ(max_rank_of_space(MatrixSpace(2, 2), 1), 0U);
}

MatrixSpace tensor_space(Rng& rng, std::size_t ambient, std::size_t du, std::size_t dv) {
  auto random_vec = [&] {
    std::vector<Scalar> v(ambient);
    for (auto& s : v) s = testing::small_int(rng, 4);
    return v;
  };
  std::vector<std::vector<Scalar>> us(du);
  std::vector<std::vector<Scalar>> vs(dv);
  for (auto& u : us) u = random_vec();
  for (auto& v : vs) v = random_vec();
  std::vector<Matrix> gens;
  for (const auto& u : us) {
    for (const auto& v : vs) gens.push_back(Matrix::outer(u, v));
  }
  return MatrixSpace(ambient, ambient, std::move(gens));
}

TEST(MatrixSpace, TensorProductSpaceRank) {
  Rng rng(41);
  EXPECT_EQ(max_rank_of_space(tensor_space(rng, 6, 2, 5), 3), 2U);
  int checked = 0;
  while (checked < 50) {
    const std::size_t ambient = 2 + rng.below(7);
    const std::size_t du = 1 + rng.below(std::min<std::size_t>(5, ambient));
    const std::size_t dv = 1 + rng.below(std::min<std::size_t>(5, ambient));
    auto s = tensor_space(rng, ambient, du, dv);
    // Random integer vectors can be dependent; the claim concerns true dimensions.
    if (s.dim() != du * dv) continue;
    ASSERT_EQ(max_rank_of_space(s, static_cast<std::uint64_t>(checked)), std::min(du, dv));
    ++checked;
  }
}

TEST(MatrixSpace, MembershipExamples) {
  const Matrix a = Matrix::unit(2, 2, 0, 1) + Matrix::unit(2, 2, 1, 1);
  const Matrix b = Matrix::unit(2, 2, 0, 0);
  MatrixSpace s(2, 2, {a, b});
  EXPECT_TRUE(space_membership(s, Matrix(2, 2)));
  EXPECT_TRUE(space_membership(s, a + Scalar(2) * b));
  EXPECT_FALSE(space_membership(MatrixSpace(2, 2, {Matrix::unit(2, 2, 1, 1)}), Matrix::unit(2, 2, 0, 0)));
  EXPECT_THROW(space_membership(s, Matrix(3, 3)), ContractViolation);
}

TEST(MatrixSpace, GeneratorsAreMembers) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Matrix> gens;
    for (std::size_t g = 0; g < 1 + rng.below(6); ++g) {
      Matrix m(3, 3);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = testing::small_int(rng, 2);
      }
      gens.push_back(m);
    }
    MatrixSpace s(3, 3, gens);
    const MatrixSpace copy = s;  // shares the cache
    for (const auto& g : gens) ASSERT_TRUE(copy.contains(g));
    EXPECT_LE(s.dim(), gens.size());
  }
}

TEST(CoefficientSpace, LinearPencil) {
  const Matrix a(2, 2, {Scalar(1), Scalar(2), Scalar(3), Scalar(4)});
  const Matrix b(2, 2, {Scalar(0), Scalar(1), Scalar(1), Scalar(0)});
  PolyMatrix m = PolyMatrix::constant(a, 2);
  std::vector<Polynomial> e;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) e.push_back(x(2, 0) * a(i, j) + x(2, 1) * b(i, j));
  }
  const auto s = coefficient_space(PolyMatrix(2, 2, e));
  EXPECT_EQ(s.dim(), 2U);
  EXPECT_TRUE(s.contains(a));
  EXPECT_TRUE(s.contains(b));
  EXPECT_FALSE(s.contains(Matrix::identity(2)));
}

TEST(CoefficientSpace, DimensionBounds) {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const auto d = static_cast<std::uint32_t>(1 + rng.below(4));
    std::vector<Polynomial> hom;
    for (std::size_t i = 0; i < 8; ++i) hom.push_back(testing::random_homogeneous(rng, n, d, 1 + rng.below(4)));
    const auto bound = binomial(n + d - 1, n - 1).rational();
    ASSERT_LE(mpq_class(static_cast<long>(coefficient_space(PolyVector(hom)).dim())), bound);

    const auto part = VariablePartition::uniform(d, n);
    std::vector<Polynomial> sm;
    for (std::size_t i = 0; i < 8; ++i) {
      sm.push_back(testing::random_sm_poly(rng, part, BlockSet::all(d), 1 + rng.below(5)));
    }
    std::size_t nd = 1;
    for (std::uint32_t k = 0; k < d; ++k) nd *= n;
    ASSERT_LE(coefficient_space(PolyVector(sm)).dim(), nd);
  }
}

TEST(RankFactorization, Examples) {
  const auto x1 = x(2, 0);
  const auto x2 = x(2, 1);
  const PolyVector v({x1, x2});
  const auto outer = PolyMatrix::outer(v, v);
  const auto f1 = rank_factorize(outer);
  EXPECT_EQ(f1.rank(), 1U);
  EXPECT_TRUE(f1.reconstructs(outer));

  const auto zero = PolyMatrix(2, 2, 2);
  EXPECT_EQ(rank_factorize(zero).rank(), 0U);

  const auto f2 = rank_factorize(swap_matrix());
  EXPECT_EQ(f2.rank(), 2U);
  EXPECT_TRUE(f2.reconstructs(swap_matrix()));
  EXPECT_FALSE(f2.reconstructs(outer));
}

TEST(RankFactorization, CheckedConstructorRejectsWrongTarget) {
  const auto x1 = x(1, 0);
  const auto m = PolyMatrix::from_rows({{x1}});
  const auto one = Polynomial::constant(1, Scalar(1));
  EXPECT_NO_THROW(RankFactorization(m, m, PolyMatrix::from_rows({{one}}), {one}));
  EXPECT_THROW(RankFactorization(m, m, PolyMatrix::from_rows({{x1}}), {one}), ContractViolation);
  // x1 * x1 / x1 = x1
  EXPECT_NO_THROW(RankFactorization(m, m, m, {x1}));
}

TEST(RankFactorization, ReconstructsRandomMatrices) {
  Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = testing::random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(3), 2);
    const auto f = rank_factorize(m);
    ASSERT_EQ(f.rank(), exact_symbolic_rank(m));
    ASSERT_TRUE(f.reconstructs(m)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace rankbar
