#include <gtest/gtest.h>

#include "rankbar/decomposition.hpp"
#include "rankbar/error.hpp"
#include "support.hpp"

namespace rankbar {
namespace {

using testing::x;

std::vector<Scalar> ints(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (auto a : v) out.emplace_back(a);
  return out;
}

TEST(ShiftPoint, Examples) {
  const auto one = Polynomial::constant(3, Scalar(1));
  EXPECT_EQ(find_shift_point(std::vector{x(3, 0)}), ints({1, 0, 0}));
  EXPECT_EQ(find_shift_point(std::vector{one}), ints({0, 0, 0}));
  const auto a = x(2, 0) - Polynomial::constant(2, Scalar(1));
  const auto b = x(2, 1) - Polynomial::constant(2, Scalar(2));
  EXPECT_EQ(find_shift_point(std::vector{a, b}), ints({0, 0}));
}

TEST(ShiftPoint, AvoidsEveryDenominator) {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Polynomial> ts;
    for (std::size_t k = 0; k < 1 + rng.below(4); ++k) {
      auto t = testing::random_poly(rng, 2, 3, 3);
      if (!t.is_zero()) ts.push_back(t);
    }
    if (ts.empty()) continue;
    const auto a = find_shift_point(ts, ShiftSearch{16, 5});
    for (const auto& t : ts) ASSERT_FALSE(evaluate(t, a).is_zero());
  }
}

TEST(ShiftPoint, RandomFallbackStillSucceeds) {
  // prod_{i<3} (x - i) vanishes on the first three scanned points.
  Polynomial t = Polynomial::constant(1, Scalar(1));
  for (long i = 0; i < 3; ++i) t *= x(1, 0) - Polynomial::constant(1, Scalar(i));
  const auto a = find_shift_point(std::vector{t}, ShiftSearch{1, 9});
  EXPECT_FALSE(evaluate(t, a).is_zero());
}

void expect_identity(const PolyMatrix& m, int d, const SymbolicDecomposition& sd) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Polynomial sum(m.num_vars());
      for (const auto& [f, g] : sd.pairs) sum += homogeneous_component(f[i] * g[j], d);
      ASSERT_EQ(sum, m(i, j));
    }
  }
}

TEST(SymbolicDecompose, RankOneOuterProduct) {
  const PolyVector v({x(2, 0), x(2, 1)});
  const auto m = PolyMatrix::outer(v, v);
  const auto sd = symbolic_decompose(m, 2);
  EXPECT_EQ(sd.pairs.size(), 1U);
  expect_identity(m, 2, sd);
}

TEST(SymbolicDecompose, ZeroMatrix) { EXPECT_TRUE(symbolic_decompose(PolyMatrix(2, 3, 2), 2).pairs.empty()); }

TEST(SymbolicDecompose, DiagonalRankTwo) {
  const auto p = x(2, 0) * x(2, 1);
  const auto z = Polynomial(2);
  const auto m = PolyMatrix::from_rows({{p, z}, {z, p}});
  DecomposeOptions opts;
  opts.check_truncation = true;
  const auto sd = symbolic_decompose(m, 2, opts);
  EXPECT_EQ(sd.pairs.size(), 2U);
  expect_identity(m, 2, sd);
  for (const auto& t : sd.denominator_degrees) EXPECT_GE(t, 0);
}

TEST(SymbolicDecompose, ConstantMatrix) {
  const Matrix c(2, 2, {Scalar(1), Scalar(2), Scalar(2), Scalar(4)});
  const auto m = PolyMatrix::constant(c, 2);
  const auto sd = symbolic_decompose(m, 0);
  EXPECT_EQ(sd.pairs.size(), 1U);
  expect_identity(m, 0, sd);
}

TEST(SymbolicDecompose, RejectsInhomogeneousEntry) {
  const auto m = PolyMatrix::from_rows({{x(2, 0), x(2, 1) * x(2, 1)}});
  try {
    symbolic_decompose(m, 1);
    FAIL() << "expected a contract violation";
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("(1, 2)"), std::string::npos) << e.what();
  }
}

TEST(HomDecompose, Examples) {
  EXPECT_TRUE(hom_rank_decompose(PolyMatrix(2, 2, 2), 2).terms.empty());

  const PolyVector v({x(2, 0), x(2, 1)});
  const auto outer = PolyMatrix::outer(v, v);
  const auto h1 = hom_rank_decompose(outer, 2);
  EXPECT_LE(h1.terms.size(), 3U);
  EXPECT_TRUE(verify_decomposition(outer, h1));

  const auto p = x(2, 0) * x(2, 1);
  const auto z = Polynomial(2);
  const auto diag = PolyMatrix::from_rows({{p, z}, {z, p}});
  const auto h2 = hom_rank_decompose(diag, 2);
  EXPECT_LE(h2.terms.size(), 6U);
  EXPECT_EQ(h2.bound(), 6U);
  for (const auto& t : h2.terms) {
    EXPECT_EQ(t.deg_u + t.deg_v, 2);
    EXPECT_GE(t.deg_u, 0);
  }
  EXPECT_TRUE(verify_decomposition(diag, h2));
}

TEST(HomDecompose, TamperingIsDetected) {
  const PolyVector v({x(2, 0), x(2, 1)});
  const auto outer = PolyMatrix::outer(v, v);
  auto dec = hom_rank_decompose(outer, 2);
  ASSERT_FALSE(dec.terms.empty());
  auto entries = dec.terms[0].u.entries();
  entries[0] = entries[0] + entries[0];
  if (entries[0].is_zero()) entries[0] = Polynomial::constant(2, Scalar(1));
  dec.terms[0].u = PolyVector(entries);
  EXPECT_FALSE(verify_decomposition(outer, dec));
}

TEST(HomDecompose, HandBuiltSingleTerm) {
  const PolyVector u({x(2, 0), x(2, 1)});
  const PolyVector v({Polynomial::constant(2, Scalar(1)), Polynomial::constant(2, Scalar(-2))});
  HomDecomposition dec;
  dec.degree = 1;
  dec.symbolic_rank = 1;
  dec.terms.push_back(HomTerm{u, v, 1, 0});
  EXPECT_TRUE(verify_decomposition(PolyMatrix::outer(u, v), dec));
  dec.terms[0].deg_u = 0;
  dec.terms[0].deg_v = 1;
  EXPECT_FALSE(verify_decomposition(PolyMatrix::outer(u, v), dec));
}

TEST(HomDecompose, RandomRoundTrips) {
  Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = static_cast<std::uint32_t>(1 + rng.below(3));
    const auto m = testing::random_homogeneous_matrix(rng, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3), d,
                                                      1 + rng.below(2));
    DecomposeOptions opts;
    opts.check_truncation = true;
    const auto sd = symbolic_decompose(m, static_cast<int>(d), opts);
    ASSERT_EQ(sd.pairs.size(), exact_symbolic_rank(m));
    const auto h = hom_rank_decompose(m, static_cast<int>(d));
    ASSERT_LE(h.terms.size(), h.bound());
    ASSERT_TRUE(verify_decomposition(m, h));
  }
}

TEST(SMDecompose, Examples) {
  const auto part = VariablePartition::uniform(2, 2);  // x1 = {0, 1}, x2 = {2, 3}
  EXPECT_TRUE(sm_rank_decompose(PolyMatrix(2, 2, 4), part).terms.empty());

  const PolyVector u({x(4, 0), x(4, 1)});
  const PolyVector v({x(4, 2), x(4, 3)});
  const auto rank_one = PolyMatrix::outer(u, v);
  const auto s1 = sm_rank_decompose(rank_one, part);
  EXPECT_LE(s1.terms.size(), 4U);
  EXPECT_TRUE(verify_decomposition(rank_one, s1, part));

  // [[x11 x21, x11 x22], [x12 x21, x11 x21 + x12 x22]] has determinant x11^2 x21^2.
  const auto e = [](std::size_t a, std::size_t b) { return x(4, a) * x(4, b); };
  const auto m = PolyMatrix::from_rows({{e(0, 2), e(0, 3)}, {e(1, 2), e(0, 2) + e(1, 3)}});
  ASSERT_EQ(exact_symbolic_rank(m), 2U);
  const auto s2 = sm_rank_decompose(m, part);
  EXPECT_LE(s2.terms.size(), 8U);
  EXPECT_TRUE(verify_decomposition(m, s2, part));
  for (const auto& t : s2.terms) EXPECT_LE(t.blocks.span(), 2U);
}

TEST(SMDecompose, RejectsNonMultilinearEntry) {
  const auto part = VariablePartition::uniform(2, 2);
  const auto m = PolyMatrix::from_rows({{x(4, 0) * x(4, 1)}});
  EXPECT_THROW(sm_rank_decompose(m, part), ContractViolation);
}

TEST(SMDecompose, WrongTagIsDetected) {
  const auto part = VariablePartition::uniform(2, 1);
  const PolyVector u({x(2, 0)});
  const PolyVector v({x(2, 1)});
  SMDecomposition dec;
  dec.block_count = 2;
  dec.terms.push_back(SMTerm{u, v, BlockSet::of({0})});
  EXPECT_TRUE(verify_decomposition(PolyMatrix::outer(u, v), dec, part));
  dec.terms[0].blocks = BlockSet::of({1});
  EXPECT_FALSE(verify_decomposition(PolyMatrix::outer(u, v), dec, part));
}

TEST(SMDecompose, RandomRoundTrips) {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    const auto part = VariablePartition::uniform(d, 1 + rng.below(2));
    const auto m = testing::random_sm_matrix(rng, 1 + rng.below(3), 1 + rng.below(3), part, 1 + rng.below(2));
    const auto s = sm_rank_decompose(m, part);
    ASSERT_LE(s.terms.size(), s.bound());
    ASSERT_TRUE(verify_decomposition(m, s, part));
    for (const auto& t : s.terms) {
      for (const auto& p : t.u) ASSERT_TRUE(is_set_multilinear_in(p, part, t.blocks));
      for (const auto& p : t.v) ASSERT_TRUE(is_set_multilinear_in(p, part, t.blocks.complement(d)));
    }
  }
}

TEST(Decompose, PrimeFieldInput) {
  const std::uint64_t p = 2305843009213693951ULL;
  const auto one = Scalar::modular(1, p);
  const PolyVector v({x(2, 0) * one, x(2, 1) * one});
  const auto m = PolyMatrix::outer(v, v);
  const auto h = hom_rank_decompose(m, 2);
  EXPECT_TRUE(verify_decomposition(m, h));
}

}  // namespace
}  // namespace rankbar
