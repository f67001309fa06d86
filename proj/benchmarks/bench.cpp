#include <benchmark/benchmark.h>

#include "rankbar/barrier_lab.hpp"
#include "rankbar/decomposition.hpp"
#include "rankbar/poly_matrix.hpp"
#include "rankbar/random.hpp"

namespace {

using namespace rankbar;

Polynomial random_form(Rng& rng, std::size_t nv, std::uint32_t deg) {
  std::vector<Polynomial::Term> terms;
  for (const auto& m : monomials_of_degree(nv, deg)) {
    if (rng.chance(1, 2)) terms.emplace_back(m, Scalar(rng.uniform(-5, 5)));
  }
  return Polynomial::from_terms(nv, Basis::standard, std::move(terms));
}

// rows x rows matrix of rank `inner`, homogeneous of degree 2 in 3 variables.
PolyMatrix low_rank_matrix(std::size_t rows, std::size_t inner, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Polynomial> out(rows * rows, Polynomial(3));
  for (std::size_t k = 0; k < inner; ++k) {
    std::vector<Polynomial> u;
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < rows; ++i) {
      u.push_back(random_form(rng, 3, 1));
      v.push_back(random_form(rng, 3, 1));
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < rows; ++j) out[i * rows + j] += u[i] * v[j];
    }
  }
  return PolyMatrix(rows, rows, std::move(out));
}

void BM_BareissRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(rng.uniform(-100, 100));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_BareissRank)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ExactSymbolicRank(benchmark::State& state) {
  const auto m = low_rank_matrix(static_cast<std::size_t>(state.range(0)), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_symbolic_rank(m));
}
BENCHMARK(BM_ExactSymbolicRank)->Arg(3)->Arg(4)->Arg(5);

void BM_RandomizedSymbolicRank(benchmark::State& state) {
  const auto m = low_rank_matrix(static_cast<std::size_t>(state.range(0)), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(randomized_symbolic_rank(m, 7));
}
BENCHMARK(BM_RandomizedSymbolicRank)->Arg(3)->Arg(4)->Arg(5)->Arg(8);

void BM_HomDecompose(benchmark::State& state) {
  const auto m = low_rank_matrix(static_cast<std::size_t>(state.range(0)), 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(hom_rank_decompose(m, 2));
}
BENCHMARK(BM_HomDecompose)->Arg(3)->Arg(5);

void BM_BarrierCheck(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto l = random_linear_map(Family::waring, 3, 4, m, 0.5, 11);
  for (auto _ : state) benchmark::DoNotOptimize(verify_barrier(l, 5, 13));
}
BENCHMARK(BM_BarrierCheck)->Arg(4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
