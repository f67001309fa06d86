#include "rankbar/barrier_lab.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rankbar/error.hpp"
#include "rankbar/random.hpp"

namespace rankbar {
namespace {

// Stream indices, kept apart so that the trial streams never coincide with
// the ones used for r.
constexpr std::uint64_t kRankStream = ~std::uint64_t{0};

Scalar draw(Rng& rng, std::int64_t lo, std::int64_t hi, const Field& field) {
  return Scalar::in_field(mpq_class(static_cast<long>(rng.uniform(lo, hi))), field);
}

Scalar draw_nonzero(Rng& rng, const Field& field) {
  std::int64_t v = rng.uniform(1, kMapEntryBound);
  if (rng.chance(1, 2)) v = -v;
  return Scalar::in_field(mpq_class(static_cast<long>(v)), field);
}

bool keep(Rng& rng, double density) {
  if (density >= 1.0) return true;
  constexpr std::uint64_t kScale = std::uint64_t{1} << 53;
  return rng.below(kScale) < static_cast<std::uint64_t>(density * static_cast<double>(kScale));
}

}  // namespace

LinearMap random_linear_map(Family family, std::size_t n, std::size_t d, std::size_t m, double density,
                            std::uint64_t seed, const Field& field) {
  require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
  LinearMap l(family, n, d, m);
  Rng rng(seed);
  for (const auto& key : l.basis()) {
    Matrix img(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (keep(rng, density)) img(i, j) = draw_nonzero(rng, field);
      }
    }
    l.set_image(key, std::move(img));
  }
  return l;
}

MapInput random_dense_input(Family family, std::size_t n, std::size_t d, std::uint64_t seed, const Field& field) {
  Rng rng(seed);
  if (family == Family::waring) {
    std::vector<Polynomial::Term> terms;
    for (auto& mono : monomials_up_to_degree(n, static_cast<std::uint32_t>(d))) {
      terms.emplace_back(std::move(mono), draw(rng, -kInputBound, kInputBound, field));
    }
    return Polynomial::from_terms(n, Basis::standard, std::move(terms));
  }
  Tensor t(n, d);
  LinearMap shape(Family::tensor, n, d, 1);
  for (const auto& idx : shape.basis()) t.set(idx, draw(rng, -kInputBound, kInputBound, field));
  return t;
}

MapInput random_simple_input(Family family, std::size_t n, std::size_t d, std::uint64_t seed, const Field& field) {
  Rng rng(seed);
  if (family == Family::waring) {
    Polynomial l = Polynomial::constant(n, draw(rng, -kInputBound, kInputBound, field));
    for (std::size_t i = 0; i < n; ++i) {
      l += Polynomial::variable(n, i) * draw(rng, -kInputBound, kInputBound, field);
    }
    return l.pow(static_cast<unsigned>(d));
  }
  std::vector<std::vector<Scalar>> factors(d, std::vector<Scalar>(n));
  for (auto& f : factors) {
    for (auto& x : f) x = draw(rng, -kInputBound, kInputBound, field);
  }
  return Tensor::rank_one(factors);
}

std::size_t estimate_r(const LinearMap& l, std::uint64_t seed) {
  if (l.images().empty()) return 0;
  return randomized_symbolic_rank(symbolic_image(l), seed);
}

BarrierReport verify_barrier(const LinearMap& l, std::size_t trials, std::uint64_t seed, const BarrierOptions& opts) {
  require(trials >= 1, "verify_barrier needs at least one trial");
  BarrierReport rep;
  rep.family = l.family();
  rep.n = l.n();
  rep.d = l.d();
  rep.m = l.m();
  rep.trials = trials;
  rep.seed = seed;
  rep.per_unit = barrier_bound(l.family(), l.n(), l.d());

  Field field = Field::rational();
  for (const auto& [key, img] : l.images()) {
    for (const auto& x : img.data()) {
      if (!x.field().is_rational()) field = x.field();
    }
  }

  const PolyMatrix image = symbolic_image(l);
  rep.r = l.images().empty() ? 0 : randomized_symbolic_rank(image, Rng::stream(seed, kRankStream).next());
  const MatrixSpace space = coefficient_space(image);
  require(rep.per_unit == 0 || rep.r <= ~std::uint64_t{0} / rep.per_unit, "barrier value overflows 64 bits");
  rep.barrier = rep.r * rep.per_unit;

  rep.ranks.assign(trials, 0);
  std::vector<char> member(trials, 1);
  auto run = [&](std::size_t t) {
    const std::uint64_t trial_seed = Rng::stream(seed, t).next();
    const MapInput f = random_dense_input(l.family(), l.n(), l.d(), trial_seed, field);
    const Matrix a = std::visit([&l](const auto& x) { return apply_map(l, x); }, f);
    rep.ranks[t] = rank(a);
    member[t] = space_membership(space, a) ? 1 : 0;
  };

  unsigned workers = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < trials; t = next++) run(t);
      });
    }
  }

  rep.observed_max_rank = *std::max_element(rep.ranks.begin(), rep.ranks.end());
  rep.membership_failures = static_cast<std::size_t>(std::count(member.begin(), member.end(), 0));
  rep.pass = rep.observed_max_rank <= rep.barrier && rep.membership_failures == 0;
  return rep;
}

GapRow gap_report(std::size_t n, std::size_t d) {
  GapRow row;
  row.n = n;
  row.d = d;
  row.waring_barrier = barrier_bound(Family::waring, n, d);
  row.tensor_barrier = barrier_bound(Family::tensor, n, d);
  row.reference = reference_values(n, d);
  return row;
}

}  // namespace rankbar
