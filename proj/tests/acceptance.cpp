// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include "rankbar/barrier_lab.hpp"
#include "rankbar/decomposition.hpp"
#include "rankbar/depth3.hpp"
#include "rankbar/json_io.hpp"
#include "rankbar/rank_methods.hpp"
#include "support.hpp"

namespace rankbar {
namespace {

using io::Json;

struct Outcome {
  bool pass = true;
  Json report;
  std::string detail;
};

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Outcome barrier_family(Family family, std::uint64_t seed) {
  // Waring: 50 maps over n in {2,3}, d in {2,3,4}; tensor: n in {2,3}, d in {2,3}.
  const std::vector<std::size_t> ns = {2, 3};
  const std::vector<std::size_t> ds =
      family == Family::waring ? std::vector<std::size_t>{2, 3, 4} : std::vector<std::size_t>{2, 3};
  Rng rng = Rng::stream(seed, family == Family::waring ? 1 : 2);
  Outcome out;
  out.report = Json::array();
  std::size_t violations = 0;
  std::size_t membership = 0;
  std::size_t max_r = 0;
  bool per_unit_ok = true;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = ns[k % ns.size()];
    const std::size_t d = ds[(k / ns.size()) % ds.size()];
    const std::size_t m = 4 + rng.below(17);
    const double density = 0.05 + 0.95 * static_cast<double>(rng.below(20)) / 19.0;
    const LinearMap l = random_linear_map(family, n, d, m, density, rng.next());
    const BarrierReport rep = verify_barrier(l, 20, rng.next(), BarrierOptions{0});
    const std::uint64_t expected_unit =
        family == Family::waring ? (d + 1) * choose(n + d / 2, n) : (std::uint64_t{1} << d) * ipow(n, d / 2);
    if (rep.per_unit != expected_unit) per_unit_ok = false;
    if (family == Family::tensor && d == 3 && rep.per_unit != 8 * n) per_unit_ok = false;
    for (auto r : rep.ranks) violations += r > rep.barrier;
    membership += rep.membership_failures;
    max_r = std::max(max_r, rep.r);
    out.report.push_back(io::to_json(rep));
  }
  out.pass = violations == 0 && membership == 0 && per_unit_ok;
  out.detail = "1000 trials, violations=" + std::to_string(violations) + " membership_failures=" +
               std::to_string(membership) + " max_r=" + std::to_string(max_r) +
               (per_unit_ok ? "" : " per-unit barrier mismatch");
  return out;
}

Outcome round_trips(std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 3);
  Outcome out;
  out.report = Json::array();
  std::size_t hom_bad = 0;
  std::size_t sm_bad = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t rows = 1 + rng.below(5);
    const std::size_t cols = 1 + rng.below(5);
    const std::size_t nv = 1 + rng.below(3);
    const auto deg = static_cast<std::uint32_t>(rng.below(5));
    const auto m = testing::random_homogeneous_matrix(rng, rows, cols, nv, deg, 1 + rng.below(3));
    const std::size_t r = exact_symbolic_rank(m);
    const auto dec = hom_rank_decompose(m, static_cast<int>(deg));
    const bool ok = verify_decomposition(m, dec).ok && dec.terms.size() <= r * (deg + 1);
    hom_bad += !ok;
    out.report.push_back(Json{{"kind", "hom"}, {"rank", r}, {"terms", dec.terms.size()}, {"ok", ok}});
  }
  for (int k = 0; k < 100; ++k) {
    const std::size_t blocks = 1 + rng.below(3);
    const std::size_t per = 1 + rng.below(2);
    const auto part = VariablePartition::uniform(blocks, per);
    const auto m = testing::random_sm_matrix(rng, 1 + rng.below(4), 1 + rng.below(4), part, 1 + rng.below(3));
    const std::size_t r = exact_symbolic_rank(m);
    const auto dec = sm_rank_decompose(m, part);
    const bool ok = verify_decomposition(m, dec, part).ok && dec.terms.size() <= (r << blocks);
    sm_bad += !ok;
    out.report.push_back(Json{{"kind", "sm"}, {"rank", r}, {"terms", dec.terms.size()}, {"ok", ok}});
  }
  out.pass = hom_bad == 0 && sm_bad == 0;
  out.detail = "hom failures=" + std::to_string(hom_bad) + "/100, sm failures=" + std::to_string(sm_bad) + "/100";
  return out;
}

Outcome rank_agreement(std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 4);
  Outcome out;
  out.report = Json::array();
  std::size_t agree = 0;
  std::size_t wrong_side = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t rows = 1 + rng.below(6);
    const std::size_t cols = 1 + rng.below(6);
    const auto m = testing::random_matrix(rng, rows, cols, 1 + rng.below(3), static_cast<std::uint32_t>(rng.below(4)));
    const std::size_t exact = exact_symbolic_rank(m);
    const std::size_t randomized = randomized_symbolic_rank(m, rng.next());
    agree += exact == randomized;
    wrong_side += randomized > exact;
    out.report.push_back(Json::array({exact, randomized}));
  }
  out.pass = agree * 100 >= 99 * 200 && wrong_side == 0;
  out.detail = "agreement " + std::to_string(agree) + "/200, randomized > exact: " + std::to_string(wrong_side);
  return out;
}

Outcome flattenings(std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 5);
  Outcome out;
  out.report = Json::array();
  std::size_t bad_cat = 0;
  std::size_t cat_cases = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng.below(4);
    Polynomial ell(n);
    while (ell.is_zero()) {
      for (std::size_t i = 0; i < n; ++i) ell += testing::x(n, i) * testing::small_int(rng, 9);
    }
    for (int d = 1; d <= 4; ++d) {
      const auto f = ell.pow(static_cast<unsigned>(d));
      for (int c = 1; c <= d; ++c) {
        const auto rk = rank(catalecticant(f, d, c));
        bad_cat += rk != 1;
        ++cat_cases;
        out.report.push_back(rk);
      }
    }
  }
  std::size_t bad_mode = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng.below(3);
    const std::size_t d = 2 + rng.below(3);
    const std::size_t terms = 1 + rng.below(4);
    Tensor t(n, d);
    for (std::size_t j = 0; j < terms; ++j) {
      std::vector<std::vector<Scalar>> factors(d);
      for (auto& v : factors) {
        for (std::size_t i = 0; i < n; ++i) v.push_back(testing::small_int(rng, 9));
      }
      t += Tensor::rank_one(factors);
    }
    std::uint32_t mask = 0;
    while (mask == 0 || mask == (1U << d) - 1) mask = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << d));
    const auto rk = rank(mode_flattening(t, BlockSet(mask)));
    bad_mode += rk > terms;
    out.report.push_back(Json::array({terms, rk}));
  }
  out.pass = bad_cat == 0 && bad_mode == 0;
  out.detail = "catalecticant rank != 1: " + std::to_string(bad_cat) + "/" + std::to_string(cat_cases) +
               ", mode flattening rank > k: " + std::to_string(bad_mode) + "/100";
  return out;
}

Outcome instantiations(std::uint64_t) {
  Outcome out;
  std::vector<std::string> misses;
  for (std::size_t n = 2; n <= 10; ++n) {
    if (barrier_bound(Family::tensor, n, 3) != 8 * n) misses.push_back("tensor n=" + std::to_string(n));
  }
  if (barrier_bound(Family::waring, 3, 3) != 16) misses.push_back("waring 3,3");
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t d = 1; d <= 6; ++d) {
      const auto ref = reference_values(n, d);
      const std::uint64_t c = choose(n + d - 1, n - 1);
      if (ref.ah95 != (c + n - 1) / n) misses.push_back("ah95 " + std::to_string(n) + "," + std::to_string(d));
      const double aft = 2.0 * std::pow(static_cast<double>(n), static_cast<double>(d / 2)) + static_cast<double>(n) -
                         static_cast<double>(d) * std::log2(static_cast<double>(n));
      if (std::abs(ref.aft11 - aft) > 1e-9 * std::max(1.0, std::abs(aft)) || ref.aft11_rounded != std::llround(aft)) {
        misses.push_back("aft11 " + std::to_string(n) + "," + std::to_string(d));
      }
    }
  }
  if (reference_values(3, 3).ah95 != 4) misses.push_back("ah95 3,3 != 4");
  out.pass = misses.empty();
  out.report = misses;
  out.detail = misses.empty() ? "tensor 8n for n=2..10, waring(3,3)=16, AH95 and AFT11 over n,d<=6"
                              : "mismatches: " + Json(misses).dump();
  return out;
}

Outcome depth3_structure(std::uint64_t) {
  Outcome out;
  out.report = Json::array();
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto basis = polarization_basis(n, d, d);
      std::map<Monomial, std::size_t> index;
      for (const auto& p : basis) {
        for (const auto& [mono, c] : p.terms()) index.try_emplace(mono, index.size());
      }
      VectorSpan span(index.size());
      for (const auto& p : basis) {
        std::vector<Scalar> v(index.size());
        for (const auto& [mono, c] : p.terms()) v[index[mono]] = c;
        span.insert(v);
      }
      const std::uint64_t expected = choose(n + d - 1, n - 1);
      bad += span.dim() != expected;
      out.report.push_back(Json::array({n, d, span.dim()}));
    }
  }
  std::size_t psi_bad = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t D = 1; D <= 4; ++D) {
      for (std::size_t d = 1; d <= std::min<std::size_t>(D, 3); ++d) {
        const auto psi = build_psi(n, D, d);
        const auto part = VariablePartition::uniform(D, n);
        std::vector<Polynomial> entries;
        for (const auto& [mono, p] : psi.coords) {
          psi_bad += !is_ssm(p, part);
          entries.push_back(p);
        }
        psi_bad += !validate_rank_method(PolyMatrix(1, entries.size(), entries), n, D, d).ok;
      }
    }
  }
  out.pass = bad == 0 && psi_bad == 0;
  out.detail = "span dimension mismatches=" + std::to_string(bad) + ", psi failures=" + std::to_string(psi_bad);
  return out;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(std::uint64_t)> run;
};

int run_all(std::uint64_t seed) {
  const std::vector<Criterion> criteria = {
      {1, "waring barrier", [](std::uint64_t s) { return barrier_family(Family::waring, s); }},
      {2, "tensor barrier", [](std::uint64_t s) { return barrier_family(Family::tensor, s); }},
      {3, "decomposition round trips", round_trips},
      {4, "rank oracle agreement", rank_agreement},
      {5, "flattening sanity", flattenings},
      {6, "number instantiations", instantiations},
      {7, "depth-3 structure", depth3_structure},
  };
  bool all = true;
  std::vector<std::string> first;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run(seed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    first.push_back(o.report.dump());
    all = all && o.pass;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
              << ", " << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
  }
  std::size_t differing = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) differing += criteria[i].run(seed).report.dump() != first[i];
  const bool det = differing == 0;
  all = all && det;
  std::cout << "criterion 8 [determinism]: " << (det ? "PASS" : "FAIL") << " (criteria 1-7 rerun with seed " << seed
            << ", reports differing: " << differing << ")" << std::endl;
  return all ? 0 : 1;
}

}  // namespace
}  // namespace rankbar

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  return rankbar::run_all(seed);
}
