#include "rankbar/depth3.hpp"

#include <numeric>
#include <unordered_map>

#include "rankbar/error.hpp"

namespace rankbar {

Polynomial sym_poly(std::size_t d, const std::vector<Polynomial>& forms) {
  const std::size_t nv = forms.empty() ? 0 : forms[0].num_vars();
  for (const auto& f : forms) require(f.num_vars() == nv, "sym_poly: forms live in different rings");
  if (d > forms.size()) return Polynomial(nv);
  // e[k] = elementary symmetric polynomial of degree k in the forms seen so far.
  std::vector<Polynomial> e(d + 1, Polynomial(nv));
  e[0] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t k = std::min(d, i + 1); k >= 1; --k) e[k] += e[k - 1] * forms[i];
  }
  return e[d];
}

PsiImage build_psi(std::size_t n, std::size_t D, std::size_t d) {
  require(n >= 1, "build_psi needs n >= 1");
  require(d >= 1, "build_psi needs d >= 1");
  if (D < d) throw ContractViolation("build_psi: D < d makes the image identically zero");
  const std::size_t ny = D * n;
  const std::size_t nv = ny + n;
  std::vector<Polynomial> forms;
  for (std::size_t i = 0; i < D; ++i) {
    Polynomial form(nv);
    for (std::size_t j = 0; j < n; ++j) {
      form += Polynomial::variable(nv, i * n + j) * Polynomial::variable(nv, ny + j);
    }
    forms.push_back(std::move(form));
  }
  const Polynomial s = sym_poly(d, forms);

  std::map<Monomial, std::vector<Polynomial::Term>> buckets;
  for (const auto& [mono, c] : s.terms()) {
    auto e = mono.exponents();
    Monomial y(std::vector<std::uint32_t>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(ny)));
    Monomial x(std::vector<std::uint32_t>(e.begin() + static_cast<std::ptrdiff_t>(ny), e.end()));
    buckets[x].emplace_back(std::move(y), c);
  }
  PsiImage out;
  out.n = n;
  out.D = D;
  out.d = d;
  for (const auto& x : monomials_of_degree(n, static_cast<std::uint32_t>(d))) {
    auto it = buckets.find(x);
    std::vector<Polynomial::Term> terms;
    if (it != buckets.end()) terms = std::move(it->second);
    out.coords.emplace(x, Polynomial::from_terms(ny, Basis::standard, std::move(terms)));
  }
  const auto part = VariablePartition::uniform(D, n);
  for (const auto& [x, p] : out.coords) {
    if (!is_ssm(p, part)) throw std::logic_error("build_psi produced a coordinate that is not SSM (internal error)");
  }
  return out;
}

bool is_ssm(const Polynomial& p, const VariablePartition& blocks) {
  const std::size_t count = blocks.block_count();
  require(p.num_vars() == blocks.num_vars(), "is_ssm: partition does not match the polynomial's variables");
  if (count == 0) return true;
  const std::size_t size = blocks.block(0).size();
  for (std::size_t b = 1; b < count; ++b) {
    if (blocks.block(b).size() != size) throw ContractViolation("is_ssm: blocks must all have the same size");
  }
  if (!is_set_multilinear(p, blocks)) return false;
  // Adjacent transpositions generate the symmetric group.
  std::vector<std::size_t> perm(p.num_vars());
  for (std::size_t b = 0; b + 1 < count; ++b) {
    std::iota(perm.begin(), perm.end(), 0);
    const auto lo = blocks.block(b);
    const auto hi = blocks.block(b + 1);
    for (std::size_t k = 0; k < size; ++k) {
      perm[lo[k]] = hi[k];
      perm[hi[k]] = lo[k];
    }
    if (permute_variables(p, perm) != p) return false;
  }
  return true;
}

Polynomial polarize(const Monomial& mono, std::size_t D) {
  const std::size_t n = mono.num_vars();
  const std::size_t d = mono.degree();
  if (D < d) throw ContractViolation("polarize: D must be at least the degree of the monomial");
  const std::size_t ny = D * n;
  std::vector<std::size_t> slots;
  for (std::size_t j = 0; j < n; ++j) slots.insert(slots.end(), mono.exponents()[j], j);

  std::vector<Polynomial::Term> terms;
  std::vector<std::size_t> block(d, 0);
  std::vector<char> used(D, 0);
  std::vector<std::uint32_t> exps(ny, 0);
  // Depth-first enumeration of the injections slot -> block.
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == d) {
      terms.emplace_back(Monomial(exps), Scalar(1));
      return;
    }
    for (std::size_t b = 0; b < D; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      ++exps[b * n + slots[slot]];
      self(self, slot + 1);
      --exps[b * n + slots[slot]];
      used[b] = 0;
    }
  };
  rec(rec, 0);
  return Polynomial::from_terms(ny, Basis::standard, std::move(terms));
}

std::vector<Polynomial> polarization_basis(std::size_t n, std::size_t D, std::size_t d) {
  std::vector<Polynomial> out;
  for (const auto& mono : monomials_of_degree(n, static_cast<std::uint32_t>(d))) out.push_back(polarize(mono, D));
  return out;
}

VerificationResult validate_rank_method(const PolyMatrix& entries, std::size_t n, std::size_t D, std::size_t d) {
  if (entries.num_vars() != D * n) {
    return {false, "entries have " + std::to_string(entries.num_vars()) + " variables, expected D * n = " +
                       std::to_string(D * n)};
  }
  if (D < d) return {false, "D < d: the polarization space is zero"};
  const auto basis = polarization_basis(n, D, d);
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (const auto& p : basis) {
    for (const auto& [mono, c] : p.terms()) index.try_emplace(mono, index.size());
  }
  VectorSpan span(index.size());
  auto vectorize = [&](const Polynomial& p, std::vector<Scalar>& out) {
    out.assign(index.size(), Scalar(0));
    const Polynomial q = basis_convert(p, Basis::standard);
    for (const auto& [mono, c] : q.terms()) {
      auto it = index.find(mono);
      if (it == index.end()) return false;
      out[it->second] = c;
    }
    return true;
  };
  std::vector<Scalar> v;
  for (const auto& p : basis) {
    vectorize(p, v);
    span.insert(v);
  }
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      if (!vectorize(entries(i, j), v) || !span.contains(v)) {
        return {false, "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                           ") is not in the span of the polarized monomials"};
      }
    }
  }
  return {};
}

}  // namespace rankbar
