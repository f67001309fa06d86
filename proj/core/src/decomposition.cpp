#include "rankbar/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

#include "rankbar/error.hpp"
#include "rankbar/random.hpp"

namespace rankbar {
namespace {

bool nonvanishing_at(std::span<const Polynomial> ts, std::span<const Scalar> point) {
  return std::all_of(ts.begin(), ts.end(), [&](const Polynomial& t) { return !evaluate(t, point).is_zero(); });
}

std::vector<Scalar> to_point(const Monomial& m) {
  std::vector<Scalar> p;
  p.reserve(m.num_vars());
  for (auto e : m.exponents()) p.emplace_back(static_cast<long>(e));
  return p;
}

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

PolyVector scaled(const PolyVector& v, const Scalar& c) {
  std::vector<Polynomial> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e * c);
  return PolyVector(std::move(out));
}

}  // namespace

std::vector<Scalar> find_shift_point(std::span<const Polynomial> denominators, const ShiftSearch& search) {
  if (denominators.empty()) return {};
  const std::size_t n = denominators[0].num_vars();
  std::uint64_t deg_q = 0;
  for (const auto& t : denominators) {
    require(!t.is_zero(), "find_shift_point: a denominator is the zero polynomial");
    require(t.num_vars() == n, "find_shift_point: denominators live in different rings");
    deg_q += static_cast<std::uint64_t>(t.degree());
  }
  if (n == 0) return {};

  for (std::uint64_t g = deg_q + 1;; g *= 2) {
    std::uint64_t tried = 0;
    bool exhausted = true;
    for (std::uint64_t s = 0; s <= n * (g - 1) && tried < search.scan_limit; ++s) {
      auto shell = monomials_of_degree(n, static_cast<std::uint32_t>(s));
      for (auto it = shell.rbegin(); it != shell.rend(); ++it) {
        bool inside = std::all_of(it->exponents().begin(), it->exponents().end(), [g](auto e) { return e < g; });
        if (!inside) continue;
        if (tried++ >= search.scan_limit) {
          exhausted = false;
          break;
        }
        auto point = to_point(*it);
        if (nonvanishing_at(denominators, point)) return point;
      }
    }
    if (tried >= search.scan_limit) exhausted = false;
    if (!exhausted) {
      // Seeded random fallback on the same grid.
      Rng rng = Rng::stream(search.seed, g);
      std::vector<Scalar> point(n);
      for (std::uint64_t k = 0; k < search.scan_limit; ++k) {
        for (auto& x : point) x = Scalar(static_cast<long>(rng.below(g)));
        if (nonvanishing_at(denominators, point)) return point;
      }
    }
  }
}

SymbolicDecomposition symbolic_decompose(const PolyMatrix& input, int d, const DecomposeOptions& opts) {
  require(d >= 0, "degree must be non-negative");
  for (std::size_t i = 0; i < input.rows(); ++i) {
    for (std::size_t j = 0; j < input.cols(); ++j) {
      if (!input(i, j).is_homogeneous_of(d)) {
        throw ContractViolation("entry " + entry_name(i, j) + " is not homogeneous of degree " + std::to_string(d));
      }
    }
  }
  const PolyMatrix m = input.to_basis(Basis::standard);
  const std::size_t nv = m.num_vars();
  const RankFactorization fac = rank_factorize(m);
  const std::size_t r = fac.rank();

  SymbolicDecomposition out;
  for (const auto& t : fac.denominators()) out.denominator_degrees.push_back(t.degree());
  if (r == 0) return out;

  if (d == 0) {
    // Constant matrix: the rank factorization already is the decomposition.
    out.shift.assign(nv, Scalar(0));
    for (std::size_t i = 0; i < r; ++i) {
      const Scalar inv = fac.denominators()[i].constant_term().inverse();
      out.pairs.emplace_back(scaled(fac.left_column(i), inv), fac.right_row(i));
    }
  } else {
    out.shift = find_shift_point(fac.denominators(), opts.shift);
    const Polynomial one = Polynomial::constant(nv, Scalar(1));
    for (std::size_t i = 0; i < r; ++i) {
      const Polynomial& t = fac.denominators()[i];
      const Scalar b = evaluate(t, out.shift);
      if (b.is_zero()) throw std::logic_error("shift point makes a denominator vanish (internal error)");
      const Scalar b_inv = b.inverse();
      // t(x + a) = b (1 - that(x)) with that(0) = 0.
      const Polynomial that = one - shift_variables(t, out.shift, d) * b_inv;
      if (!that.constant_term().is_zero()) throw std::logic_error("shifted denominator has a constant term");
      // sum_{j=0}^{d} that^j; higher powers start in degree d+1.
      Polynomial series = one;
      for (int j = 0; j < d; ++j) series = one + that.mul_truncated(series, d);

      std::vector<Polynomial> f;
      std::vector<Polynomial> g;
      for (std::size_t row = 0; row < m.rows(); ++row) {
        f.push_back(shift_variables(fac.left()(row, i), out.shift, d) * b_inv);
      }
      for (std::size_t col = 0; col < m.cols(); ++col) {
        g.push_back(shift_variables(fac.right()(i, col), out.shift, d).mul_truncated(series, d));
      }
      out.pairs.emplace_back(PolyVector(std::move(f)), PolyVector(std::move(g)));
    }
  }

  // Postcondition: M = sum_i H_d[f_i (x) g_i]. Optionally also the
  // truncation step M(x + a) = sum_i H_{<=d}[f_i (x) g_i].
  for (std::size_t row = 0; row < m.rows(); ++row) {
    for (std::size_t col = 0; col < m.cols(); ++col) {
      Polynomial low(nv);
      for (const auto& [f, g] : out.pairs) low += f[row].mul_truncated(g[col], d);
      if (homogeneous_component(low, d) != m(row, col)) {
        throw std::logic_error("symbolic decomposition failed to reconstruct entry " + entry_name(row, col));
      }
      if (opts.check_truncation && d > 0 && low != shift_variables(m(row, col), out.shift)) {
        throw std::logic_error("truncated series does not match M(x + a) at entry " + entry_name(row, col));
      }
    }
  }
  return out;
}

HomDecomposition hom_rank_decompose(const PolyMatrix& m, int d, const DecomposeOptions& opts) {
  SymbolicDecomposition sd = symbolic_decompose(m, d, opts);
  HomDecomposition dec;
  dec.degree = d;
  dec.symbolic_rank = sd.pairs.size();
  for (const auto& [f, g] : sd.pairs) {
    for (int k = 0; k <= d; ++k) {
      PolyVector u = homogeneous_component(f, k);
      PolyVector v = homogeneous_component(g, d - k);
      if (u.is_zero() || v.is_zero()) continue;
      dec.terms.push_back(HomTerm{std::move(u), std::move(v), k, d - k});
    }
  }
  if (auto check = verify_decomposition(m, dec); !check) {
    throw std::logic_error("homogeneous decomposition failed verification: " + check.diagnostic);
  }
  return dec;
}

SMDecomposition sm_rank_decompose(const PolyMatrix& input, const VariablePartition& part,
                                  const DecomposeOptions& opts) {
  require(part.num_vars() == input.num_vars(), "partition does not match the matrix's variables");
  const std::size_t d = part.block_count();
  const BlockSet everything = BlockSet::all(d);
  for (std::size_t i = 0; i < input.rows(); ++i) {
    for (std::size_t j = 0; j < input.cols(); ++j) {
      if (!is_set_multilinear_in(input(i, j), part, everything)) {
        throw ContractViolation("entry " + entry_name(i, j) + " is not set-multilinear of degree " +
                                std::to_string(d) + " in the given partition");
      }
    }
  }
  SymbolicDecomposition sd = symbolic_decompose(input, static_cast<int>(d), opts);
  SMDecomposition dec;
  dec.block_count = d;
  dec.symbolic_rank = sd.pairs.size();
  for (const auto& [f, g] : sd.pairs) {
    for (std::uint32_t mask = 0; mask <= everything.mask(); ++mask) {
      const BlockSet s(mask);
      PolyVector u = sm_component(f, part, s);
      if (u.is_zero()) continue;
      PolyVector v = sm_component(g, part, s.complement(d));
      if (v.is_zero()) continue;
      dec.terms.push_back(SMTerm{std::move(u), std::move(v), s});
    }
  }
  if (auto check = verify_decomposition(input, dec, part); !check) {
    throw std::logic_error("set-multilinear decomposition failed verification: " + check.diagnostic);
  }
  return dec;
}

namespace {

template <class Term, class TermCheck>
VerificationResult verify_sum(const PolyMatrix& target, const std::vector<Term>& terms, TermCheck&& term_ok) {
  const PolyMatrix m = target.to_basis(Basis::standard);
  PolyMatrix acc(m.rows(), m.cols(), m.num_vars());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    const std::string where = "term " + std::to_string(k + 1);
    if (t.u.size() != m.rows() || t.v.size() != m.cols()) return {false, where + ": vector lengths do not match the matrix"};
    if (t.u.size() && t.u.num_vars() != m.num_vars()) return {false, where + ": u lives in a different ring"};
    if (t.v.size() && t.v.num_vars() != m.num_vars()) return {false, where + ": v lives in a different ring"};
    if (std::string why = term_ok(t); !why.empty()) return {false, where + ": " + why};
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Polynomial ui = basis_convert(t.u[i], Basis::standard);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Polynomial e = acc(i, j);
        e += ui * basis_convert(t.v[j], Basis::standard);
        acc.set(i, j, std::move(e));
      }
    }
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (acc(i, j) != m(i, j)) return {false, "sum of terms differs from the matrix at entry " + entry_name(i, j)};
    }
  }
  return {};
}

}  // namespace

VerificationResult verify_decomposition(const PolyMatrix& m, const HomDecomposition& dec) {
  return verify_sum(m, dec.terms, [&](const HomTerm& t) -> std::string {
    if (t.deg_u < 0 || t.deg_v < 0 || t.deg_u + t.deg_v != dec.degree) return "degrees do not add up to the target degree";
    for (const auto& e : t.u) {
      if (!e.is_homogeneous_of(t.deg_u)) return "u is not homogeneous of degree " + std::to_string(t.deg_u);
    }
    for (const auto& e : t.v) {
      if (!e.is_homogeneous_of(t.deg_v)) return "v is not homogeneous of degree " + std::to_string(t.deg_v);
    }
    return {};
  });
}

VerificationResult verify_decomposition(const PolyMatrix& m, const SMDecomposition& dec, const VariablePartition& part) {
  if (part.num_vars() != m.num_vars()) return {false, "partition does not match the matrix's variables"};
  const std::size_t d = part.block_count();
  return verify_sum(m, dec.terms, [&](const SMTerm& t) -> std::string {
    if (t.blocks.span() > d) return "block subset out of range";
    for (const auto& e : t.u) {
      if (!is_set_multilinear_in(e, part, t.blocks)) return "u is not set-multilinear in its tagged blocks";
    }
    const BlockSet rest = t.blocks.complement(d);
    for (const auto& e : t.v) {
      if (!is_set_multilinear_in(e, part, rest)) return "v is not set-multilinear in the complementary blocks";
    }
    return {};
  });
}

}  // namespace rankbar
