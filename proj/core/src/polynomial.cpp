#include "rankbar/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <unordered_map>

#include "rankbar/error.hpp"

namespace rankbar {

std::string to_string(Basis b) { return b == Basis::standard ? "standard" : "divided"; }

namespace {

// a! as an exact scalar.
Scalar monomial_factorial(const Monomial& m) {
  mpz_class acc = 1;
  for (auto e : m.exponents()) {
    if (e > 1) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), e);
      acc *= f;
    }
  }
  return Scalar(acc);
}

// prod_i C(a_i + b_i, a_i): the structure constant of the divided basis.
Scalar divided_product_factor(const Monomial& a, const Monomial& b) {
  mpz_class acc = 1;
  for (std::size_t i = 0; i < a.num_vars(); ++i) {
    if (a[i] != 0 && b[i] != 0) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), a[i] + b[i], a[i]);
      acc *= c;
    }
  }
  return Scalar(acc);
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, std::optional<int> max_degree) {
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  const bool divided = a.basis() == Basis::divided;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (max_degree && static_cast<int>(ma.degree() + mb.degree()) > *max_degree) break;
      Scalar c = ca * cb;
      if (divided) c *= divided_product_factor(ma, mb);
      auto [it, inserted] = acc.try_emplace(ma * mb, c);
      if (!inserted) it->second += c;
    }
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return Polynomial::from_terms(a.num_vars(), a.basis(), std::move(terms));
}

}  // namespace

Polynomial Polynomial::from_terms(std::size_t num_vars, Basis basis, std::vector<Term> terms) {
  Polynomial p(num_vars, basis);
  for (const auto& t : terms) require(t.first.num_vars() == num_vars, "monomial arity does not match num_vars");
  if (!std::is_sorted(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; })) {
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial Polynomial::constant(std::size_t num_vars, const Scalar& c, Basis basis) {
  return term(Monomial(num_vars), c, basis);
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t var, Basis basis) {
  return term(Monomial::unit(num_vars, var), Scalar(1), basis);
}

Polynomial Polynomial::term(const Monomial& m, const Scalar& c, Basis basis) {
  Polynomial p(m.num_vars(), basis);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar(0);
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.front().first.degree() == 0) return terms_.front().second;
  return Scalar(0);
}

const Polynomial::Term& Polynomial::leading_term() const {
  require(!terms_.empty(), "leading term of the zero polynomial");
  return terms_.back();
}

void Polynomial::check_compatible(const Polynomial& o, const char* op) const {
  if (num_vars_ != o.num_vars_) {
    throw ContractViolation(std::string(op) + ": num_vars mismatch (" + std::to_string(num_vars_) + " vs " +
                            std::to_string(o.num_vars_) + ")");
  }
  if (basis_ != o.basis_) throw ContractViolation(std::string(op) + ": basis mismatch");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o, "add");
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      Scalar c = i->second + j->second;
      if (!c.is_zero()) out.emplace_back(std::move(i->first), std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b, "multiply");
  return multiply(a, b, std::nullopt);
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::mul_truncated(const Polynomial& o, int max_degree) const {
  check_compatible(o, "multiply");
  return multiply(*this, o, max_degree);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.num_vars_ == b.num_vars_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(num_vars_, Scalar(1), basis_);
  Polynomial base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      auto e = it->first[i];
      if (e == 0) continue;
      os << "*x" << (i + 1);
      if (e > 1) os << "^" << e;
    }
  }
  if (basis_ == Basis::divided) os << " [divided]";
  return os.str();
}

// ---------------------------------------------------------------------------

VariablePartition::VariablePartition(std::size_t num_vars, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(num_vars, static_cast<std::size_t>(-1)) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (auto v : blocks_[b]) {
      require(v < num_vars, "partition variable index out of range");
      require(block_of_[v] == static_cast<std::size_t>(-1), "partition blocks are not disjoint");
      block_of_[v] = b;
    }
  }
  for (auto b : block_of_) require(b != static_cast<std::size_t>(-1), "partition blocks do not cover all variables");
  require(blocks_.size() <= 32, "at most 32 blocks are supported");
}

VariablePartition VariablePartition::uniform(std::size_t blocks, std::size_t block_size) {
  std::vector<std::vector<std::size_t>> b(blocks);
  for (std::size_t j = 0; j < blocks; ++j) {
    for (std::size_t i = 0; i < block_size; ++i) b[j].push_back(j * block_size + i);
  }
  return VariablePartition(blocks * block_size, std::move(b));
}

BlockSet BlockSet::of(std::initializer_list<std::size_t> blocks) { return of(std::vector<std::size_t>(blocks)); }

BlockSet BlockSet::of(const std::vector<std::size_t>& blocks) {
  std::uint32_t m = 0;
  for (auto b : blocks) {
    require(b < 32, "block index out of range");
    m |= 1U << b;
  }
  return BlockSet(m);
}

BlockSet BlockSet::all(std::size_t d) {
  require(d <= 32, "at most 32 blocks are supported");
  return BlockSet(d == 32 ? ~0U : ((1U << d) - 1U));
}

std::size_t BlockSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> BlockSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::size_t BlockSet::span() const { return mask_ == 0 ? 0 : 32 - static_cast<std::size_t>(std::countl_zero(mask_)); }

PolyVector::PolyVector(std::vector<Polynomial> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    require(e.num_vars() == entries_[0].num_vars() && e.basis() == entries_[0].basis(),
            "PolyVector entries must share num_vars and basis");
  }
}

PolyVector::PolyVector(std::size_t length, std::size_t num_vars, Basis basis)
    : entries_(length, Polynomial(num_vars, basis)) {}

bool PolyVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

int PolyVector::degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

// ---------------------------------------------------------------------------

Polynomial homogeneous_component(const Polynomial& p, int t) {
  std::vector<Polynomial::Term> out;
  for (const auto& term : p.terms()) {
    if (static_cast<int>(term.first.degree()) == t) out.push_back(term);
  }
  return Polynomial::from_terms(p.num_vars(), p.basis(), std::move(out));
}

Polynomial truncate_degree(const Polynomial& p, int t) {
  std::vector<Polynomial::Term> out;
  for (const auto& term : p.terms()) {
    if (static_cast<int>(term.first.degree()) > t) break;
    out.push_back(term);
  }
  return Polynomial::from_terms(p.num_vars(), p.basis(), std::move(out));
}

PolyVector homogeneous_component(const PolyVector& v, int t) {
  std::vector<Polynomial> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(homogeneous_component(e, t));
  return PolyVector(std::move(out));
}

namespace {

bool monomial_is_sm_in(const Monomial& m, const VariablePartition& part, BlockSet s) {
  if (m.degree() != s.size()) return false;
  std::uint32_t seen = 0;
  for (std::size_t v = 0; v < m.num_vars(); ++v) {
    auto e = m[v];
    if (e == 0) continue;
    if (e > 1) return false;
    std::size_t b = part.block_of(v);
    if (!s.contains(b)) return false;
    std::uint32_t bit = 1U << b;
    if (seen & bit) return false;
    seen |= bit;
  }
  return seen == s.mask();
}

}  // namespace

Polynomial sm_component(const Polynomial& p, const VariablePartition& part, BlockSet s) {
  require(part.num_vars() == p.num_vars(), "partition does not match the polynomial's variables");
  require(s.span() <= part.block_count(), "block subset index out of range");
  std::vector<Polynomial::Term> out;
  for (const auto& term : p.terms()) {
    if (monomial_is_sm_in(term.first, part, s)) out.push_back(term);
  }
  return Polynomial::from_terms(p.num_vars(), p.basis(), std::move(out));
}

PolyVector sm_component(const PolyVector& v, const VariablePartition& part, BlockSet s) {
  std::vector<Polynomial> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(sm_component(e, part, s));
  return PolyVector(std::move(out));
}

bool is_set_multilinear_in(const Polynomial& p, const VariablePartition& part, BlockSet s) {
  require(part.num_vars() == p.num_vars(), "partition does not match the polynomial's variables");
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& t) { return monomial_is_sm_in(t.first, part, s); });
}

bool is_set_multilinear(const Polynomial& p, const VariablePartition& part) {
  require(part.num_vars() == p.num_vars(), "partition does not match the polynomial's variables");
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t seen = 0;
    for (std::size_t v = 0; v < m.num_vars(); ++v) {
      if (m[v] == 0) continue;
      if (m[v] > 1) return false;
      std::uint64_t bit = 1ULL << part.block_of(v);
      if (seen & bit) return false;
      seen |= bit;
    }
  }
  return true;
}

Polynomial basis_convert(const Polynomial& p, Basis target) {
  if (p.basis() == target) return p;
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Scalar f = monomial_factorial(m);
    // standard x^a = a! * (x^a / a!), so divided coefficients are a! times larger.
    out.emplace_back(m, target == Basis::divided ? c * f : c / f);
  }
  return Polynomial::from_terms(p.num_vars(), target, std::move(out));
}

Polynomial partial_derivative(const Polynomial& p, const Monomial& a) {
  require(a.num_vars() == p.num_vars(), "derivative multi-index arity mismatch");
  if (p.basis() == Basis::standard) {
    return basis_convert(partial_derivative(basis_convert(p, Basis::divided), a), Basis::standard);
  }
  std::vector<Polynomial::Term> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.divisible_by(a)) out.emplace_back(m / a, c);
  }
  return Polynomial::from_terms(p.num_vars(), Basis::divided, std::move(out));
}

namespace {

// powers[v][e] = point[v]^e for e <= max exponent of v in p.
std::vector<std::vector<Scalar>> power_table(const Polynomial& p, std::span<const Scalar> point) {
  std::vector<std::uint32_t> max_e(p.num_vars(), 0);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t v = 0; v < m.num_vars(); ++v) max_e[v] = std::max(max_e[v], m[v]);
  }
  std::vector<std::vector<Scalar>> pw(p.num_vars());
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    pw[v].reserve(max_e[v] + 1);
    pw[v].emplace_back(1);
    for (std::uint32_t e = 1; e <= max_e[v]; ++e) pw[v].push_back(pw[v].back() * point[v]);
  }
  return pw;
}

}  // namespace

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point) {
  require(point.size() == p.num_vars(), "evaluation point has the wrong length");
  auto pw = power_table(p, point);
  Scalar acc(0);
  for (const auto& [m, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t v = 0; v < m.num_vars(); ++v) {
      if (m[v]) t *= pw[v][m[v]];
    }
    if (p.basis() == Basis::divided) t /= monomial_factorial(m);
    acc += t;
  }
  return acc;
}

Polynomial shift_variables(const Polynomial& p, std::span<const Scalar> shift, std::optional<int> max_degree) {
  require(shift.size() == p.num_vars(), "shift vector has the wrong length");
  if (p.basis() == Basis::divided) {
    return basis_convert(shift_variables(basis_convert(p, Basis::standard), shift, max_degree), Basis::divided);
  }
  const std::size_t n = p.num_vars();
  auto pw = power_table(p, shift);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  std::vector<std::uint32_t> b(n, 0);
  const int cap = max_degree.value_or(p.degree());
  for (const auto& [m, c] : p.terms()) {
    // Enumerate b <= m with |b| <= cap; term C(m,b) a^(m-b) x^b.
    std::fill(b.begin(), b.end(), 0);
    while (true) {
      int deg = 0;
      for (auto e : b) deg += static_cast<int>(e);
      if (deg <= cap) {
        mpz_class binom = 1;
        Scalar coef = c;
        for (std::size_t v = 0; v < n; ++v) {
          if (m[v] == 0) continue;
          mpz_class bc;
          mpz_bin_uiui(bc.get_mpz_t(), m[v], b[v]);
          binom *= bc;
          if (m[v] != b[v]) coef *= pw[v][m[v] - b[v]];
        }
        coef *= Scalar(binom);
        if (!coef.is_zero()) {
          Monomial key{std::vector<std::uint32_t>(b)};
          auto [it, ins] = acc.try_emplace(std::move(key), coef);
          if (!ins) it->second += coef;
        }
      }
      // odometer over b_v in [0, m_v]
      std::size_t v = 0;
      for (; v < n; ++v) {
        if (b[v] < m[v]) {
          ++b[v];
          break;
        }
        b[v] = 0;
      }
      if (v == n) break;
    }
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, c] : acc) terms.emplace_back(k, std::move(c));
  return Polynomial::from_terms(n, Basis::standard, std::move(terms));
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q) {
  require(p.num_vars() == q.num_vars() && p.basis() == q.basis(), "divide: operand mismatch");
  require(!q.is_zero(), "division by the zero polynomial");
  if (p.basis() == Basis::divided) {
    auto r = divide_exact(basis_convert(p, Basis::standard), basis_convert(q, Basis::standard));
    if (!r) return std::nullopt;
    return basis_convert(*r, Basis::divided);
  }
  if (q.is_constant()) return p * q.constant_term().inverse();
  if (p.is_zero()) return p;
  if (p.degree() < q.degree() || p.min_degree() < q.min_degree()) return std::nullopt;

  const auto& [lm, lc] = q.leading_term();
  const Scalar lc_inv = lc.inverse();
  std::map<Monomial, Scalar, std::greater<>> rem;
  for (const auto& t : p.terms()) rem.emplace(t.first, t.second);
  std::vector<Polynomial::Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!top->first.divisible_by(lm)) return std::nullopt;
    Monomial qm = top->first / lm;
    Scalar qc = top->second * lc_inv;
    for (const auto& [m, c] : q.terms()) {
      Monomial key = m * qm;
      Scalar delta = c * qc;
      auto it = rem.find(key);
      if (it == rem.end()) {
        rem.emplace(std::move(key), -delta);
      } else {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.emplace_back(std::move(qm), std::move(qc));
  }
  return Polynomial::from_terms(p.num_vars(), p.basis(), std::move(quotient));
}

Polynomial permute_variables(const Polynomial& p, std::span<const std::size_t> perm) {
  require(perm.size() == p.num_vars(), "permutation length mismatch");
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  std::vector<std::uint32_t> e(p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t v = 0; v < m.num_vars(); ++v) e[perm[v]] += m[v];
    out.emplace_back(Monomial(e), c);
  }
  return Polynomial::from_terms(p.num_vars(), p.basis(), std::move(out));
}

Polynomial embed(const Polynomial& p, std::size_t num_vars, std::size_t offset) {
  require(offset + p.num_vars() <= num_vars, "embedding does not fit");
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e(num_vars, 0);
    for (std::size_t v = 0; v < m.num_vars(); ++v) e[offset + v] = m[v];
    out.emplace_back(Monomial(std::move(e)), c);
  }
  return Polynomial::from_terms(num_vars, p.basis(), std::move(out));
}

}  // namespace rankbar
