#include "rankbar/rank_methods.hpp"

#include <algorithm>
#include <cmath>

#include "rankbar/error.hpp"

namespace rankbar {

std::string to_string(Family f) { return f == Family::waring ? "waring" : "tensor"; }

Family family_from_string(const std::string& s) {
  if (s == "waring") return Family::waring;
  if (s == "tensor") return Family::tensor;
  throw InputError("unknown family \"" + s + "\" (expected waring or tensor)");
}

// ---------------------------------------------------------------------------

Tensor::Tensor(std::size_t n, std::size_t d) : n_(n), d_(d) {
  require(n >= 1 && d >= 1, "tensor side and order must be positive");
}

Tensor Tensor::diagonal(std::size_t n, std::size_t d) {
  Tensor t(n, d);
  for (std::uint32_t i = 0; i < n; ++i) t.set(Index(d, i), Scalar(1));
  return t;
}

Tensor Tensor::rank_one(const std::vector<std::vector<Scalar>>& factors) {
  require(!factors.empty(), "rank-one tensor needs at least one factor");
  const std::size_t n = factors[0].size();
  for (const auto& f : factors) require(f.size() == n, "rank-one tensor factors must share a length");
  Tensor t(n, factors.size());
  Index idx(factors.size(), 0);
  while (true) {
    Scalar v(1);
    for (std::size_t j = 0; j < idx.size() && !v.is_zero(); ++j) v *= factors[j][idx[j]];
    if (!v.is_zero()) t.entries_.emplace(idx, v);
    std::size_t j = idx.size();
    while (j-- > 0) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return t;
}

void Tensor::check_index(const Index& idx) const {
  require(idx.size() == d_, "tensor index has the wrong order");
  for (auto i : idx) require(i < n_, "tensor index out of range");
}

Scalar Tensor::at(const Index& idx) const {
  check_index(idx);
  auto it = entries_.find(idx);
  return it == entries_.end() ? Scalar(0) : it->second;
}

void Tensor::set(const Index& idx, const Scalar& value) {
  check_index(idx);
  if (value.is_zero()) {
    entries_.erase(idx);
  } else {
    entries_[idx] = value;
  }
}

Tensor& Tensor::operator+=(const Tensor& o) {
  require(n_ == o.n_ && d_ == o.d_, "tensor shape mismatch");
  for (const auto& [idx, v] : o.entries_) set(idx, at(idx) + v);
  return *this;
}

Polynomial Tensor::to_polynomial() const {
  const std::size_t nv = n_ * d_;
  std::vector<Polynomial::Term> terms;
  for (const auto& [idx, v] : entries_) {
    std::vector<std::uint32_t> e(nv, 0);
    for (std::size_t j = 0; j < d_; ++j) e[j * n_ + idx[j]] = 1;
    terms.emplace_back(Monomial(std::move(e)), v);
  }
  return Polynomial::from_terms(nv, Basis::standard, std::move(terms));
}

// ---------------------------------------------------------------------------

LinearMap::LinearMap(Family family, std::size_t n, std::size_t d, std::size_t m)
    : family_(family), n_(n), d_(d), m_(m) {
  require(n >= 1 && d >= 1 && m >= 1, "linear map parameters n, d, m must be positive");
}

bool LinearMap::is_valid_key(const Key& key) const {
  if (family_ == Family::waring) {
    if (key.size() != n_) return false;
    std::size_t deg = 0;
    for (auto e : key) deg += e;
    return deg <= d_;
  }
  if (key.size() != d_) return false;
  return std::all_of(key.begin(), key.end(), [this](auto i) { return i < n_; });
}

void LinearMap::set_image(const Key& key, Matrix image) {
  require(is_valid_key(key), "basis index out of range for this linear map");
  require(image.rows() == m_ && image.cols() == m_, "basis image must be m x m");
  if (image.is_zero()) {
    images_.erase(key);
  } else {
    images_[key] = std::move(image);
  }
}

Matrix LinearMap::image(const Key& key) const {
  auto it = images_.find(key);
  return it == images_.end() ? Matrix(m_, m_) : it->second;
}

std::vector<LinearMap::Key> LinearMap::basis() const {
  std::vector<Key> out;
  if (family_ == Family::waring) {
    for (const auto& mono : monomials_up_to_degree(n_, static_cast<std::uint32_t>(d_))) {
      out.emplace_back(mono.exponents().begin(), mono.exponents().end());
    }
    return out;
  }
  Key idx(d_, 0);
  while (true) {
    out.push_back(idx);
    std::size_t j = d_;
    while (j-- > 0) {
      if (++idx[j] < n_) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

Matrix apply_map(const LinearMap& l, const Polynomial& f) {
  require(l.family() == Family::waring, "polynomial input needs a waring-family map");
  require(f.num_vars() == l.n(), "polynomial has " + std::to_string(f.num_vars()) + " variables, map expects " +
                                     std::to_string(l.n()));
  const Polynomial fd = basis_convert(f, Basis::divided);
  require(fd.degree() <= static_cast<int>(l.d()), "polynomial degree exceeds the map's degree");
  Matrix acc(l.m(), l.m());
  for (const auto& [mono, c] : fd.terms()) {
    auto it = l.images().find(LinearMap::Key(mono.exponents().begin(), mono.exponents().end()));
    if (it != l.images().end()) acc += c * it->second;
  }
  return acc;
}

Matrix apply_map(const LinearMap& l, const Tensor& t) {
  require(l.family() == Family::tensor, "tensor input needs a tensor-family map");
  require(t.n() == l.n() && t.d() == l.d(), "tensor shape does not match the map");
  Matrix acc(l.m(), l.m());
  for (const auto& [idx, v] : t.entries()) {
    auto it = l.images().find(idx);
    if (it != l.images().end()) acc += v * it->second;
  }
  return acc;
}

PolyMatrix symbolic_image_waring(const LinearMap& l) {
  require(l.family() == Family::waring, "symbolic_image_waring needs a waring-family map");
  const std::size_t nv = l.n() + 1;
  const std::size_t m = l.m();
  const auto d = static_cast<std::uint32_t>(l.d());
  // l^d = sum_{e0 + |e| = d} d!/(e0! e!) y0^e0 y^e x^e (standard x); against
  // the divided basis x^e/e! the coefficient is d!/e0! y0^e0 y^e.
  std::vector<std::vector<Polynomial::Term>> terms(m * m);
  const Scalar d_fact = factorial(d);
  for (const auto& [key, img] : l.images()) {
    std::uint32_t deg = 0;
    for (auto e : key) deg += e;
    const std::uint32_t e0 = d - deg;
    std::vector<std::uint32_t> exps;
    exps.reserve(nv);
    exps.push_back(e0);
    exps.insert(exps.end(), key.begin(), key.end());
    const Monomial mono(std::move(exps));
    const Scalar w = d_fact / factorial(e0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!img(i, j).is_zero()) terms[i * m + j].emplace_back(mono, w * img(i, j));
      }
    }
  }
  std::vector<Polynomial> entries;
  entries.reserve(m * m);
  for (auto& t : terms) entries.push_back(Polynomial::from_terms(nv, Basis::standard, std::move(t)));
  PolyMatrix out(m, m, std::move(entries));
  return out;
}

PolyMatrix symbolic_image_tensor(const LinearMap& l) {
  require(l.family() == Family::tensor, "symbolic_image_tensor needs a tensor-family map");
  const std::size_t n = l.n();
  const std::size_t d = l.d();
  const std::size_t nv = n * d;
  const std::size_t m = l.m();
  std::vector<std::vector<Polynomial::Term>> terms(m * m);
  for (const auto& [idx, img] : l.images()) {
    std::vector<std::uint32_t> exps(nv, 0);
    for (std::size_t j = 0; j < d; ++j) exps[j * n + idx[j]] = 1;
    const Monomial mono(std::move(exps));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!img(i, j).is_zero()) terms[i * m + j].emplace_back(mono, img(i, j));
      }
    }
  }
  std::vector<Polynomial> entries;
  entries.reserve(m * m);
  for (auto& t : terms) entries.push_back(Polynomial::from_terms(nv, Basis::standard, std::move(t)));
  return PolyMatrix(m, m, std::move(entries));
}

PolyMatrix symbolic_image(const LinearMap& l) {
  return l.family() == Family::waring ? symbolic_image_waring(l) : symbolic_image_tensor(l);
}

// ---------------------------------------------------------------------------

Matrix catalecticant(const Polynomial& f, int degree, int k) {
  require(degree >= 0, "catalecticant degree must be non-negative");
  require(k >= 0 && k <= degree, "catalecticant order k must satisfy 0 <= k <= d");
  require(f.is_homogeneous_of(degree), "catalecticant input must be homogeneous of degree " + std::to_string(degree));
  const Polynomial fd = basis_convert(f, Basis::divided);
  const auto rows = monomials_of_degree(f.num_vars(), static_cast<std::uint32_t>(k));
  const auto cols = monomials_of_degree(f.num_vars(), static_cast<std::uint32_t>(degree - k));
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = fd.coefficient(rows[i] * cols[j]);
  }
  return out;
}

Matrix catalecticant(const Polynomial& f, int k) {
  require(!f.is_zero(), "catalecticant of the zero polynomial needs an explicit degree");
  return catalecticant(f, f.degree(), k);
}

LinearMap catalecticant_map(std::size_t n, std::size_t d, std::size_t k) {
  require(k <= d, "catalecticant order k must satisfy 0 <= k <= d");
  const auto rows = monomials_of_degree(n, static_cast<std::uint32_t>(k));
  const auto cols = monomials_of_degree(n, static_cast<std::uint32_t>(d - k));
  const std::size_t m = std::max(rows.size(), cols.size());
  LinearMap l(Family::waring, n, d, m);
  std::map<Monomial, Matrix> images;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto [it, ins] = images.try_emplace(rows[i] * cols[j], m, m);
      it->second(i, j) = Scalar(1);
    }
  }
  for (auto& [mono, img] : images) {
    l.set_image(LinearMap::Key(mono.exponents().begin(), mono.exponents().end()), std::move(img));
  }
  return l;
}

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::pair<std::size_t, std::size_t> flat_position(const Tensor::Index& idx, std::size_t n, BlockSet s) {
  std::size_t row = 0;
  std::size_t col = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (s.contains(j)) {
      row = row * n + idx[j];
    } else {
      col = col * n + idx[j];
    }
  }
  return {row, col};
}

void check_mode_subset(std::size_t d, BlockSet s) {
  require(s.span() <= d, "mode subset index out of range");
  require(s.size() >= 1 && s.size() < d, "mode subset must be a nonempty proper subset of [d]");
}

}  // namespace

Matrix mode_flattening(const Tensor& t, BlockSet s) {
  check_mode_subset(t.d(), s);
  Matrix out(ipow(t.n(), s.size()), ipow(t.n(), t.d() - s.size()));
  for (const auto& [idx, v] : t.entries()) {
    auto [r, c] = flat_position(idx, t.n(), s);
    out(r, c) = v;
  }
  return out;
}

LinearMap mode_flattening_map(std::size_t n, std::size_t d, BlockSet s) {
  check_mode_subset(d, s);
  const std::size_t m = std::max(ipow(n, s.size()), ipow(n, d - s.size()));
  LinearMap l(Family::tensor, n, d, m);
  for (const auto& idx : l.basis()) {
    auto [r, c] = flat_position(idx, n, s);
    l.set_image(idx, Matrix::unit(m, m, r, c));
  }
  return l;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t to_u64(const mpz_class& z, const char* what) {
  require(sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64, std::string(what) + " overflows 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

mpz_class binom_z(std::size_t n, std::size_t k) {
  mpz_class z;
  if (k > n) return 0;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return z;
}

mpz_class pow_z(std::size_t b, std::size_t e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), b, e);
  return z;
}

}  // namespace

std::uint64_t barrier_bound(Family family, std::size_t n, std::size_t d) {
  require(n >= 1 && d >= 1, "barrier_bound needs n, d >= 1");
  const std::size_t half = d / 2;
  if (family == Family::waring) {
    return to_u64(mpz_class(static_cast<unsigned long>(d + 1)) * binom_z(n + half, n), "waring barrier");
  }
  return to_u64(pow_z(2, d) * pow_z(n, half), "tensor barrier");
}

LowerBoundResult lower_bound(const LinearMap& l, const MapInput& f, std::size_t mu_s) {
  if (mu_s == 0) throw ContractViolation("mu_S = 0: the map vanishes on every simple object, no bound follows");
  LowerBoundResult r;
  const Matrix image = std::visit([&l](const auto& x) { return apply_map(l, x); }, f);
  r.mu_f = rank(image);
  r.mu_s = mu_s;
  r.bound = mpq_class(static_cast<unsigned long>(r.mu_f), static_cast<unsigned long>(mu_s));
  r.bound.canonicalize();
  mpz_cdiv_q(r.bound_ceiling.get_mpz_t(), r.bound.get_num_mpz_t(), r.bound.get_den_mpz_t());
  r.barrier = barrier_bound(l.family(), l.n(), l.d());
  r.within_barrier = r.bound <= mpq_class(mpz_class(std::to_string(r.barrier)));
  return r;
}

ReferenceValues reference_values(std::size_t n, std::size_t d) {
  require(n >= 1 && d >= 1, "reference_values needs n, d >= 1");
  ReferenceValues v;
  const std::size_t half = d / 2;
  mpz_class ah;
  const mpz_class total = binom_z(n + d - 1, n - 1);
  mpz_cdiv_q_ui(ah.get_mpz_t(), total.get_mpz_t(), n);
  v.ah95 = to_u64(ah, "AH95 value");
  const auto half_n = static_cast<std::int64_t>(n / 2);
  // n + half - 1 >= 0 always since n >= 1.
  v.gl17_intro = static_cast<std::int64_t>(to_u64(binom_z(n + half - 1, half), "GL17 value")) + half_n - 1;
  v.gl17_rank_bounds = static_cast<std::int64_t>(to_u64(binom_z(n + half - 1, n), "GL17 value")) + half_n - 1;
  const double nd = static_cast<double>(n);
  v.aft11 = 2.0 * std::pow(nd, static_cast<double>(half)) + nd - static_cast<double>(d) * std::log2(nd);
  v.aft11_rounded = std::llround(v.aft11);
  v.random_tensor_rank = std::pow(nd, static_cast<double>(d) - 1.0) / static_cast<double>(d);
  return v;
}

}  // namespace rankbar
