#include "rankbar/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "rankbar/error.hpp"

namespace rankbar {

Monomial::Monomial(std::vector<std::uint32_t> exps)
    : exps_(std::move(exps)), degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::unit(std::size_t num_vars, std::size_t var, std::uint32_t power) {
  require(var < num_vars, "variable index out of range");
  Monomial m(num_vars);
  m.set(var, power);
  return m;
}

bool Monomial::divisible_by(const Monomial& o) const {
  if (o.degree_ > degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] < o.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  require(exps_.size() == o.exps_.size(), "monomial arity mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ += o.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  require(divisible_by(o), "monomial not divisible");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= o.exps_[i];
  r.degree_ -= o.degree_;
  return r;
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  // Same degree: the monomial with the larger leading exponent is larger.
  for (std::size_t i = 0; i < a.exps_.size() && i < b.exps_.size(); ++i) {
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  }
  return a.exps_.size() <=> b.exps_.size();
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) {
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void fill_degree(std::size_t num_vars, std::uint32_t d, std::size_t pos, std::vector<std::uint32_t>& cur,
                 std::vector<Monomial>& out) {
  if (pos + 1 == num_vars) {
    cur[pos] = d;
    out.emplace_back(cur);
    return;
  }
  for (std::uint32_t e = d + 1; e-- > 0;) {
    cur[pos] = e;
    fill_degree(num_vars, d - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, std::uint32_t d) {
  std::vector<Monomial> out;
  if (num_vars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> cur(num_vars, 0);
  fill_degree(num_vars, d, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t num_vars, std::uint32_t d) {
  std::vector<Monomial> out;
  for (std::uint32_t k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(num_vars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace rankbar
