#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rankbar {

/// Exponent vector x^e. Ordered graded-lexicographically: total degree
/// first, then the exponent of x_1, then x_2, and so on.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);
  Monomial(std::initializer_list<std::uint32_t> exps) : Monomial(std::vector<std::uint32_t>(exps)) {}

  static Monomial unit(std::size_t num_vars, std::size_t var, std::uint32_t power = 1);

  std::size_t num_vars() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const { return exps_; }

  /// True iff every exponent of *this is >= the matching exponent of other.
  bool divisible_by(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  /// Requires divisible_by(o).
  Monomial operator/(const Monomial& o) const;

  void set(std::size_t i, std::uint32_t e);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.degree_ == b.degree_ && a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials in num_vars variables of total degree exactly d, ascending.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, std::uint32_t d);
/// All monomials of total degree <= d, ascending.
std::vector<Monomial> monomials_up_to_degree(std::size_t num_vars, std::uint32_t d);

}  // namespace rankbar
