#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankbar/monomial.hpp"
#include "rankbar/scalar.hpp"

namespace rankbar {

/// Monomial basis a polynomial's coefficients refer to.
///
/// In the divided basis, the basis element for exponent a is
/// x^a / a!  (a! = prod a_i!), so that d/dx^a sends x^(a+b) to x^b.
enum class Basis { standard, divided };

std::string to_string(Basis b);

/// Sparse exact multivariate polynomial.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality. Ring
/// operations require both operands to share num_vars and basis.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Scalar>;

  explicit Polynomial(std::size_t num_vars = 0, Basis basis = Basis::standard)
      : num_vars_(num_vars), basis_(basis) {}

  /// Sorts, merges duplicate monomials, and drops zero coefficients.
  static Polynomial from_terms(std::size_t num_vars, Basis basis, std::vector<Term> terms);
  static Polynomial constant(std::size_t num_vars, const Scalar& c, Basis basis = Basis::standard);
  /// x_var; identical in both bases.
  static Polynomial variable(std::size_t num_vars, std::size_t var, Basis basis = Basis::standard);
  static Polynomial term(const Monomial& m, const Scalar& c, Basis basis = Basis::standard);

  std::size_t num_vars() const { return num_vars_; }
  Basis basis() const { return basis_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree()); }
  int min_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }
  /// The zero polynomial counts as homogeneous of every degree.
  bool is_homogeneous() const { return terms_.empty() || degree() == min_degree(); }
  bool is_homogeneous_of(int d) const { return terms_.empty() || (degree() == d && min_degree() == d); }

  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const;
  /// Graded-lex largest term. Requires !is_zero().
  const Term& leading_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned k) const;
  /// Product keeping only monomials of degree <= max_degree.
  Polynomial mul_truncated(const Polynomial& o, int max_degree) const;

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& o, const char* op) const;

  std::size_t num_vars_;
  Basis basis_;
  std::vector<Term> terms_;
};

/// Ordered partition of the variable indices into blocks x_1, ..., x_d.
class VariablePartition {
 public:
  VariablePartition() = default;
  /// Throws ContractViolation unless the blocks are disjoint and cover [num_vars].
  VariablePartition(std::size_t num_vars, std::vector<std::vector<std::size_t>> blocks);
  /// d consecutive blocks of n variables each: block j holds vars j*n .. j*n+n-1.
  static VariablePartition uniform(std::size_t blocks, std::size_t block_size);

  std::size_t num_vars() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::size_t>& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t block_of(std::size_t var) const { return block_of_.at(var); }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Subset S of the block indices [d], stored as a bitmask (d <= 32).
class BlockSet {
 public:
  BlockSet() = default;
  explicit BlockSet(std::uint32_t mask) : mask_(mask) {}
  static BlockSet of(std::initializer_list<std::size_t> blocks);
  static BlockSet of(const std::vector<std::size_t>& blocks);
  static BlockSet all(std::size_t d);

  std::uint32_t mask() const { return mask_; }
  bool contains(std::size_t i) const { return i < 32 && ((mask_ >> i) & 1U) != 0; }
  std::size_t size() const;
  BlockSet complement(std::size_t d) const { return BlockSet(all(d).mask_ & ~mask_); }
  std::vector<std::size_t> elements() const;
  /// Largest element + 1, or 0 for the empty set.
  std::size_t span() const;

  friend bool operator==(const BlockSet&, const BlockSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Vector of polynomials sharing num_vars and basis.
class PolyVector {
 public:
  PolyVector() = default;
  explicit PolyVector(std::vector<Polynomial> entries);
  PolyVector(std::size_t length, std::size_t num_vars, Basis basis);

  std::size_t size() const { return entries_.size(); }
  const Polynomial& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Polynomial>& entries() const { return entries_; }

  bool is_zero() const;
  /// Max entry degree, -1 if all zero.
  int degree() const;
  std::size_t num_vars() const { return entries_.empty() ? 0 : entries_[0].num_vars(); }

  friend bool operator==(const PolyVector&, const PolyVector&) = default;

 private:
  std::vector<Polynomial> entries_;
};

/// H_t[p]: the degree-t homogeneous part.
Polynomial homogeneous_component(const Polynomial& p, int t);
/// H_{<=t}[p].
Polynomial truncate_degree(const Polynomial& p, int t);
PolyVector homogeneous_component(const PolyVector& v, int t);

/// H^SM_S[p]: monomials of degree |S| using exactly one variable from each
/// block in S and no variable from any other block.
Polynomial sm_component(const Polynomial& p, const VariablePartition& part, BlockSet s);
PolyVector sm_component(const PolyVector& v, const VariablePartition& part, BlockSet s);
/// p == sm_component(p, part, s).
bool is_set_multilinear_in(const Polynomial& p, const VariablePartition& part, BlockSet s);
/// Every monomial is multilinear and takes at most one variable per block.
bool is_set_multilinear(const Polynomial& p, const VariablePartition& part);

/// Iterated partial derivative d/dx^a. Works in the divided basis; standard
/// input is converted internally and the result converted back.
Polynomial partial_derivative(const Polynomial& p, const Monomial& a);

/// Re-expresses p in the target basis (coefficient of x^a scaled by a! or 1/a!).
Polynomial basis_convert(const Polynomial& p, Basis target);

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point);

/// p(x + shift), keeping only monomials of degree <= max_degree when given.
Polynomial shift_variables(const Polynomial& p, std::span<const Scalar> shift,
                           std::optional<int> max_degree = std::nullopt);

/// Exact quotient p / q, or nullopt if q does not divide p.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q);

/// Renames variable i to perm[i].
Polynomial permute_variables(const Polynomial& p, std::span<const std::size_t> perm);

/// Embeds p into a ring with more variables: variable i becomes offset + i.
Polynomial embed(const Polynomial& p, std::size_t num_vars, std::size_t offset);

}  // namespace rankbar
