#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rankbar/matrix.hpp"
#include "rankbar/poly_matrix.hpp"
#include "rankbar/polynomial.hpp"

namespace rankbar {

/// Which class of "simple" objects a rank method is measured against:
/// d-th powers of affine forms (waring) or rank-one tensors (tensor).
enum class Family { waring, tensor };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Order-d tensor with side n, stored sparsely. Indices are 0-based here
/// (1-based in JSON).
class Tensor {
 public:
  using Index = std::vector<std::uint32_t>;

  Tensor(std::size_t n, std::size_t d);
  static Tensor diagonal(std::size_t n, std::size_t d);
  /// u_1 (x) ... (x) u_d; every factor must have length n.
  static Tensor rank_one(const std::vector<std::vector<Scalar>>& factors);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  const std::map<Index, Scalar>& entries() const { return entries_; }
  Scalar at(const Index& idx) const;
  void set(const Index& idx, const Scalar& value);

  Tensor& operator+=(const Tensor& o);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend bool operator==(const Tensor&, const Tensor&) = default;

  /// The set-multilinear polynomial sum T[i] prod_j x_{j, i_j} in n*d
  /// variables (block j holds variables j*n .. j*n + n - 1).
  Polynomial to_polynomial() const;

 private:
  void check_index(const Index& idx) const;

  std::size_t n_;
  std::size_t d_;
  std::map<Index, Scalar> entries_;
};

/// A linear map from polynomials (waring family: degree <= d in n variables,
/// divided basis) or from Ten_{n,d} (tensor family) to m x m matrices, given
/// by the images of basis elements. Unlisted basis elements map to zero.
class LinearMap {
 public:
  /// Waring: exponent vector of length n with |e| <= d.
  /// Tensor: index tuple of length d with entries < n.
  using Key = std::vector<std::uint32_t>;

  LinearMap(Family family, std::size_t n, std::size_t d, std::size_t m);

  Family family() const { return family_; }
  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  std::size_t m() const { return m_; }
  const std::map<Key, Matrix>& images() const { return images_; }

  void set_image(const Key& key, Matrix image);
  /// The image of a basis element (zero matrix if unlisted).
  Matrix image(const Key& key) const;
  /// Every basis index of the domain, in canonical order.
  std::vector<Key> basis() const;
  bool is_valid_key(const Key& key) const;

 private:
  Family family_;
  std::size_t n_;
  std::size_t d_;
  std::size_t m_;
  std::map<Key, Matrix> images_;
};

/// sum_e coeff_e(f) M_e, with f expanded in the divided basis.
Matrix apply_map(const LinearMap& l, const Polynomial& f);
/// sum_idx T[idx] A_idx.
Matrix apply_map(const LinearMap& l, const Tensor& t);

/// L(l^d) for the generic affine form l = y_0 + sum_i y_i x_i, as a matrix of
/// degree-d homogeneous polynomials in (y_0, y_1, ..., y_n).
PolyMatrix symbolic_image_waring(const LinearMap& l);
/// L(x_1 (x) ... (x) x_d), a set-multilinear matrix in the n*d variables
/// laid out as VariablePartition::uniform(d, n).
PolyMatrix symbolic_image_tensor(const LinearMap& l);
PolyMatrix symbolic_image(const LinearMap& l);

/// Partial-derivative flattening of a homogeneous degree-d polynomial: rows
/// are degree-k monomials a, columns degree-(d-k) monomials b, entry is the
/// divided-basis coefficient of x^b in d/dx^a f.
Matrix catalecticant(const Polynomial& f, int degree, int k);
/// Same, with the degree read off f (f must be nonzero).
Matrix catalecticant(const Polynomial& f, int k);
/// The catalecticant as a waring-family LinearMap (padded to square).
LinearMap catalecticant_map(std::size_t n, std::size_t d, std::size_t k);

/// Rows indexed by the modes in S, columns by the rest (first mode most
/// significant). S must be a nonempty proper subset of [d].
Matrix mode_flattening(const Tensor& t, BlockSet s);
/// The mode flattening as a tensor-family LinearMap (padded to square).
LinearMap mode_flattening_map(std::size_t n, std::size_t d, BlockSet s);

/// (d+1) * C(n + floor(d/2), n) for waring, 2^d * n^floor(d/2) for tensor:
/// the most any rank method can certify per unit of its rank on simple
/// objects. Throws ContractViolation on overflow or n, d < 1.
std::uint64_t barrier_bound(Family family, std::size_t n, std::size_t d);

struct LowerBoundResult {
  std::size_t mu_f = 0;
  std::size_t mu_s = 0;
  mpq_class bound;         // mu_f / mu_s
  mpz_class bound_ceiling;
  std::uint64_t barrier = 0;
  bool within_barrier = true;
};

using MapInput = std::variant<Polynomial, Tensor>;

/// rank(L(f)) / mu_s. mu_s must be an upper bound on rank(L(g)) over simple
/// g; mu_s = 0 is refused.
LowerBoundResult lower_bound(const LinearMap& l, const MapInput& f, std::size_t mu_s);

/// Literature values used for context in reports; never part of a check.
struct ReferenceValues {
  /// ceil(C(n+d-1, n-1) / n): generic Waring rank.
  std::uint64_t ah95 = 0;
  /// C(n + floor(d/2) - 1, floor(d/2)) + floor(n/2) - 1 (introduction form).
  std::int64_t gl17_intro = 0;
  /// C(n + floor(d/2) - 1, n) + floor(n/2) - 1 (rank-bounds section form).
  std::int64_t gl17_rank_bounds = 0;
  /// 2 n^floor(d/2) + n - d log2(n).
  double aft11 = 0;
  std::int64_t aft11_rounded = 0;
  /// n^(d-1) / d: order of the rank of a random tensor.
  double random_tensor_rank = 0;
};

ReferenceValues reference_values(std::size_t n, std::size_t d);

}  // namespace rankbar
