#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rankbar {

/// Selects the coefficient field: exact rationals or a prime field F_p.
class Field {
 public:
  /// Smallest characteristic accepted for a prime field.
  static constexpr std::uint64_t kMinPrime = 2147483647ULL;  // 2^31 - 1

  static Field rational() { return Field(0); }
  /// Throws ContractViolation unless p is a prime >= kMinPrime and < 2^63.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t m) : modulus_(m) {}
  std::uint64_t modulus_;
};

bool is_prime_u64(std::uint64_t n);

/// An exact field element.
///
/// Rationals are kept in lowest terms (GMP canonical form). Prime-field
/// elements carry their modulus. A rational combined with a prime-field
/// element is first reduced into that field, so integer constants work in
/// either backend; mixing two different primes is a contract violation.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Scalar(const mpz_class& z) : q_(z) {}

  /// Element of F_p with canonical representative v mod p.
  static Scalar modular(std::uint64_t v, std::uint64_t p);
  /// Image of a rational in the given field. Throws if the denominator is
  /// divisible by the characteristic.
  static Scalar in_field(const mpq_class& q, const Field& f);
  static Scalar from_string(std::string_view text, const Field& f);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t modulus() const { return p_; }
  Field field() const;

  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : v_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : v_ == 1; }

  /// Valid only for rationals.
  const mpq_class& rational() const;
  /// Canonical representative in [0, p); valid only for prime elements.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "p/q", "p", or the residue for prime elements.
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  void unify(Scalar& o);
  void lift_to(std::uint64_t p);

  mpq_class q_{0};
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

Scalar binomial(unsigned long n, unsigned long k);
Scalar factorial(unsigned long n);

}  // namespace rankbar
