#include "rankbar/scalar.hpp"

#include <ostream>

#include "rankbar/error.hpp"

namespace rankbar {
namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod_u64(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  require(p >= kMinPrime, "prime field characteristic " + std::to_string(p) + " is below the safety floor 2^31-1");
  require(p < (1ULL << 63), "prime field characteristic must be < 2^63");
  require(is_prime_u64(p), std::to_string(p) + " is not prime");
  return Field(p);
}

std::string Field::name() const { return is_rational() ? "rational" : "prime(" + std::to_string(modulus_) + ")"; }

Scalar Scalar::modular(std::uint64_t v, std::uint64_t p) {
  Scalar s;
  s.p_ = p;
  s.v_ = v % p;
  return s;
}

Scalar Scalar::in_field(const mpq_class& q, const Field& f) {
  Scalar s(q);
  if (!f.is_rational()) s.lift_to(f.modulus());
  return s;
}

Scalar Scalar::from_string(std::string_view text, const Field& f) {
  mpq_class q;
  std::string t(text);
  if (t.empty() || q.set_str(t, 10) != 0) throw InputError("malformed coefficient \"" + t + "\"");
  if (q.get_den() == 0) throw InputError("zero denominator in coefficient \"" + t + "\"");
  q.canonicalize();
  return in_field(q, f);
}

Field Scalar::field() const { return p_ == 0 ? Field::rational() : Field::prime(p_); }

const mpq_class& Scalar::rational() const {
  require(p_ == 0, "rational() called on a prime-field element");
  return q_;
}

std::uint64_t Scalar::residue() const {
  require(p_ != 0, "residue() called on a rational");
  return v_;
}

void Scalar::lift_to(std::uint64_t p) {
  std::uint64_t num = mpz_mod_u64(q_.get_num(), p);
  std::uint64_t den = mpz_mod_u64(q_.get_den(), p);
  require(den != 0, "denominator divisible by the field characteristic");
  v_ = mulmod(num, powmod(den, p - 2, p), p);
  p_ = p;
  q_ = 0;
}

void Scalar::unify(Scalar& o) {
  if (p_ == o.p_) return;
  if (p_ == 0) {
    lift_to(o.p_);
  } else if (o.p_ == 0) {
    o.lift_to(p_);
  } else {
    throw ContractViolation("arithmetic between different prime fields");
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == 0) {
    r.q_ = -q_;
  } else {
    r.v_ = v_ == 0 ? 0 : p_ - v_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (p_ == o.p_) {
    if (p_ == 0) {
      q_ += o.q_;
    } else {
      std::uint64_t s = v_ + o.v_;  // p < 2^63, no overflow
      v_ = s >= p_ ? s - p_ : s;
    }
    return *this;
  }
  Scalar b = o;
  unify(b);
  return *this += b;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (p_ == o.p_) {
    if (p_ == 0) {
      q_ *= o.q_;
    } else {
      v_ = mulmod(v_, o.v_, p_);
    }
    return *this;
  }
  Scalar b = o;
  unify(b);
  return *this *= b;
}

Scalar Scalar::inverse() const {
  require(!is_zero(), "division by zero");
  Scalar r = *this;
  if (p_ == 0) {
    r.q_ = 1 / q_;
  } else {
    r.v_ = powmod(v_, p_ - 2, p_);
  }
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require(!o.is_zero(), "division by zero");
  if (p_ == 0 && o.p_ == 0) {
    q_ /= o.q_;
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_ == 0 ? a.q_ == b.q_ : a.v_ == b.v_;
  Scalar x = a;
  Scalar y = b;
  x.unify(y);
  return x.v_ == y.v_;
}

std::string Scalar::to_string() const { return p_ == 0 ? q_.get_str() : std::to_string(v_); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar binomial(unsigned long n, unsigned long k) {
  if (k > n) return Scalar(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Scalar(z);
}

Scalar factorial(unsigned long n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return Scalar(z);
}

}  // namespace rankbar
