#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace lpa {

class Scalar;

/// Coefficient field of an algebra: the rationals or a prime field F_p, p < 2^31.
class Field {
 public:
  /// The rational numbers (the default field).
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws PreconditionError unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  /// Parses the CLI selector `q` or `fp:<p>`.
  static Field parse(std::string_view selector);

  bool is_rational() const noexcept { return modulus_ == 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t k) const;
  /// num/den mapped into the field; throws DivisionByZero if den maps to zero.
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const;
  /// Parses `a`, `a/b` or `k mod p` (the latter only for a matching F_p).
  Scalar parse_scalar(std::string_view text) const;

  /// `q` or `fp:<p>`; accepted back by parse().
  std::string selector() const;

  friend bool operator==(Field, Field) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t modulus) : modulus_(modulus) {}
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Rationals are kept reduced with positive
/// denominator; residues are kept in [0, p).
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;
  explicit Scalar(mpq_class q);
  Scalar(std::uint64_t residue, std::uint32_t modulus);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Rational value; requires a rational scalar.
  const mpq_class& rational() const;
  /// Residue in [0, p); requires a modular scalar.
  std::uint32_t residue() const;

  /// Throws DivisionByZero for zero.
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  /// *this -= a * b without temporaries.
  void sub_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// `a`, `a/b` for rationals and `k mod p` for residues.
  std::string to_string() const;
  /// Coefficient text without the field suffix: `a`, `a/b` or `k`.
  std::string coefficient_string() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };

  const Residue& check_same_modulus(const Scalar& rhs) const;

  std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace lpa
