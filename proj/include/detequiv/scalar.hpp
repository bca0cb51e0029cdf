#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "detequiv/errors.hpp"

namespace detequiv {

class Scalar;

enum class FieldKind { Rational, Prime };

/// The field scalars live in: the rationals, or GF(p) for a prime p < 2^31.
class FieldSpec {
 public:
  static constexpr std::uint32_t kMaxModulus = 1u << 31;

  static FieldSpec rationals() { return FieldSpec(FieldKind::Rational, 0); }
  /// Throws PreconditionError unless p is prime and below 2^31.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "rational" or "prime:P".
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  /// Zero for the rationals.
  std::uint32_t modulus() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t value) const;
  /// Rationals: "a/b" or "a". Prime fields: a decimal integer reduced mod p.
  Scalar parse_scalar(std::string_view text) const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  FieldSpec(FieldKind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  FieldKind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

/// An exact field element in canonical form. Rationals are kept reduced with a
/// positive denominator; prime-field residues are kept in [0, p).
class Scalar {
 public:
  /// Rational zero.
  Scalar();
  explicit Scalar(mpq_class value);
  /// Residue `value` mod `field.modulus()`; `field` must be a prime field.
  Scalar(FieldSpec field, std::uint64_t value);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Throws DivisionByZero on zero.
  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Throws FieldMismatch when the operands come from different fields.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

  /// Representation order; only meaningful for deterministic sorting.
  friend std::strong_ordering repr_compare(const Scalar& lhs, const Scalar& rhs);

  std::string to_string() const;

  /// Only valid for rational scalars.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  /// Only valid for prime-field scalars.
  std::uint32_t residue() const { return std::get<Residue>(value_).value; }

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };

  void check_same_field(const Scalar& rhs) const;

  std::variant<mpq_class, Residue> value_;
};

/// Dense square table of scalars over a single field, row-major.
class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t n);
  Matrix(FieldSpec field, std::size_t n, std::vector<Scalar> entries);

  FieldSpec field() const { return field_; }
  std::size_t size() const { return n_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  const std::vector<Scalar>& data() const { return a_; }

  Matrix transposed() const;
  Matrix submatrix(const std::vector<std::size_t>& indices) const;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  FieldSpec field_;
  std::size_t n_;
  std::vector<Scalar> a_;
};

/// Exact determinant. The 0x0 determinant is 1.
///
/// Over the rationals each row is first scaled by the lcm of its denominators
/// and Bareiss fraction-free elimination runs on the resulting integers. Over
/// GF(p) it is plain Gaussian elimination with a nonzero-pivot search.
Scalar determinant(const Matrix& m);

}  // namespace detequiv
