#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace circkit {

/// The coefficient field: the rationals, or F_p for a prime p.
class Field {
 public:
  Field() = default;

  static Field rational() { return Field(); }
  /// Throws DomainViolation unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }

  /// `Q` or `F<p>` as written in the text formats (e.g. `F7`).
  std::string to_string() const;
  static Field parse(std::string_view text);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t p_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; prime-field residues are integers in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v, Field field = Field::rational());
  Scalar(long num, long den, Field field = Field::rational());

  /// Integer or `p/q` literal (optionally signed).
  static Scalar parse(std::string_view text, Field field = Field::rational());

  Field field() const { return field_; }
  const mpq_class& value() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  Scalar inverse() const;
  Scalar pow(unsigned e) const;
  /// Same element, re-read in another field (rationals reduce mod p).
  Scalar in_field(Field target) const;

  std::string to_string() const;
  /// Decimal rendering with `digits` significant digits (for reports only).
  std::string to_decimal(int digits) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void reduce();
  void check_same(const Scalar& o) const;

  mpq_class value_;
  Field field_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Free-function spellings of the field operations.
inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar neg(const Scalar& a) { return -a; }
inline Scalar inv(const Scalar& a) { return a.inverse(); }

}  // namespace circkit
