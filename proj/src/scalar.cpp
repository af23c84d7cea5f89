#include "circkit/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "circkit/errors.hpp"

namespace circkit {

Field Field::prime(std::uint64_t p) {
  mpz_class z(std::to_string(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
    throw DomainViolation("field characteristic " + std::to_string(p) + " is not prime");
  }
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::to_string() const {
  return is_rational() ? std::string("Q") : "F" + std::to_string(p_);
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rational();
  if (text.size() >= 2 && text[0] == 'F') {
    std::string_view digits = text.substr(1);
    if (digits.size() >= 2 && digits.front() == '<' && digits.back() == '>') {
      digits = digits.substr(1, digits.size() - 2);
    }
    if (!digits.empty() && digits.size() < 20) {
      std::uint64_t p = 0;
      for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw SyntaxError("bad field `" + std::string(text) + "`");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return prime(p);
    }
  }
  throw SyntaxError("bad field `" + std::string(text) + "`");
}

Scalar::Scalar(const mpq_class& v, Field field) : value_(v), field_(field) {
  value_.canonicalize();
  reduce();
}

Scalar::Scalar(long num, long den, Field field) : field_(field) {
  if (den == 0) throw DivisionByZero("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
  reduce();
}

Scalar Scalar::parse(std::string_view text, Field field) {
  std::string s(text);
  if (s.empty()) throw SyntaxError("empty scalar literal");
  auto valid = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+') {
    throw SyntaxError("bad scalar literal `" + s + "`");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw DivisionByZero("zero denominator in `" + s + "`");
  return Scalar(mpq_class(n, d), field);
}

void Scalar::reduce() {
  if (field_.is_rational()) return;
  const mpz_class p(std::to_string(field_.characteristic()));
  mpz_class num = value_.get_num();
  mpz_class den = value_.get_den();
  if (den != 1) {
    mpz_class dm = den % p;
    if (dm == 0) throw DivisionByZero("denominator divisible by the characteristic");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
    num *= inv;
  }
  num %= p;
  if (num < 0) num += p;
  value_ = mpq_class(num);
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) {
    throw FieldMismatch("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  value_ += o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  value_ -= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  value_ *= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.value_ = -r.value_;
  r.reduce();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Scalar r = *this;
  r.value_ = 1 / value_;
  r.value_.canonicalize();
  r.reduce();
  return r;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result(mpq_class(1), field_);
  Scalar base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

Scalar Scalar::in_field(Field target) const {
  if (target == field_) return *this;
  if (!field_.is_rational()) throw FieldMismatch("cannot lift a residue to another field");
  return Scalar(value_, target);
}

std::string Scalar::to_string() const { return value_.get_str(); }

std::string Scalar::to_decimal(int digits) const {
  mpf_class f(value_, 256);
  std::ostringstream os;
  os.precision(digits);
  os << f;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace circkit
