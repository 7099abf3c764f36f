#pragma once

// Exact arithmetic over Q and the quadratic field Q(sqrt5).
//
// Every value is kept in canonical form after each operation, so equality is
// structural. Nothing in this header touches floating point except the
// explicit to_float() projection.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperdyn/errors.hpp"

namespace hyperdyn {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  BigInt floor() const;
  BigInt ceil() const;
  Rational abs() const { return num_.sign() < 0 ? -*this : *this; }
  Rational reciprocal() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Nearest double (round-to-nearest on the exact quotient).
  double to_double() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Accepts "p", "p/q" and finite decimals such as "-0.125".
  static Rational parse(std::string_view text);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Floating-point projection of an exact value together with an a-priori
/// bound on its absolute error.
struct FloatApprox {
  double value = 0.0;
  double error_bound = 0.0;
};

/// a + b*sqrt5 with rational a, b.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNum(long long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  QuadNum(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadNum sqrt5() { return {0, 1}; }
  /// (1+sqrt5)/2
  static QuadNum golden() { return {Rational(1, 2), Rational(1, 2)}; }
  /// (1-sqrt5)/2
  static QuadNum golden_conjugate() { return {Rational(1, 2), Rational(-1, 2)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QuadNum conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - 5 b^2.
  Rational norm() const { return a_ * a_ - Rational(5) * b_ * b_; }
  QuadNum reciprocal() const;

  QuadNum operator-() const { return {-a_, -b_}; }
  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator/=(const QuadNum& o);

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }

  friend bool operator==(const QuadNum& x, const QuadNum& y) = default;
  /// Ordering on the real line, decided with integer arithmetic only.
  friend std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y);

  /// Canonical text "a + b*sqrt5" (terms with zero coefficient omitted).
  std::string to_string() const;
  /// Whitespace-insensitive; accepts signed sums of "r", "r*sqrt5" and
  /// "sqrt5" terms where r is anything Rational::parse accepts.
  static QuadNum parse(std::string_view text);

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const QuadNum& q);

enum class QuadOp { add, sub, mul, div };

/// Exact field operation; div by zero throws DomainError.
QuadNum quad_arith(QuadOp op, const QuadNum& x, const QuadNum& y);

/// Sign of x on the real line: -1, 0 or +1.
int quad_sign(const QuadNum& x);

/// Greatest integer n with n <= x.
BigInt quad_floor(const QuadNum& x);

/// x - floor(x), in [0, 1).
QuadNum quad_frac(const QuadNum& x);

QuadNum quad_abs(const QuadNum& x);

/// Binary float rounded to `precision` significant bits (clamped to 53),
/// within 2^(1-precision) * (|a| + 3|b|) of x. Requires precision >= 24.
FloatApprox quad_to_float(const QuadNum& x, int precision = 53);

/// Exact value of a finite double.
Rational rational_from_double(double d);

}  // namespace hyperdyn
