#pragma once

// The cat map x -> Ax (mod 1) on the 2-torus, with exact iteration over
// Q(sqrt5). Other SL(2,Z) / GL(2,Z) automorphisms are accepted wherever a
// matrix argument appears.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdyn/exactnum.hpp"

namespace hyperdyn {

/// 2x2 integer matrix [[m11, m12], [m21, m22]].
struct IntMat2 {
  BigInt m11{1}, m12{0}, m21{0}, m22{1};

  static IntMat2 identity() { return {}; }

  BigInt det() const { return m11 * m22 - m12 * m21; }
  BigInt trace() const { return m11 + m22; }
  bool is_unimodular() const {
    const BigInt d = det();
    return d == 1 || d == -1;
  }
  /// Inverse of a unimodular matrix; DomainError otherwise.
  IntMat2 inverse() const;

  friend IntMat2 operator*(const IntMat2& a, const IntMat2& b);
  friend IntMat2 operator-(const IntMat2& a, const IntMat2& b);
  friend bool operator==(const IntMat2& a, const IntMat2& b) = default;

  /// "[[a,b],[c,d]]"
  std::string to_string() const;
  static IntMat2 parse(std::string_view text);
};

/// Matrix of the cat map, [[2,1],[1,1]].
IntMat2 cat_matrix();

/// Exact n-th power by binary exponentiation; n < 0 needs det = +-1.
IntMat2 mat_pow(const IntMat2& m, long long n);

/// n-th power with entries reduced into [0, modulus). n < 0 needs det = +-1.
IntMat2 mat_pow_mod(const IntMat2& m, long long n, const BigInt& modulus);

/// Least k >= 1 with m^k = I (mod modulus). m must be unimodular.
std::uint64_t matrix_order_mod(const IntMat2& m, const BigInt& modulus);

/// A point of T^2 = [0,1) x [0,1); coordinates are reduced on construction.
class TorusPoint {
 public:
  TorusPoint() = default;
  TorusPoint(QuadNum x, QuadNum y);

  const QuadNum& x() const { return x_; }
  const QuadNum& y() const { return y_; }

  bool is_rational() const { return x_.is_rational() && y_.is_rational(); }
  /// lcm of the coordinate denominators; DomainError unless is_rational().
  BigInt common_denominator() const;

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) = default;
  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    return {a.x_ + b.x_, a.y_ + b.y_};
  }
  friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
    return {a.x_ - b.x_, a.y_ - b.y_};
  }

  /// "(x, y)" with each coordinate in QuadNum text form.
  std::string to_string() const;
  static TorusPoint parse(std::string_view text);

 private:
  QuadNum x_;
  QuadNum y_;
};

/// M p (mod 1).
TorusPoint cat_apply(const IntMat2& m, const TorusPoint& p);

/// [M^k p for k = n_from..n_to].
std::vector<TorusPoint> orbit(const TorusPoint& p, long long n_from, long long n_to,
                              const IntMat2& m = cat_matrix());

/// Least n >= 1 with M^n p = p. Rational points only.
std::uint64_t period(const TorusPoint& p, const IntMat2& m = cat_matrix());

/// Number of points with M^n p = p, i.e. |det(M^n - I)|.
BigInt fixed_point_count(unsigned n, const IntMat2& m = cat_matrix());

/// Exact torus distance: L-infinity norm with per-coordinate wraparound.
QuadNum torus_distance(const TorusPoint& a, const TorusPoint& b);

/// F_0..F_N by the recurrence F_n = F_{n-1} + F_{n-2}.
class FibTable {
 public:
  explicit FibTable(std::size_t max_index);

  const BigInt& operator[](std::size_t n) const { return values_.at(n); }
  std::size_t max_index() const { return values_.size() - 1; }

 private:
  std::vector<BigInt> values_;
};

BigInt fibonacci(unsigned n);

inline std::ostream& operator<<(std::ostream& os, const IntMat2& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const TorusPoint& v) { return os << v.to_string(); }

}  // namespace hyperdyn
