#include "hyperdyn/toral.hpp"

#include <cctype>
#include <sstream>

namespace hyperdyn {

namespace {

BigInt mod_floor(const BigInt& v, const BigInt& q) {
  BigInt r = v % q;
  if (r.sign() < 0) r += q;
  return r;
}

IntMat2 reduce(const IntMat2& m, const BigInt& q) {
  return {mod_floor(m.m11, q), mod_floor(m.m12, q), mod_floor(m.m21, q), mod_floor(m.m22, q)};
}

}  // namespace

IntMat2 IntMat2::inverse() const {
  const BigInt d = det();
  if (d != 1 && d != -1) throw DomainError("matrix " + to_string() + " is not invertible over Z");
  // adj(M) / det
  return {m22 * d, -m12 * d, -m21 * d, m11 * d};
}

IntMat2 operator*(const IntMat2& a, const IntMat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

IntMat2 operator-(const IntMat2& a, const IntMat2& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

std::string IntMat2::to_string() const {
  return "[[" + m11.str() + "," + m12.str() + "],[" + m21.str() + "," + m22.str() + "]]";
}

IntMat2 IntMat2::parse(std::string_view text) {
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      digits.push_back(c);
    } else if (c == '[' || c == ']' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      digits.push_back(' ');
    } else {
      throw ParseError("unexpected character in matrix '" + std::string(text) + "'");
    }
  }
  std::istringstream in(digits);
  std::vector<BigInt> entries;
  std::string tok;
  while (in >> tok) {
    if (tok == "-" || tok.find('-', 1) != std::string::npos) {
      throw ParseError("malformed matrix entry '" + tok + "'");
    }
    entries.emplace_back(tok);
  }
  if (entries.size() != 4) throw ParseError("matrix needs exactly 4 entries");
  return {entries[0], entries[1], entries[2], entries[3]};
}

IntMat2 cat_matrix() { return {2, 1, 1, 1}; }

IntMat2 mat_pow(const IntMat2& m, long long n) {
  IntMat2 base = n < 0 ? m.inverse() : m;
  unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(n);
  IntMat2 result = IntMat2::identity();
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

IntMat2 mat_pow_mod(const IntMat2& m, long long n, const BigInt& modulus) {
  if (modulus < 1) throw DomainError("modulus must be positive");
  IntMat2 base = reduce(n < 0 ? m.inverse() : m, modulus);
  unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(n);
  IntMat2 result = reduce(IntMat2::identity(), modulus);
  while (e > 0) {
    if (e & 1U) result = reduce(result * base, modulus);
    e >>= 1U;
    if (e > 0) base = reduce(base * base, modulus);
  }
  return result;
}

std::uint64_t matrix_order_mod(const IntMat2& m, const BigInt& modulus) {
  if (!m.is_unimodular()) throw DomainError("matrix order needs a unimodular matrix");
  if (modulus < 1) throw DomainError("modulus must be positive");
  const IntMat2 base = reduce(m, modulus);
  const IntMat2 id = reduce(IntMat2::identity(), modulus);
  IntMat2 acc = base;
  std::uint64_t k = 1;
  // GL(2, Z/qZ) is finite, so this terminates
  while (acc != id) {
    acc = reduce(acc * base, modulus);
    ++k;
  }
  return k;
}

TorusPoint::TorusPoint(QuadNum x, QuadNum y) : x_(quad_frac(x)), y_(quad_frac(y)) {}

BigInt TorusPoint::common_denominator() const {
  if (!is_rational()) throw DomainError("point " + to_string() + " has irrational coordinates");
  return boost::multiprecision::lcm(x_.rational_part().denominator(),
                                    y_.rational_part().denominator());
}

std::string TorusPoint::to_string() const {
  return "(" + x_.to_string() + ", " + y_.to_string() + ")";
}

TorusPoint TorusPoint::parse(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  auto last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty point");
  text = text.substr(first, last - first + 1);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError("point must look like (x, y): '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("point needs exactly two coordinates");
  }
  return {QuadNum::parse(text.substr(0, comma)), QuadNum::parse(text.substr(comma + 1))};
}

TorusPoint cat_apply(const IntMat2& m, const TorusPoint& p) {
  const QuadNum a(Rational(m.m11)), b(Rational(m.m12)), c(Rational(m.m21)), d(Rational(m.m22));
  return {a * p.x() + b * p.y(), c * p.x() + d * p.y()};
}

std::vector<TorusPoint> orbit(const TorusPoint& p, long long n_from, long long n_to,
                              const IntMat2& m) {
  if (n_from > n_to) throw DomainError("orbit range is empty (n_from > n_to)");
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  TorusPoint cur = n_from == 0 ? p : cat_apply(mat_pow(m, n_from), p);
  out.push_back(cur);
  for (long long k = n_from + 1; k <= n_to; ++k) {
    cur = cat_apply(m, cur);
    out.push_back(cur);
  }
  return out;
}

std::uint64_t period(const TorusPoint& p, const IntMat2& m) {
  if (!p.is_rational()) {
    throw DomainError("period needs rational coordinates; " + p.to_string() + " is irrational");
  }
  if (!m.is_unimodular()) throw DomainError("period needs a unimodular matrix");
  const std::uint64_t bound = matrix_order_mod(m, p.common_denominator());
  TorusPoint cur = p;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    cur = cat_apply(m, cur);
    if (cur == p) return n;
  }
  // M^bound = I mod q fixes every point with denominator q
  throw DomainError("period search exceeded the matrix order bound");
}

BigInt fixed_point_count(unsigned n, const IntMat2& m) {
  if (n == 0) throw DomainError("fixed_point_count needs n >= 1");
  const BigInt d = (mat_pow(m, n) - IntMat2::identity()).det();
  return d.sign() < 0 ? BigInt(-d) : d;
}

QuadNum torus_distance(const TorusPoint& a, const TorusPoint& b) {
  auto wrap = [](const QuadNum& u, const QuadNum& v) {
    const QuadNum d = quad_frac(u - v);
    const QuadNum e = QuadNum(1) - d;
    return d < e ? d : e;
  };
  QuadNum dx = wrap(a.x(), b.x());
  QuadNum dy = wrap(a.y(), b.y());
  return dx < dy ? dy : dx;
}

FibTable::FibTable(std::size_t max_index) {
  values_.reserve(max_index + 1);
  values_.emplace_back(0);
  if (max_index >= 1) values_.emplace_back(1);
  for (std::size_t n = 2; n <= max_index; ++n) values_.push_back(values_[n - 1] + values_[n - 2]);
}

BigInt fibonacci(unsigned n) { return FibTable(n)[n]; }

}  // namespace hyperdyn
