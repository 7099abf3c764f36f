#include "hyperdyn/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

namespace hyperdyn {

namespace mp = boost::multiprecision;

namespace {

BigInt floor_div(const BigInt& n, const BigInt& d) {
  // d > 0
  BigInt q = n / d;
  if (n.sign() < 0 && q * d != n) --q;
  return q;
}

// floor(b * sqrt(c)) for integer b and non-square c > 0.
BigInt floor_mul_sqrt(const BigInt& b, const BigInt& c) {
  if (b.is_zero()) return 0;
  BigInt r = mp::sqrt(BigInt(b * b * c));
  return b.sign() > 0 ? r : BigInt(-r - 1);
}

// Nearest-ish double to num/den (den > 0); relative error below 2^-53 + 2^-62.
double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (num.is_zero()) return 0.0;
  const bool negative = num.sign() < 0;
  const BigInt n = negative ? BigInt(-num) : num;
  const long long shift =
      65 - (static_cast<long long>(mp::msb(n)) - static_cast<long long>(mp::msb(den)));
  BigInt q = shift >= 0 ? BigInt((n << static_cast<unsigned>(shift)) / den)
                        : BigInt(n / (den << static_cast<unsigned>(-shift)));
  long long exponent = -shift;
  const long long excess = static_cast<long long>(mp::msb(q)) - 63;
  if (excess > 0) {
    q >>= static_cast<unsigned>(excess);
    exponent += excess;
  }
  const auto mantissa = q.convert_to<std::uint64_t>();
  if (exponent > std::numeric_limits<int>::max()) exponent = std::numeric_limits<int>::max();
  if (exponent < std::numeric_limits<int>::min()) exponent = std::numeric_limits<int>::min();
  const double v = std::ldexp(static_cast<double>(mantissa), static_cast<int>(exponent));
  return negative ? -v : v;
}

double round_to_bits(double v, int bits) {
  if (v == 0.0 || bits >= 53 || !std::isfinite(v)) return v;
  int e = 0;
  const double m = std::frexp(v, &e);
  return std::ldexp(std::nearbyint(std::ldexp(m, bits)), e - bits);
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// BigInt's string constructor reads a leading 0 as an octal prefix
BigInt decimal_int(std::string_view digits) {
  const auto nz = digits.find_first_not_of('0');
  if (nz == std::string_view::npos) return 0;
  return BigInt(std::string(digits.substr(nz)));
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

BigInt Rational::floor() const { return floor_div(num_, den_); }

BigInt Rational::ceil() const { return -floor_div(-num_, den_); }

Rational Rational::reciprocal() const {
  if (num_.is_zero()) throw DomainError("reciprocal of zero");
  return Rational(den_, num_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_.is_zero()) throw DomainError("division by zero");
  return *this *= o.reciprocal();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const { return ratio_to_double(num_, den_); }

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty rational");
  std::string_view body = s;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto p = body.substr(0, slash);
    const auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw ParseError("malformed rational '" + s + "'");
    const BigInt den = decimal_int(q);
    if (den.is_zero()) throw ParseError("zero denominator in '" + s + "'");
    r = Rational(decimal_int(p), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto ip = body.substr(0, dot);
    const auto fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty())) {
      throw ParseError("malformed decimal '" + s + "'");
    }
    const std::string digits = std::string(ip) + std::string(fp);
    BigInt den = mp::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    r = Rational(decimal_int(digits), den);
  } else {
    if (!all_digits(body)) throw ParseError("malformed rational '" + s + "'");
    r = Rational(decimal_int(body));
  }
  return negative ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw DomainError("non-finite double has no exact value");
  if (d == 0.0) return 0;
  int e = 0;
  const double m = std::frexp(d, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  const int shift = e - 53;
  if (shift >= 0) return Rational(BigInt(mant) << shift);
  return Rational(BigInt(mant), BigInt(1) << -shift);
}

// ---------------------------------------------------------------- QuadNum

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  Rational a = a_ * o.a_ + Rational(5) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadNum QuadNum::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero in Q(sqrt5)");
  // norm is nonzero for nonzero elements since sqrt5 is irrational
  const Rational n = norm();
  return {a_ / n, -b_ / n};
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
  if (o.is_zero()) throw DomainError("division by zero in Q(sqrt5)");
  return *this *= o.reciprocal();
}

std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y) {
  const int s = quad_sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QuadNum::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  const std::string coef = b_.abs().to_string();
  const std::string root = coef == "1" ? "sqrt5" : coef + "*sqrt5";
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + root;
  return a_.to_string() + (b_.sign() < 0 ? " - " : " + ") + root;
}

QuadNum QuadNum::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty number");
  QuadNum total;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    bool saw_sign = false;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      negative ^= s[pos] == '-';
      saw_sign = true;
      ++pos;
    }
    if (!first && !saw_sign) throw ParseError("missing operator in '" + s + "'");
    const std::size_t end = s.find_first_of("+-", pos);
    const std::string_view term =
        std::string_view(s).substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    QuadNum value;
    constexpr std::string_view kRoot = "sqrt5";
    if (term == kRoot) {
      value = sqrt5();
    } else if (term.size() > kRoot.size() + 1 && term.ends_with(kRoot) &&
               term[term.size() - kRoot.size() - 1] == '*') {
      value = QuadNum(0, Rational::parse(term.substr(0, term.size() - kRoot.size() - 1)));
    } else if (term.find("sqrt") != std::string_view::npos) {
      throw ParseError("malformed term '" + std::string(term) + "'");
    } else {
      value = QuadNum(Rational::parse(term));
    }
    total += negative ? -value : value;
    first = false;
    pos = end == std::string::npos ? s.size() : end;
  }
  return total;
}

std::ostream& operator<<(std::ostream& os, const QuadNum& q) { return os << q.to_string(); }

// ---------------------------------------------------------------- free ops

QuadNum quad_arith(QuadOp op, const QuadNum& x, const QuadNum& y) {
  switch (op) {
    case QuadOp::add: return x + y;
    case QuadOp::sub: return x - y;
    case QuadOp::mul: return x * y;
    case QuadOp::div: return x / y;
  }
  throw DomainError("unknown operation");
}

int quad_sign(const QuadNum& x) {
  const int sa = x.rational_part().sign();
  const int sb = x.sqrt5_part().sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: the term with the larger square dominates
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt5_part();
  const auto cmp = a * a <=> Rational(5) * b * b;
  return cmp == std::strong_ordering::greater ? sa : sb;
}

BigInt quad_floor(const QuadNum& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt5_part();
  if (b.is_zero()) return a.floor();
  // x = (A + B sqrt5) / D over a common denominator D
  const BigInt d = mp::lcm(a.denominator(), b.denominator());
  const BigInt big_a = a.numerator() * (d / a.denominator());
  const BigInt big_b = b.numerator() * (d / b.denominator());
  return floor_div(big_a + floor_mul_sqrt(big_b, 5), d);
}

QuadNum quad_frac(const QuadNum& x) { return x - QuadNum(Rational(quad_floor(x))); }

QuadNum quad_abs(const QuadNum& x) { return quad_sign(x) < 0 ? -x : x; }

FloatApprox quad_to_float(const QuadNum& x, int precision) {
  if (precision < 24) throw DomainError("quad_to_float needs at least 24 bits of precision");
  const int bits = precision > 53 ? 53 : precision;
  if (x.is_zero()) return {};
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt5_part();
  const BigInt d = mp::lcm(a.denominator(), b.denominator());
  const BigInt big_a = a.numerator() * (d / a.denominator());
  const BigInt big_b = b.numerator() * (d / b.denominator());
  const unsigned k = static_cast<unsigned>(bits) + 64;
  // floor(B sqrt5 2^k) = floor(B sqrt(5 * 4^k)); truncation error < 1/(D 2^k)
  const BigInt numer = (big_a << k) + floor_mul_sqrt(big_b, BigInt(5) << (2 * k));
  const double value = round_to_bits(ratio_to_double(numer, d << k), bits);
  const double scale = (a.abs() + Rational(3) * b.abs()).to_double();
  const double bound =
      std::nextafter(std::ldexp(scale, 1 - bits), std::numeric_limits<double>::infinity());
  return {value, bound};
}

}  // namespace hyperdyn
