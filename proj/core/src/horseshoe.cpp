#include "hyperdyn/horseshoe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace hyperdyn {

namespace {

// t -> scale * t + offset
struct Affine1 {
  Rational scale{1};
  Rational offset{0};

  Rational operator()(const Rational& t) const { return scale * t + offset; }
  Rational invert(const Rational& t) const { return (t - offset) / scale; }
  Interval image(const Interval& i) const {
    Rational a = (*this)(i.lo);
    Rational b = (*this)(i.hi);
    if (b < a) std::swap(a, b);
    return {a, b};
  }
  Interval preimage(const Interval& i) const {
    Rational a = invert(i.lo);
    Rational b = invert(i.hi);
    if (b < a) std::swap(a, b);
    return {a, b};
  }
  // this after other
  Affine1 after(const Affine1& other) const {
    return {scale * other.scale, scale * other.offset + offset};
  }
};

Affine1 x_branch(const HorseshoeParams& prm, Symbol s) {
  const Rational& mu = prm.contraction;
  if (s == 0) return {mu, 0};
  return prm.fold ? Affine1{-mu, 1} : Affine1{mu, Rational(1) - mu};
}

Affine1 y_branch(const HorseshoeParams& prm, Symbol s) {
  const Rational& lam = prm.expansion;
  if (s == 0) return {lam, 0};
  return prm.fold ? Affine1{-lam, lam} : Affine1{lam, Rational(1) - lam};
}

std::optional<Symbol> strip_of(const Rational& v, const Interval& s0, const Interval& s1) {
  if (s0.contains(v)) return Symbol{0};
  if (s1.contains(v)) return Symbol{1};
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

void check_binary(const Word& w) {
  for (Symbol s : w) {
    if (s > 1) throw DomainError("horseshoe symbols are 0 and 1");
  }
}

double linf(const SquarePoint& a, const SquarePoint& b) {
  const Rational dx = (a.x - b.x).abs();
  const Rational dy = (a.y - b.y).abs();
  return (dx < dy ? dy : dx).to_double();
}

}  // namespace

// ---------------------------------------------------------------- params

HorseshoeParams HorseshoeParams::parse_config(std::string_view text) {
  HorseshoeParams p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "contraction") {
      p.contraction = Rational::parse(value);
    } else if (key == "expansion") {
      p.expansion = Rational::parse(value);
    } else if (key == "fold") {
      if (value == "true" || value == "1") {
        p.fold = true;
      } else if (value == "false" || value == "0") {
        p.fold = false;
      } else {
        throw ParseError("fold must be true or false");
      }
    } else {
      throw ParseError("unknown horseshoe parameter '" + key + "'");
    }
  }
  p.validate();
  return p;
}

void HorseshoeParams::validate() const {
  if (!(Rational(0) < contraction && contraction < Rational(1, 2))) {
    throw DomainError("contraction must lie in (0, 1/2)");
  }
  if (!(expansion > Rational(2))) throw DomainError("expansion must exceed 2");
}

Interval HorseshoeParams::h_strip(Symbol s) const {
  const Rational h = expansion.reciprocal();
  return s == 0 ? Interval{0, h} : Interval{Rational(1) - h, 1};
}

Interval HorseshoeParams::v_strip(Symbol s) const {
  return s == 0 ? Interval{0, contraction} : Interval{Rational(1) - contraction, 1};
}

// ------------------------------------------------------------ SquarePoint

SquarePoint::SquarePoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {
  const Interval unit{0, 1};
  if (!unit.contains(x) || !unit.contains(y)) {
    throw DomainError("point (" + x.to_string() + ", " + y.to_string() +
                      ") is outside the unit square");
  }
}

std::string SquarePoint::to_string() const {
  return "(" + x.to_string() + ", " + y.to_string() + ")";
}

SquarePoint SquarePoint::parse(std::string_view text) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ParseError("point must look like (x, y): '" + s + "'");
  }
  const std::string body = s.substr(1, s.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos) {
    throw ParseError("point needs exactly two coordinates");
  }
  return {Rational::parse(body.substr(0, comma)), Rational::parse(body.substr(comma + 1))};
}

// ------------------------------------------------------------------- map

SquarePoint hs_apply(const HorseshoeParams& params, const SquarePoint& p) {
  const auto s = strip_of(p.y, params.h_strip(0), params.h_strip(1));
  if (!s) throw EscapeError("point " + p.to_string() + " escapes the square", 0, false);
  return {x_branch(params, *s)(p.x), y_branch(params, *s)(p.y)};
}

SquarePoint hs_inverse(const HorseshoeParams& params, const SquarePoint& p) {
  const auto s = strip_of(p.x, params.v_strip(0), params.v_strip(1));
  if (!s) throw EscapeError("point " + p.to_string() + " escapes the square", 0, true);
  return {x_branch(params, *s).invert(p.x), y_branch(params, *s).invert(p.y)};
}

Rect rect_for_address(const HorseshoeParams& params, const Word& word, RectKind orientation) {
  if (word.empty()) throw DomainError("rectangle address must be nonempty");
  check_binary(word);
  Interval span{0, 1};
  // innermost symbol first: V_{w0 w1 ..} = f_{w0}(V_{w1 ..} n H_{w0})
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    span = orientation == RectKind::vertical ? x_branch(params, *it).image(span)
                                             : y_branch(params, *it).preimage(span);
  }
  switch (orientation) {
    case RectKind::vertical: return {span, {0, 1}, word_to_string(word), RectKind::vertical};
    case RectKind::horizontal: return {{0, 1}, span, word_to_string(word), RectKind::horizontal};
    case RectKind::cell: break;
  }
  throw DomainError("rect_for_address needs a vertical or horizontal orientation");
}

// ----------------------------------------------------------------- coding

std::string SymbolWindow::to_string() const {
  return word_to_string(past) + "." + word_to_string(future);
}

SymbolWindow SymbolWindow::parse(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) throw ParseError("symbol window needs a '.' marker");
  SymbolWindow w{parse_word(text.substr(0, dot), 2), parse_word(text.substr(dot + 1), 2)};
  return w;
}

SymbolWindow encode(const HorseshoeParams& params, const SquarePoint& p, int depth) {
  if (depth < 0) throw DomainError("encode depth must be >= 0");
  SymbolWindow w;
  w.future.reserve(static_cast<std::size_t>(depth) + 1);
  SquarePoint cur = p;
  for (int i = 0; i <= depth; ++i) {
    const auto s = strip_of(cur.y, params.h_strip(0), params.h_strip(1));
    if (!s) {
      throw EscapeError("f^" + std::to_string(i) + "(p) leaves the horizontal strips", i,
                        false);
    }
    w.future.push_back(*s);
    if (i < depth) cur = hs_apply(params, cur);
  }
  w.past.assign(static_cast<std::size_t>(depth), 0);
  cur = p;
  for (int i = 1; i <= depth; ++i) {
    const auto s = strip_of(cur.x, params.v_strip(0), params.v_strip(1));
    if (!s) {
      throw EscapeError("f^-" + std::to_string(i - 1) + "(p) leaves the vertical strips",
                        -(i - 1), true);
    }
    w.past[static_cast<std::size_t>(depth - i)] = *s;
    if (i < depth) cur = hs_inverse(params, cur);
  }
  return w;
}

Rect decode(const HorseshoeParams& params, const SymbolWindow& window) {
  if (window.past.empty() || window.future.empty()) {
    throw DomainError("decode needs symbols on both sides of the marker");
  }
  const Word backward(window.past.rbegin(), window.past.rend());
  const Rect v = rect_for_address(params, backward, RectKind::vertical);
  const Rect h = rect_for_address(params, window.future, RectKind::horizontal);
  return {v.x, h.y, window.to_string(), RectKind::cell};
}

bool conjugacy_check(const HorseshoeParams& params, const SquarePoint& p, int depth) {
  const SymbolWindow wide = encode(params, p, depth + 1);
  const SymbolWindow image = encode(params, hs_apply(params, p), depth);
  SymbolWindow shifted;
  shifted.past.assign(wide.past.begin() + 2, wide.past.end());
  shifted.past.push_back(wide.future.front());
  shifted.future.assign(wide.future.begin() + 1, wide.future.end());
  return image == shifted;
}

SquarePoint periodic_point(const HorseshoeParams& params, const Word& period) {
  if (period.empty()) throw DomainError("period word must be nonempty");
  check_binary(period);
  Affine1 fx;
  Affine1 fy;
  for (Symbol s : period) {
    fx = x_branch(params, s).after(fx);
    fy = y_branch(params, s).after(fy);
  }
  // |scale| is mu^m < 1 for x and lambda^m > 1 for y, so both solve uniquely
  return {fx.offset / (Rational(1) - fx.scale), fy.offset / (Rational(1) - fy.scale)};
}

SymbolWindow code_window(const BiSeq& code, int depth) {
  if (depth < 1) throw DomainError("code depth must be >= 1");
  if (code.alphabet_size() != 2) throw DomainError("horseshoe codes use the 2-symbol alphabet");
  return {code.window(-depth, static_cast<std::size_t>(depth)),
          code.window(0, static_cast<std::size_t>(depth) + 1)};
}

SquarePoint code_point(const HorseshoeParams& params, const BiSeq& code, int depth) {
  return decode(params, code_window(code, depth)).center();
}

HsProximity hs_proximal(const HorseshoeParams& params, const BiSeq& x_code, const BiSeq& y_code,
                        int depth, int horizon) {
  if (horizon < 1) throw DomainError("hs_proximal needs horizon >= 1");
  HsProximity out;
  out.certificate = seq_proximal(x_code, y_code);
  out.symbolic = out.certificate.proximal;
  const Rational mu = params.contraction;
  const Rational inv = params.expansion.reciprocal();
  out.tolerance = std::pow((mu < inv ? inv : mu).to_double(), depth) * std::sqrt(2.0);

  out.distances.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int n = 0; n <= horizon; ++n) {
    out.distances.push_back(linf(code_point(params, shift(x_code, n), depth),
                                 code_point(params, shift(y_code, n), depth)));
  }
  out.min_distance = *std::min_element(out.distances.begin(), out.distances.end());
  out.tail_max = *std::max_element(out.distances.begin() + horizon / 2, out.distances.end());
  // points in different strips stay at least one strip gap apart
  const double gap = std::min((Rational(1) - Rational(2) * inv).to_double(),
                              (Rational(1) - Rational(2) * mu).to_double());
  out.corroborated = out.symbolic ? out.tail_max <= out.tolerance : out.tail_max >= gap;
  return out;
}

}  // namespace hyperdyn
