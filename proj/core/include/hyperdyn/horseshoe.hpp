#pragma once

// Piecewise-affine Smale horseshoe on the unit square.
//
// The map contracts x by mu and expands y by lambda. Horizontal strips
// H_0 = [0,1] x [0, 1/lambda] and H_1 = [0,1] x [1 - 1/lambda, 1] are sent
// onto vertical strips V_0 = [0, mu] x [0,1] and V_1 = [1 - mu, 1] x [0,1].
// With `fold` set the 1-branch reverses orientation in both coordinates.
// Everything is exact rational arithmetic.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdyn/exactnum.hpp"
#include "hyperdyn/symbolic.hpp"

namespace hyperdyn {

struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct HorseshoeParams {
  Rational contraction{1, 3};  // mu in (0, 1/2)
  Rational expansion{3};       // lambda > 2
  bool fold = true;

  static HorseshoeParams defaults() { return {}; }
  /// key = value lines; keys: contraction, expansion, fold. Unknown keys
  /// are rejected.
  static HorseshoeParams parse_config(std::string_view text);
  void validate() const;

  Interval h_strip(Symbol s) const;
  Interval v_strip(Symbol s) const;
};

struct SquarePoint {
  Rational x;
  Rational y;

  SquarePoint() = default;
  /// DomainError unless both coordinates lie in [0, 1].
  SquarePoint(Rational x_, Rational y_);

  friend bool operator==(const SquarePoint&, const SquarePoint&) = default;
  std::string to_string() const;
  static SquarePoint parse(std::string_view text);
};

/// Raised when an orbit leaves H_0 u H_1 (forward) or V_0 u V_1 (backward).
/// time() is the exponent k of the iterate f^k(p) that lies outside the
/// strips; backward() tells which family (V strips when true, so k <= 0).
class EscapeError : public DomainError {
 public:
  EscapeError(const std::string& what, long long time, bool backward)
      : DomainError(what), time_(time), backward_(backward) {}
  long long time() const { return time_; }
  bool backward() const { return backward_; }

 private:
  long long time_;
  bool backward_;
};

SquarePoint hs_apply(const HorseshoeParams& params, const SquarePoint& p);
SquarePoint hs_inverse(const HorseshoeParams& params, const SquarePoint& p);

enum class RectKind { vertical, horizontal, cell };

struct Rect {
  Interval x;
  Interval y;
  std::string address;
  RectKind kind = RectKind::cell;

  bool contains(const SquarePoint& p) const { return x.contains(p.x) && y.contains(p.y); }
  SquarePoint center() const { return {x.midpoint(), y.midpoint()}; }
  /// Interiors are disjoint.
  bool disjoint_from(const Rect& o) const {
    return x.hi <= o.x.lo || o.x.hi <= x.lo || y.hi <= o.y.lo || o.y.hi <= y.lo;
  }
  bool inside(const Rect& o) const {
    return o.x.lo <= x.lo && x.hi <= o.x.hi && o.y.lo <= y.lo && y.hi <= o.y.hi;
  }
};

/// Vertical: word = s_-1 s_-2 ... s_-k, points with f^(-i+1)(p) in V_{s_-i}.
/// Horizontal: word = s_0 s_1 ... s_(k-1), points with f^i(p) in H_{s_i}.
Rect rect_for_address(const HorseshoeParams& params, const Word& word, RectKind orientation);

/// Itinerary window s_-k ... s_-1 . s_0 ... s_m.
struct SymbolWindow {
  Word past;    // s_-k .. s_-1, in index order
  Word future;  // s_0 .. s_m

  friend bool operator==(const SymbolWindow&, const SymbolWindow&) = default;
  std::string to_string() const;
  static SymbolWindow parse(std::string_view text);
};

/// k past symbols and k+1 future symbols. Throws EscapeError when the point
/// is not in the depth-k approximation of the invariant set.
SymbolWindow encode(const HorseshoeParams& params, const SquarePoint& p, int depth);

/// V_{past} n H_{future}: every point whose itinerary contains the window.
Rect decode(const HorseshoeParams& params, const SymbolWindow& window);

/// encode(f(p), k) equals encode(p, k+1) shifted by one, on the common window.
bool conjugacy_check(const HorseshoeParams& params, const SquarePoint& p, int depth);

/// The unique point of the invariant set with itinerary period^inf
/// (s_0 = period[0]), solved exactly from the affine fixed-point equations.
SquarePoint periodic_point(const HorseshoeParams& params, const Word& period);

/// s_-d .. s_-1 . s_0 .. s_d of a code.
SymbolWindow code_window(const BiSeq& code, int depth);

/// Center of decode(code_window(code, depth)).
SquarePoint code_point(const HorseshoeParams& params, const BiSeq& code, int depth);

struct HsProximity {
  bool symbolic = false;
  SeqProximality certificate;
  /// L-infinity distance between depth-d materializations of shift^n x and
  /// shift^n y, n = 0..horizon
  std::vector<double> distances;
  double min_distance = 0.0;
  /// max distance over the second half of the horizon
  double tail_max = 0.0;
  /// decode diameter bound at this depth
  double tolerance = 0.0;
  /// geometric behavior matches the symbolic verdict
  bool corroborated = false;
};

HsProximity hs_proximal(const HorseshoeParams& params, const BiSeq& x_code, const BiSeq& y_code,
                        int depth = 12, int horizon = 40);

inline std::ostream& operator<<(std::ostream& os, const SquarePoint& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SymbolWindow& v) { return os << v.to_string(); }

}  // namespace hyperdyn
