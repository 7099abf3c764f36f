#pragma once

// Finite-stage shadows of ultrafilter limits f^p(x) = p-lim f^n(x).
//
// Free ultrafilters have no finite representation. What can be computed is
// the behavior of f^n(x) along explicit subsequences of times; nothing here
// claims a p-limit, and pointwise convergence of f^n on the torus is never
// assumed.

#include <optional>
#include <vector>

#include "hyperdyn/toral.hpp"

namespace hyperdyn {

struct FloatPoint {
  double x = 0.0;
  double y = 0.0;
};

/// L-infinity distance with per-coordinate wraparound.
double torus_distance(const FloatPoint& a, const FloatPoint& b);

FloatPoint to_float(const TorusPoint& p);

/// A strictly increasing, finite set of times (at least 3).
class LimitProbe {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  /// start, start + step, ..., count terms.
  static LimitProbe arithmetic(long long start, long long step, int count,
                               double tolerance = kDefaultTolerance);
  static LimitProbe explicit_times(std::vector<long long> times,
                                   double tolerance = kDefaultTolerance);

  const std::vector<long long>& times() const { return times_; }
  double tolerance() const { return tolerance_; }

 private:
  LimitProbe(std::vector<long long> times, double tolerance);

  std::vector<long long> times_;
  double tolerance_;
};

enum class ProbeVerdict { converged, diverged, inconclusive };

std::string to_string(ProbeVerdict v);

struct ConvergenceReport {
  std::vector<long long> times;
  std::vector<FloatPoint> values;
  /// cauchy_radius[t] = max pairwise distance among values[t..]
  std::vector<double> cauchy_radius;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
  std::optional<FloatPoint> limit;
};

/// Converged: the last ceil(h/3) values are pairwise within tolerance.
/// Diverged: the second half of the values holds two clusters (of at least
/// two values each) more than 10x tolerance apart. Otherwise inconclusive.
ConvergenceReport plim_probe(const TorusPoint& x, const LimitProbe& probe,
                             const IntMat2& m = cat_matrix());

struct SlopeRow {
  int n = 0;
  /// F_2n / F_2n+1, negated for the backward table
  Rational ratio;
  double ratio_float = 0.0;
  /// |ratio - target|, target = gamma - 1 (forward) or 1 - gamma (backward)
  double error = 0.0;
  /// 1 / F_2n+1^2
  double bound = 0.0;
  /// sign of ratio - target
  int side = 0;
  /// |ratio - target| < 1 / F_2n+1^2, decided exactly
  bool bound_holds = false;
};

/// Slopes of A^n applied to the x-axis direction: F_2n / F_2n+1 -> gamma - 1.
std::vector<SlopeRow> slope_limit_table(int n_max);
/// Mirror for A^-n: -F_2n / F_2n+1 -> 1 - gamma.
std::vector<SlopeRow> inverse_slope_limit_table(int n_max);

/// For k = period(x): f^(jk)(f^(ik)(x)) = x exactly for all 1 <= i, j <= stages.
bool idempotent_stage_check(const TorusPoint& x, int stages);

struct RecurrenceReport {
  std::vector<long long> times;
  /// largest gap between consecutive return times (0 when fewer than two)
  long long max_gap = 0;
};

/// Times n in 1..horizon with d(f^n x, x) < eps.
RecurrenceReport recurrence_times(const TorusPoint& x, long long horizon, double eps);

}  // namespace hyperdyn
