#include "hyperdyn/ultralimit.hpp"

#include <algorithm>
#include <cmath>

namespace hyperdyn {

namespace {

double wrap(double d) {
  d = std::fabs(d);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

std::vector<SlopeRow> slope_table(int n_max, bool backward) {
  if (n_max < 1) throw DomainError("slope tables need n_max >= 1");
  const FibTable fib(2 * static_cast<std::size_t>(n_max) + 1);
  const QuadNum one(1);
  const QuadNum target = backward ? one - QuadNum::golden() : QuadNum::golden() - one;
  std::vector<SlopeRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const BigInt& f_even = fib[2 * static_cast<std::size_t>(n)];
    const BigInt& f_odd = fib[2 * static_cast<std::size_t>(n) + 1];
    SlopeRow row;
    row.n = n;
    row.ratio = Rational(backward ? BigInt(-f_even) : f_even, f_odd);
    row.ratio_float = row.ratio.to_double();
    const QuadNum diff = QuadNum(row.ratio) - target;
    const QuadNum err = quad_abs(diff);
    const Rational bound(1, f_odd * f_odd);
    row.error = quad_to_float(err).value;
    row.bound = bound.to_double();
    row.side = quad_sign(diff);
    row.bound_holds = quad_sign(QuadNum(bound) - err) > 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double torus_distance(const FloatPoint& a, const FloatPoint& b) {
  return std::max(wrap(a.x - b.x), wrap(a.y - b.y));
}

FloatPoint to_float(const TorusPoint& p) {
  return {quad_to_float(p.x()).value, quad_to_float(p.y()).value};
}

LimitProbe::LimitProbe(std::vector<long long> times, double tolerance)
    : times_(std::move(times)), tolerance_(tolerance) {
  if (times_.size() < 3) throw DomainError("a limit probe needs at least 3 times");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (times_[i] <= times_[i - 1]) throw DomainError("probe times must be strictly increasing");
  }
  if (!(tolerance_ > 0.0)) throw DomainError("probe tolerance must be positive");
}

LimitProbe LimitProbe::arithmetic(long long start, long long step, int count, double tolerance) {
  if (step < 1) throw DomainError("arithmetic probe step must be >= 1");
  if (count < 3) throw DomainError("a limit probe needs at least 3 times");
  std::vector<long long> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = start + k * step;
  return {std::move(t), tolerance};
}

LimitProbe LimitProbe::explicit_times(std::vector<long long> times, double tolerance) {
  return {std::move(times), tolerance};
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::converged: return "converged";
    case ProbeVerdict::diverged: return "diverged";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ConvergenceReport plim_probe(const TorusPoint& x, const LimitProbe& probe, const IntMat2& m) {
  ConvergenceReport r;
  r.times = probe.times();
  const std::size_t h = r.times.size();
  TorusPoint cur = cat_apply(mat_pow(m, r.times.front()), x);
  r.values.push_back(to_float(cur));
  for (std::size_t i = 1; i < h; ++i) {
    cur = cat_apply(mat_pow(m, r.times[i] - r.times[i - 1]), cur);
    r.values.push_back(to_float(cur));
  }

  r.cauchy_radius.assign(h, 0.0);
  for (std::size_t t = h - 1; t-- > 0;) {
    double worst = r.cauchy_radius[t + 1];
    for (std::size_t j = t + 1; j < h; ++j) {
      worst = std::max(worst, torus_distance(r.values[t], r.values[j]));
    }
    r.cauchy_radius[t] = worst;
  }

  const double tol = probe.tolerance();
  const std::size_t tail = (h + 2) / 3;
  if (r.cauchy_radius[h - tail] < tol) {
    r.verdict = ProbeVerdict::converged;
    r.limit = r.values.back();
    return r;
  }
  // greedy clusters over the second half
  struct Cluster {
    FloatPoint rep;
    int size;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = h / 2; i < h; ++i) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return torus_distance(c.rep, r.values[i]) < tol;
    });
    if (it == clusters.end()) {
      clusters.push_back({r.values[i], 1});
    } else {
      ++it->size;
    }
  }
  for (std::size_t a = 0; a < clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters.size(); ++b) {
      if (clusters[a].size >= 2 && clusters[b].size >= 2 &&
          torus_distance(clusters[a].rep, clusters[b].rep) > 10.0 * tol) {
        r.verdict = ProbeVerdict::diverged;
        return r;
      }
    }
  }
  r.verdict = ProbeVerdict::inconclusive;
  return r;
}

std::vector<SlopeRow> slope_limit_table(int n_max) { return slope_table(n_max, false); }

std::vector<SlopeRow> inverse_slope_limit_table(int n_max) { return slope_table(n_max, true); }

bool idempotent_stage_check(const TorusPoint& x, int stages) {
  if (stages < 1) throw DomainError("idempotent_stage_check needs stages >= 1");
  const auto k = static_cast<long long>(period(x));
  const IntMat2 a = cat_matrix();
  for (long long i = 1; i <= stages; ++i) {
    const TorusPoint inner = cat_apply(mat_pow(a, i * k), x);
    for (long long j = 1; j <= stages; ++j) {
      if (cat_apply(mat_pow(a, j * k), inner) != x) return false;
    }
  }
  return true;
}

RecurrenceReport recurrence_times(const TorusPoint& x, long long horizon, double eps) {
  if (horizon < 1) throw DomainError("recurrence_times needs horizon >= 1");
  if (!(eps > 0.0)) throw DomainError("recurrence_times needs eps > 0");
  RecurrenceReport r;
  const IntMat2 a = cat_matrix();
  TorusPoint cur = x;
  for (long long n = 1; n <= horizon; ++n) {
    cur = cat_apply(a, cur);
    if (quad_to_float(torus_distance(cur, x)).value < eps) r.times.push_back(n);
  }
  for (std::size_t i = 1; i < r.times.size(); ++i) {
    r.max_gap = std::max(r.max_gap, r.times[i] - r.times[i - 1]);
  }
  return r;
}

}  // namespace hyperdyn
