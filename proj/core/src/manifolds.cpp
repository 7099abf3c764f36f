#include "hyperdyn/manifolds.hpp"

namespace hyperdyn {

namespace {

QuadNum as_quad(const BigInt& v) { return QuadNum(Rational(v)); }

std::pair<QuadNum, QuadNum> apply_linear(const IntMat2& m, const std::pair<QuadNum, QuadNum>& v) {
  return {as_quad(m.m11) * v.first + as_quad(m.m12) * v.second,
          as_quad(m.m21) * v.first + as_quad(m.m22) * v.second};
}

EigenData build_eigen_data() {
  EigenData e{
      .lambda = QuadNum(Rational(3, 2), Rational(1, 2)),
      .lambda_prime = QuadNum(Rational(3, 2), Rational(-1, 2)),
      .v_lambda = {QuadNum::golden(), QuadNum(1)},
      .v_lambda_prime = {QuadNum::golden_conjugate(), QuadNum(1)},
  };
  const IntMat2 a = cat_matrix();
  auto scaled = [](const QuadNum& s, const std::pair<QuadNum, QuadNum>& v) {
    return std::pair{s * v.first, s * v.second};
  };
  if (apply_linear(a, e.v_lambda) != scaled(e.lambda, e.v_lambda) ||
      apply_linear(a, e.v_lambda_prime) != scaled(e.lambda_prime, e.v_lambda_prime) ||
      e.lambda * e.lambda_prime != QuadNum(1) || !(e.lambda > QuadNum(1)) ||
      !(e.lambda_prime < QuadNum(1)) || !(e.lambda_prime > QuadNum(0))) {
    throw std::logic_error("cat matrix eigen-data failed exact verification");
  }
  return e;
}

QuadNum lift_norm(const QuadNum& dx, const QuadNum& dy) {
  const QuadNum ax = quad_abs(dx);
  const QuadNum ay = quad_abs(dy);
  return ax < ay ? ay : ax;
}

}  // namespace

const EigenData& eigen_data() {
  static const EigenData data = build_eigen_data();
  return data;
}

QuadNum leaf_ratio(LeafDirection direction) {
  return direction == LeafDirection::unstable ? QuadNum::golden() : QuadNum::golden_conjugate();
}

QuadNum leaf_slope(LeafDirection direction) { return leaf_ratio(direction).reciprocal(); }

std::optional<LiftCertificate> leaf_membership(const TorusPoint& d, LeafDirection direction) {
  const QuadNum g = leaf_ratio(direction);
  const Rational& g0 = g.rational_part();
  const Rational& g1 = g.sqrt5_part();
  const Rational& a1 = d.x().rational_part();
  const Rational& b1 = d.x().sqrt5_part();
  const Rational& a2 = d.y().rational_part();
  const Rational& b2 = d.y().sqrt5_part();
  // sqrt5 parts:    b1 = g1 (a2 + n) + g0 b2
  // rational parts: a1 + m = g0 (a2 + n) + 5 g1 b2
  const Rational n = (b1 - g0 * b2) / g1 - a2;
  if (!n.is_integer()) return std::nullopt;
  const Rational m = g0 * (a2 + n) + Rational(5) * g1 * b2 - a1;
  if (!m.is_integer()) return std::nullopt;
  return LiftCertificate{m.numerator(), n.numerator()};
}

bool certificate_holds(const TorusPoint& d, LeafDirection direction, const LiftCertificate& c) {
  return d.x() + as_quad(c.m) == leaf_ratio(direction) * (d.y() + as_quad(c.n));
}

ProximalityVerdict proximal(const TorusPoint& x, const TorusPoint& y, TimeMode mode) {
  if (x == y) return {ProximalityKind::equal, LiftCertificate{0, 0}, std::nullopt};
  const TorusPoint d = x - y;
  auto stable = leaf_membership(d, LeafDirection::stable);
  if (mode == TimeMode::semicascade) {
    // forward time only sees the contracting leaf
    if (stable) return {ProximalityKind::proximal_stable, stable, std::nullopt};
    return {};
  }
  auto unstable = leaf_membership(d, LeafDirection::unstable);
  if (stable) return {ProximalityKind::proximal_stable, stable, unstable};
  if (unstable) return {ProximalityKind::proximal_unstable, unstable, std::nullopt};
  return {};
}

std::string to_string(ProximalityKind kind) {
  switch (kind) {
    case ProximalityKind::equal: return "Equal";
    case ProximalityKind::proximal_stable: return "ProximalStable";
    case ProximalityKind::proximal_unstable: return "ProximalUnstable";
    case ProximalityKind::not_proximal: return "NotProximal";
  }
  return "?";
}

std::string to_string(LeafDirection direction) {
  return direction == LeafDirection::stable ? "stable" : "unstable";
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::both_leaves: return "BothLeaves";
    case CellKind::unstable_leaf: return "UnstableLeaf";
    case CellKind::stable_leaf: return "StableLeaf";
    case CellKind::point_only_description: return "PointOnlyDescription";
  }
  return "?";
}

ProximalCell proximal_cell(const TorusPoint& x) {
  const TorusPoint origin;
  const std::vector<LeafDescriptor> both = {{origin, LeafDirection::unstable},
                                            {origin, LeafDirection::stable}};
  if (x == origin) return {CellKind::both_leaves, both, "W_u U W_s"};
  const bool on_unstable = leaf_membership(x, LeafDirection::unstable).has_value();
  const bool on_stable = leaf_membership(x, LeafDirection::stable).has_value();
  if (on_stable && on_unstable) {
    // homoclinic: the stable case is reported, both leaves are listed
    return {CellKind::stable_leaf, both,
            "W_s; x is homoclinic to the origin and also lies on W_u"};
  }
  if (on_stable) return {CellKind::stable_leaf, {{origin, LeafDirection::stable}}, "W_s"};
  if (on_unstable) return {CellKind::unstable_leaf, {{origin, LeafDirection::unstable}}, "W_u"};
  return {CellKind::point_only_description,
          {{x, LeafDirection::unstable}, {x, LeafDirection::stable}},
          "inferred from P(T^2) = W_u x W_u U W_s x W_s: leaves through x, "
          "no explicit case for points off the origin leaves"};
}

std::vector<ProfileSample> contraction_profile(const TorusPoint& x, const TorusPoint& y,
                                               TimeDirection direction, int n_max) {
  if (n_max < 1) throw DomainError("contraction_profile needs n_max >= 1");
  const IntMat2 step = direction == TimeDirection::forward ? cat_matrix() : cat_matrix().inverse();
  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  TorusPoint a = x;
  TorusPoint b = y;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back({n, quad_to_float(torus_distance(a, b)).value});
    a = cat_apply(step, a);
    b = cat_apply(step, b);
  }
  return out;
}

IProximalReport i_proximal_witness(std::span<const TorusPoint> points, LeafDirection leaf,
                                   int steps) {
  if (steps < 0) throw DomainError("i_proximal_witness needs steps >= 0");
  IProximalReport report;
  report.leaf = leaf;
  report.time =
      leaf == LeafDirection::stable ? TimeDirection::forward : TimeDirection::backward;
  if (points.empty()) {
    report.passed = true;
    return report;
  }
  // exact lifts of p_i - p_0 along the leaf
  std::vector<std::pair<QuadNum, QuadNum>> lifts;
  lifts.reserve(points.size());
  for (const TorusPoint& p : points) {
    const TorusPoint d = p - points.front();
    auto cert = leaf_membership(d, leaf);
    if (!cert) {
      throw DomainError("point " + p.to_string() + " is not on the " + to_string(leaf) +
                        " leaf through " + points.front().to_string());
    }
    lifts.emplace_back(d.x() + as_quad(cert->m), d.y() + as_quad(cert->n));
  }
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    for (std::size_t j = i + 1; j < lifts.size(); ++j) {
      const QuadNum s =
          lift_norm(lifts[i].first - lifts[j].first, lifts[i].second - lifts[j].second);
      if (report.lift_spread < s) report.lift_spread = s;
    }
  }

  const IntMat2 step =
      report.time == TimeDirection::forward ? cat_matrix() : cat_matrix().inverse();
  std::vector<TorusPoint> cur(points.begin(), points.end());
  QuadNum bound = report.lift_spread;
  bool ok = true;
  for (int n = 0; n <= steps; ++n) {
    QuadNum spread(0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        const QuadNum dist = torus_distance(cur[i], cur[j]);
        if (spread < dist) spread = dist;
      }
    }
    ok = ok && spread <= bound;
    report.max_distance.push_back(quad_to_float(spread).value);
    report.bound.push_back(quad_to_float(bound).value);
    if (n < steps) {
      for (auto& p : cur) p = cat_apply(step, p);
      bound *= eigen_data().lambda_prime;
    }
  }
  report.final_spread = report.max_distance.back();
  report.passed = ok;
  return report;
}

}  // namespace hyperdyn
