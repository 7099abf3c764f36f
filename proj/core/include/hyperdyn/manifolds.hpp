#pragma once

// Eigen-structure of the cat matrix, stable/unstable leaves through the
// origin, and the exact proximality oracle on T^2.
//
// Coordinates live in Q(sqrt5), so "does some integer lift of d lie on the
// eigenline" reduces to two rational linear equations in the lift (m, n):
// one from the rational parts and one from the sqrt5 parts.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdyn/toral.hpp"

namespace hyperdyn {

enum class LeafDirection { stable, unstable };
enum class TimeDirection { forward, backward };

struct EigenData {
  QuadNum lambda;        // (3+sqrt5)/2
  QuadNum lambda_prime;  // (3-sqrt5)/2
  std::pair<QuadNum, QuadNum> v_lambda;        // ((1+sqrt5)/2, 1)
  std::pair<QuadNum, QuadNum> v_lambda_prime;  // ((1-sqrt5)/2, 1)
};

/// Eigen-data of the cat matrix, checked exactly on first use.
const EigenData& eigen_data();

/// Ratio x/y along the eigenline through the origin: golden ratio for the
/// unstable leaf, its conjugate for the stable one.
QuadNum leaf_ratio(LeafDirection direction);
/// Slope dy/dx of the leaf.
QuadNum leaf_slope(LeafDirection direction);

/// Integer lift (m, n) with (d.x + m) = g * (d.y + n), g = leaf_ratio().
struct LiftCertificate {
  BigInt m;
  BigInt n;
  friend bool operator==(const LiftCertificate&, const LiftCertificate&) = default;
};

std::optional<LiftCertificate> leaf_membership(const TorusPoint& d, LeafDirection direction);

/// True iff the certificate satisfies its defining identity for d.
bool certificate_holds(const TorusPoint& d, LeafDirection direction, const LiftCertificate& c);

enum class ProximalityKind { equal, proximal_stable, proximal_unstable, not_proximal };

/// Z-action (cascade) or N-action (semicascade) proximality.
enum class TimeMode { cascade, semicascade };

struct ProximalityVerdict {
  ProximalityKind kind = ProximalityKind::not_proximal;
  /// Lift of x - y for the leaf named by `kind`.
  std::optional<LiftCertificate> certificate;
  /// Set when x - y also lies on the unstable leaf while `kind` reports the
  /// stable one (homoclinic differences lie on both).
  std::optional<LiftCertificate> unstable_certificate;
};

ProximalityVerdict proximal(const TorusPoint& x, const TorusPoint& y,
                            TimeMode mode = TimeMode::cascade);

std::string to_string(ProximalityKind kind);
std::string to_string(LeafDirection direction);

struct LeafDescriptor {
  TorusPoint base;
  LeafDirection direction;
};

enum class CellKind { both_leaves, unstable_leaf, stable_leaf, point_only_description };

std::string to_string(CellKind kind);

struct ProximalCell {
  CellKind kind;
  std::vector<LeafDescriptor> leaves;
  std::string note;
};

ProximalCell proximal_cell(const TorusPoint& x);

struct ProfileSample {
  long long n;
  double distance;
};

/// Torus distance between f^n x and f^n y (or f^-n) for n = 0..n_max.
std::vector<ProfileSample> contraction_profile(const TorusPoint& x, const TorusPoint& y,
                                               TimeDirection direction, int n_max);

struct IProximalReport {
  LeafDirection leaf = LeafDirection::stable;
  TimeDirection time = TimeDirection::forward;
  /// max lift spread of the input set, exact
  QuadNum lift_spread;
  std::vector<double> max_distance;  // per step 0..steps
  std::vector<double> bound;         // lift_spread * lambda'^n
  double final_spread = 0.0;
  bool passed = false;
};

/// All points must lie on the `leaf` through points.front(). Stable leaves are
/// iterated forward, unstable ones backward; the report checks that the
/// pairwise spread obeys the exact contraction schedule at every step.
IProximalReport i_proximal_witness(std::span<const TorusPoint> points, LeafDirection leaf,
                                   int steps);

}  // namespace hyperdyn
