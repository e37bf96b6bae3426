#pragma once

// The twice-punctured torus M : w^2 = (z+1)(z-a)/((z-1)(z+a)), a > 1, with
// sheet-tracking transport of w and the default loops/paths on M.

#include <vector>

#include "dscmc/integrator.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

/// Minimum distance a path keeps from the branch points {1, -1, a, -a}.
inline constexpr double kBranchClearance = 0.1;

/// Relative tolerance on |w^2 - R(z)| / (1 + |R(z)|).
inline constexpr double kSheetTol = 1e-8;

template <typename Real>
struct CurveParams {
  Real a;
  Real c;

  /// Throws DomainError unless a > 1.
  void validate() const;
  /// Throws DomainError if c == 0 (the Hopf differential would vanish).
  void require_nonzero_c() const;
};

template <typename Real>
struct CurvePoint {
  Complex<Real> z;
  Complex<Real> w;
};

/// Polyline in the z-plane lifted to M by continuity of w from `start`.
template <typename Real>
struct PathSpec {
  CurvePoint<Real> start;
  std::vector<Complex<Real>> waypoints;  // waypoints.front() == start.z
  bool closed = false;

  Real length() const;
  /// Point on the polyline at normalized arc parameter t in [0, 1].
  Complex<Real> point_at(Real t) const;
  /// Same path traversed backwards, starting from `end` (which must be the lifted endpoint).
  PathSpec reversed(const CurvePoint<Real>& end) const;
};

/// Distance from z to the nearest branch point.
template <typename Real>
Real branch_distance(const Complex<Real>& z, const Real& a);

/// R(z) = (z+1)(z-a)/((z-1)(z+a)). DomainError within `clearance` of a branch point.
template <typename Real>
Complex<Real> rational_rhs(const Complex<Real>& z, const Real& a,
                           double clearance = kBranchClearance);

/// d(log w)/dz = 1/2 [1/(z+1) + 1/(z-a) - 1/(z-1) - 1/(z+a)].
template <typename Real>
Complex<Real> log_derivative(const Complex<Real>& z, const Real& a,
                             double clearance = kBranchClearance);

/// d/dz of log_derivative (used by the Small-formula and Schwarzian diagnostics).
template <typename Real>
Complex<Real> log_derivative_prime(const Complex<Real>& z, const Real& a);

template <typename Real>
Real sheet_residual(const CurvePoint<Real>& p, const Real& a);

/// Throws DomainError if the path is malformed or comes within `clearance` of a branch point.
template <typename Real>
void validate_path(const PathSpec<Real>& path, const Real& a,
                   double clearance = kBranchClearance);

/// Endpoint of the continuation of w along the path (integrates w' = w L(z)).
template <typename Real>
CurvePoint<Real> transport_w(const PathSpec<Real>& path, const CurveParams<Real>& params,
                             const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Default paths: half-paths c1, c2 and the generating loops based at (0, 1);
/// end_loop_minus starts at (0, -1).
template <typename Real>
struct CanonicalPaths {
  PathSpec<Real> c1;
  PathSpec<Real> c2;
  PathSpec<Real> gamma1;
  PathSpec<Real> gamma2;
  PathSpec<Real> gamma3;
  PathSpec<Real> end_loop_plus;
  PathSpec<Real> end_loop_minus;
};

/// Height of the first-quadrant arcs above the real axis.
inline constexpr double kArcLift = 0.8;
/// Number of chords approximating the end circles |z| = 3a.
inline constexpr int kEndCircleChords = 64;

template <typename Real>
CanonicalPaths<Real> canonical_paths(const Real& a);

template <typename Real>
CurvePoint<Real> base_point() {
  return {Complex<Real>(0), Complex<Real>(1)};
}

extern template struct CurveParams<double>;
extern template struct CurveParams<Quad>;
extern template struct PathSpec<double>;
extern template struct PathSpec<Quad>;

}  // namespace dscmc
