#include "dscmc/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dscmc/errors.hpp"

namespace dscmc {

template <typename Real>
void CurveParams<Real>::validate() const {
  if (!(a > Real(1))) throw DomainError("branch parameter a must satisfy a > 1");
}

template <typename Real>
void CurveParams<Real>::require_nonzero_c() const {
  if (c == Real(0)) throw DomainError("Hopf coefficient c must be nonzero");
}

template <typename Real>
Real PathSpec<Real>::length() const {
  using std::abs;
  Real total(0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += abs(waypoints[i] - waypoints[i - 1]);
  return total;
}

template <typename Real>
Complex<Real> PathSpec<Real>::point_at(Real t) const {
  using std::abs;
  if (waypoints.empty()) return start.z;
  const Real total = length();
  if (total == Real(0)) return waypoints.front();
  Real remaining = std::clamp(t, Real(0), Real(1)) * total;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Real seg = abs(waypoints[i] - waypoints[i - 1]);
    if (remaining <= seg && seg > Real(0))
      return waypoints[i - 1] + (waypoints[i] - waypoints[i - 1]) * (remaining / seg);
    remaining -= seg;
  }
  return waypoints.back();
}

template <typename Real>
PathSpec<Real> PathSpec<Real>::reversed(const CurvePoint<Real>& end) const {
  PathSpec<Real> out;
  out.start = end;
  out.waypoints.assign(waypoints.rbegin(), waypoints.rend());
  out.closed = closed;
  return out;
}

template <typename Real>
Real branch_distance(const Complex<Real>& z, const Real& a) {
  using std::abs;
  const Real one(1);
  return std::min({Real(abs(z - one)), Real(abs(z + one)), Real(abs(z - a)), Real(abs(z + a))});
}

namespace {

template <typename Real>
void require_clearance(const Complex<Real>& z, const Real& a, double clearance) {
  if (branch_distance(z, a) < Real(clearance))
    throw DomainError("point within " + std::to_string(clearance) +
                      " of a branch point of the curve");
}

template <typename Real>
Complex<Real> rational_rhs_unchecked(const Complex<Real>& z, const Real& a) {
  const Real one(1);
  return (z + one) * (z - a) / ((z - one) * (z + a));
}

template <typename Real>
Complex<Real> log_derivative_unchecked(const Complex<Real>& z, const Real& a) {
  const Complex<Real> z2 = z * z;
  return -Real(1) / (z2 - Real(1)) + a / (z2 - a * a);
}

template <typename Real>
Real segment_distance(const Complex<Real>& p, const Complex<Real>& q, const Complex<Real>& x) {
  using std::abs;
  const Complex<Real> d = q - p;
  const Real len2 = std::norm(d);
  if (len2 == Real(0)) return abs(x - p);
  Real t = ((x - p) * std::conj(d)).real() / len2;
  t = std::clamp(t, Real(0), Real(1));
  return abs(x - (p + d * t));
}

}  // namespace

template <typename Real>
Complex<Real> rational_rhs(const Complex<Real>& z, const Real& a, double clearance) {
  require_clearance(z, a, clearance);
  return rational_rhs_unchecked(z, a);
}

template <typename Real>
Complex<Real> log_derivative(const Complex<Real>& z, const Real& a, double clearance) {
  require_clearance(z, a, clearance);
  return log_derivative_unchecked(z, a);
}

template <typename Real>
Complex<Real> log_derivative_prime(const Complex<Real>& z, const Real& a) {
  const Complex<Real> z2 = z * z;
  const Complex<Real> d1 = z2 - Real(1);
  const Complex<Real> d2 = z2 - a * a;
  return Real(2) * z / (d1 * d1) - Real(2) * a * z / (d2 * d2);
}

template <typename Real>
Real sheet_residual(const CurvePoint<Real>& p, const Real& a) {
  using std::abs;
  const Complex<Real> r = rational_rhs_unchecked(p.z, a);
  return abs(p.w * p.w - r) / (Real(1) + abs(r));
}

template <typename Real>
void validate_path(const PathSpec<Real>& path, const Real& a, double clearance) {
  using std::abs;
  if (path.waypoints.empty()) throw DomainError("path has no waypoints");
  if (path.waypoints.front() != path.start.z)
    throw DomainError("first waypoint must equal the start point");
  if (path.closed && path.waypoints.back() != path.waypoints.front())
    throw DomainError("closed path must end at its first waypoint");
  const Real cl(clearance);
  const Real one(1);
  const std::array<Complex<Real>, 4> branch{Complex<Real>(one), Complex<Real>(-one),
                                             Complex<Real>(a), Complex<Real>(-a)};
  if (path.waypoints.size() == 1) {
    require_clearance(path.waypoints.front(), a, clearance);
  }
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    for (const auto& b : branch) {
      if (segment_distance(path.waypoints[i - 1], path.waypoints[i], b) < cl)
        throw DomainError("path segment " + std::to_string(i - 1) +
                          " passes within the branch clearance");
    }
  }
  if (sheet_residual(path.start, a) > Real(kSheetTol))
    throw DomainError("start point is not on the curve");
}

template <typename Real>
CurvePoint<Real> transport_w(const PathSpec<Real>& path, const CurveParams<Real>& params,
                             const IntegratorConfig& cfg) {
  using std::abs;
  params.validate();
  cfg.validate();
  validate_path(path, params.a);
  using State = StateVec<Real, 1>;
  State y;
  y(0) = path.start.w;
  StepControl<Real> ctl{Real(cfg.initial_step)};
  const Real a = params.a;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Complex<Real> z0 = path.waypoints[i - 1];
    const Complex<Real> dz = path.waypoints[i] - z0;
    const Real len = abs(dz);
    if (len == Real(0)) continue;
    const Complex<Real> u = dz / len;
    auto rhs = [&](const Real& s, const State& st) {
      State d;
      d(0) = st(0) * log_derivative_unchecked(Complex<Real>(z0 + u * s), a) * u;
      return d;
    };
    auto check = [&](const Real& s, const State& st) {
      const CurvePoint<Real> p{z0 + u * s, st(0)};
      if (sheet_residual(p, a) > Real(kSheetTol))
        throw ContinuationError("sheet residual exceeded tolerance during w transport");
    };
    integrate_interval<Real, 1>(rhs, y, Real(0), len, ctl, cfg, check);
  }
  return {path.waypoints.back(), y(0)};
}

template <typename Real>
CanonicalPaths<Real> canonical_paths(const Real& a) {
  CurveParams<Real>{a, Real(1)}.validate();
  using C = Complex<Real>;
  const Real lift(kArcLift);
  const C i = imag_unit<Real>();
  const Real z1 = (Real(1) + a) / Real(2);
  const Real z2 = Real(2) * a;
  const CurvePoint<Real> base = base_point<Real>();

  auto make = [&](std::vector<C> pts, bool closed) {
    PathSpec<Real> p;
    p.start = base;
    p.waypoints = std::move(pts);
    p.closed = closed;
    return p;
  };

  CanonicalPaths<Real> out;
  out.c1 = make({C(0), C(z1 / Real(2)) + lift * i, C(z1)}, false);
  out.c2 = make({C(0), C(z2 / Real(2)) + lift * i, C(z2)}, false);
  out.gamma1 = make({C(0), C(z1 / Real(2)) + lift * i, C(z1), C(z1 / Real(2)) - lift * i, C(0),
                     C(-z1 / Real(2)) - lift * i, C(-z1), C(-z1 / Real(2)) + lift * i, C(0)},
                    true);
  out.gamma2 = make({C(0), C(a) + lift * i, C(z2), C(a) - lift * i, C(0)}, true);
  out.gamma3 = make({C(0), C(-a) - lift * i, C(-z2), C(-a) + lift * i, C(0)}, true);

  // End loops: radial approach up the imaginary axis (where |w| = 1 and w -> +1),
  // one counterclockwise turn of |z| = 3a, and back.
  const Real radius = Real(3) * a;
  std::vector<C> circle;
  circle.push_back(C(0));
  circle.push_back(radius * i);
  for (int k = 1; k <= kEndCircleChords; ++k) {
    const Real theta = pi<Real>() / Real(2) + Real(2) * pi<Real>() * Real(k) / Real(kEndCircleChords);
    using std::cos;
    using std::sin;
    circle.push_back(C(radius * cos(theta), radius * sin(theta)));
  }
  circle.back() = radius * i;
  circle.push_back(C(0));
  out.end_loop_plus = make(circle, true);

  // The end (inf, -1): same loop on the sheet through (0, -1), where w -> -1 along the radius.
  out.end_loop_minus = make(circle, true);
  out.end_loop_minus.start.w = Complex<Real>(-1);

  for (const auto* p : {&out.c1, &out.c2, &out.gamma1, &out.gamma2, &out.gamma3,
                        &out.end_loop_plus, &out.end_loop_minus})
    validate_path(*p, a);
  return out;
}

#define DSCMC_INSTANTIATE_CURVE(R)                                                              \
  template struct CurveParams<R>;                                                               \
  template struct PathSpec<R>;                                                                  \
  template R branch_distance<R>(const Complex<R>&, const R&);                                   \
  template Complex<R> rational_rhs<R>(const Complex<R>&, const R&, double);                     \
  template Complex<R> log_derivative<R>(const Complex<R>&, const R&, double);                   \
  template Complex<R> log_derivative_prime<R>(const Complex<R>&, const R&);                     \
  template R sheet_residual<R>(const CurvePoint<R>&, const R&);                                 \
  template void validate_path<R>(const PathSpec<R>&, const R&, double);                         \
  template CurvePoint<R> transport_w<R>(const PathSpec<R>&, const CurveParams<R>&,              \
                                        const IntegratorConfig&);                               \
  template CanonicalPaths<R> canonical_paths<R>(const R&);

DSCMC_INSTANTIATE_CURVE(double)
DSCMC_INSTANTIATE_CURVE(Quad)

}  // namespace dscmc
