#include "dscmc/geometry.hpp"

#include <cmath>
#include <string>

#include "dscmc/errors.hpp"
#include "dscmc/transport.hpp"

namespace dscmc {

template <typename Real>
MinkowskiPoint<Real> hermitian_to_minkowski(const Mat2<Real>& X) {
  const Real x11 = X(0, 0).real(), x22 = X(1, 1).real();
  return {(x11 + x22) / Real(2), X(0, 1).real(), X(0, 1).imag(), (x11 - x22) / Real(2)};
}

template <typename Real>
MinkowskiPoint<Real> immerse(const Mat2<Real>& F) {
  Mat2<Real> e3 = identity2<Real>();
  e3(1, 1) = Complex<Real>(-1);
  return hermitian_to_minkowski<Real>(Mat2<Real>(F * e3 * F.adjoint()));
}

template <typename Real>
Complex<Real> secondary_gauss(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& c) {
  const Mat2<Real> dF = alpha_matrix(p, c) * F;
  if (dF(0, 0) == Complex<Real>(0)) return complex_infinity<Real>();
  return -dF(0, 1) / dF(0, 0);
}

template <typename Real>
Complex<Real> secondary_gauss_row2(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& c) {
  const Mat2<Real> dF = alpha_matrix(p, c) * F;
  if (dF(1, 0) == Complex<Real>(0)) return complex_infinity<Real>();
  return -dF(1, 1) / dF(1, 0);
}

template <typename Real>
MinkowskiPoint<Real> unit_normal(const Mat2<Real>& F, const Complex<Real>& g, double tol_sing) {
  using std::abs;
  if (is_infinite<Real>(g)) return hermitian_to_minkowski<Real>(Mat2<Real>(F * F.adjoint()));
  const Real mod = abs(g);
  if (abs(mod - Real(1)) < Real(tol_sing))
    throw SingularPoint("unit normal undefined where |g| = 1 (|g| = " + std::to_string(to_double(mod)) + ")");
  const Mat2<Real> nu = mat2<Real>(Complex<Real>(1), g, std::conj(g), Complex<Real>(1));
  const Mat2<Real> Fn = F * nu;
  return hermitian_to_minkowski<Real>(Mat2<Real>(Fn * Fn.adjoint() / (mod * mod - Real(1))));
}

template <typename Real>
HollowBallPoint<Real> hollow_ball(const MinkowskiPoint<Real>& X) {
  using std::atan;
  using std::exp;
  using std::sqrt;
  const Real k = exp(atan(X.x0)) / sqrt(Real(1) + X.x0 * X.x0);
  return {k * X.x1, k * X.x2, k * X.x3};
}

template <typename Real>
Mat2<Real> frame_at(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p, const IntegratorConfig& cfg) {
  using std::abs;
  PathSpec<Real> path;
  path.start = base_point<Real>();
  path.waypoints = {Complex<Real>(0), p.z};
  const auto st = integrate_frame(path, CurveParams<Real>{sol.a, sol.c}, sol.P, cfg);
  if (abs(st.point.w - p.w) > Real(1e-6) * (Real(1) + abs(p.w)))
    throw DomainError("point is not on the sheet reached by the straight segment from z = 0");
  return st.F;
}

template <typename Real>
Real small_formula_residual(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& a, const Real& c) {
  using std::abs;
  using std::sqrt;
  const Complex<Real> w = p.w;
  const Complex<Real> L = log_derivative(p.z, a);
  const Complex<Real> w1 = w * L;                                    // dG/dz
  const Complex<Real> w2 = w1 * L + w * log_derivative_prime(p.z, a);  // d2G/dz2
  if (abs(w1) < Real(kTolDegenerate)) throw DegeneratePoint("dG vanishes at this point");

  const Mat2<Real> al = alpha_matrix(p, c);
  const Mat2<Real> al1 = mat2<Real>(Complex<Real>(0), -c * w1, -c * w1 / (w * w), Complex<Real>(0));
  const Mat2<Real> F1 = al * F;
  const Mat2<Real> F2 = al1 * F + al * F1;

  // g = -N / D with N, D the (1,2), (1,1) entries of the first row of dF (up to the factor c).
  const Complex<Real> N = F(0, 1) - w * F(1, 1);
  const Complex<Real> D = F(0, 0) - w * F(1, 0);
  const Complex<Real> N1 = F1(0, 1) - w1 * F(1, 1) - w * F1(1, 1);
  const Complex<Real> D1 = F1(0, 0) - w1 * F(1, 0) - w * F1(1, 0);
  const Complex<Real> N2 = F2(0, 1) - w2 * F(1, 1) - Real(2) * w1 * F1(1, 1) - w * F2(1, 1);
  const Complex<Real> D2 = F2(0, 0) - w2 * F(1, 0) - Real(2) * w1 * F1(1, 0) - w * F2(1, 0);
  if (abs(D) < Real(kTolDegenerate)) throw DegeneratePoint("g has a pole at this point");

  const Complex<Real> g = -N / D;
  const Complex<Real> W = N1 * D - N * D1;
  const Complex<Real> g1 = -W / (D * D);
  const Complex<Real> W1 = N2 * D - N * D2;
  const Complex<Real> g2 = -W1 / (D * D) + Real(2) * W * D1 / (D * D * D);
  if (abs(g1) < Real(kTolDegenerate)) throw DegeneratePoint("dg vanishes at this point");

  const Complex<Real> r = w1 / g1;
  const Complex<Real> r1 = (w2 * g1 - w1 * g2) / (g1 * g1);
  const Complex<Real> sa = sqrt(r);
  const Complex<Real> sa1 = r1 / (Real(2) * sa);
  const Complex<Real> sb = -g * sa;
  const Complex<Real> sb1 = -g1 * sa - g * sa1;
  const Complex<Real> da = sa1 / w1, db = sb1 / w1;
  const Mat2<Real> small = mat2<Real>(w * da - sa, w * db - sb, da, db);
  return std::min(max_abs_diff<Real>(small, F), max_abs_diff<Real>(Mat2<Real>(-small), F));
}

template <typename Real>
Real small_formula_check(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p, const IntegratorConfig& cfg) {
  return small_formula_residual(frame_at(sol, p, cfg), p, sol.a, sol.c);
}

namespace {

template <typename Real>
Complex<Real> schwarzian_5pt(const std::array<Complex<Real>, 5>& v, const Real& h) {
  // v[k] = value at z + (k - 2) h
  const Complex<Real> d1 = (-v[4] + Real(8) * v[3] - Real(8) * v[1] + v[0]) / (Real(12) * h);
  const Complex<Real> d2 =
      (-v[4] + Real(16) * v[3] - Real(30) * v[2] + Real(16) * v[1] - v[0]) / (Real(12) * h * h);
  const Complex<Real> d3 = (v[4] - Real(2) * v[3] + Real(2) * v[1] - v[0]) / (Real(2) * h * h * h);
  const Complex<Real> q = d2 / d1;
  return d3 / d1 - Real(1.5) * q * q;
}

}  // namespace

template <typename Real>
Real schwarzian_check(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p, const Real& h,
                      const IntegratorConfig& cfg) {
  using std::abs;
  if (!(h > Real(0))) throw DomainError("stencil step must be positive");
  const CurveParams<Real> params{sol.a, sol.c};
  const Mat2<Real> F0 = frame_at(sol, p, cfg);
  if (branch_distance(p.z, sol.a) < Real(kBranchClearance) + Real(2) * h)
    throw DegeneratePoint("stencil reaches the branch clearance");

  std::array<Complex<Real>, 5> gv, Gv;
  for (int k = 0; k < 5; ++k) {
    const Complex<Real> z = p.z + Real(k - 2) * h;
    Mat2<Real> F = F0;
    CurvePoint<Real> q = p;
    if (k != 2) {
      PathSpec<Real> seg;
      seg.start = p;
      seg.waypoints = {p.z, z};
      const auto st = integrate_frame(seg, params, F0, cfg);
      F = st.F;
      q = st.point;
    }
    gv[k] = secondary_gauss(F, q, sol.c);
    Gv[k] = q.w;
  }
  // S is Moebius invariant: difference 1/(g - lambda) with lambda the octahedron
  // vertex chordally farthest from g(p), so the stencil avoids g = lambda.
  const Complex<Real> g0 = gv[2];
  auto chordal_to_inf = [](const Complex<Real>& x) {
    return is_infinite<Real>(x) ? Real(0) : Real(1) / sqrt(Real(1) + norm(x));
  };
  bool use_inf = true;
  Complex<Real> lambda(0);
  Real best = chordal_to_inf(g0);
  const Complex<Real> candidates[] = {Complex<Real>(0), Complex<Real>(1), Complex<Real>(-1), Complex<Real>(Real(0), Real(1)),
                                      Complex<Real>(Real(0), Real(-1))};
  for (const auto& l : candidates) {
    const Real d = is_infinite<Real>(g0) ? Real(1) / sqrt(Real(1) + norm(l))
                                         : abs(g0 - l) / sqrt((Real(1) + norm(g0)) * (Real(1) + norm(l)));
    if (d > best) {
      best = d;
      lambda = l;
      use_inf = false;
    }
  }
  if (!use_inf)
    for (auto& v : gv) v = is_infinite<Real>(v) ? Complex<Real>(0) : Complex<Real>(Real(1)) / (v - lambda);
  for (const auto& v : gv)
    if (is_infinite<Real>(v) || !isfinite(v.real()) || !isfinite(v.imag()))
      throw DegeneratePoint("g has a pole on the stencil");
  const Complex<Real> S = schwarzian_5pt(gv, h) - schwarzian_5pt(Gv, h);
  const Complex<Real> twoQ = Real(2) * sol.c * log_derivative(p.z, sol.a);
  return abs(twoQ - S);
}

#define DSCMC_INSTANTIATE_GEOMETRY(R)                                                            \
  template MinkowskiPoint<R> hermitian_to_minkowski<R>(const Mat2<R>&);                         \
  template MinkowskiPoint<R> immerse<R>(const Mat2<R>&);                                        \
  template Complex<R> secondary_gauss<R>(const Mat2<R>&, const CurvePoint<R>&, const R&);       \
  template Complex<R> secondary_gauss_row2<R>(const Mat2<R>&, const CurvePoint<R>&, const R&);  \
  template MinkowskiPoint<R> unit_normal<R>(const Mat2<R>&, const Complex<R>&, double);         \
  template HollowBallPoint<R> hollow_ball<R>(const MinkowskiPoint<R>&);                         \
  template Mat2<R> frame_at<R>(const PeriodSolution<R>&, const CurvePoint<R>&,                  \
                               const IntegratorConfig&);                                        \
  template R small_formula_residual<R>(const Mat2<R>&, const CurvePoint<R>&, const R&, const R&); \
  template R small_formula_check<R>(const PeriodSolution<R>&, const CurvePoint<R>&,             \
                                    const IntegratorConfig&);                                   \
  template R schwarzian_check<R>(const PeriodSolution<R>&, const CurvePoint<R>&, const R&,      \
                                 const IntegratorConfig&);

DSCMC_INSTANTIATE_GEOMETRY(double)
DSCMC_INSTANTIATE_GEOMETRY(Quad)

}  // namespace dscmc
