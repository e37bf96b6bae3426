#pragma once

// The face f = F e3 F* in de Sitter space, its secondary Gauss map and unit
// normal, the hollow-ball picture, and two local identity checks (Small
// formula, Schwarzian).

#include "dscmc/curve.hpp"
#include "dscmc/integrator.hpp"
#include "dscmc/period.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

inline constexpr double kTolSingular = 1e-3;
/// dG or dg smaller than this makes the Small formula degenerate.
inline constexpr double kTolDegenerate = 1e-8;

template <typename Real>
struct MinkowskiPoint {
  Real x0, x1, x2, x3;

  /// -x0^2 + x1^2 + x2^2 + x3^2.
  Real lorentz_norm2() const { return -x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
};

template <typename Real>
struct HollowBallPoint {
  Real y1, y2, y3;

  Real radius2() const { return y1 * y1 + y2 * y2 + y3 * y3; }
};

/// Hermitian X = x0 e0 + x1 e1 + x2 e2 + x3 e3 read back as coordinates.
template <typename Real>
MinkowskiPoint<Real> hermitian_to_minkowski(const Mat2<Real>& X);

/// F e3 F*.
template <typename Real>
MinkowskiPoint<Real> immerse(const Mat2<Real>& F);

/// g = -dF12/dF11 with dF = alpha(p, c) F; complex infinity when dF11 = 0.
template <typename Real>
Complex<Real> secondary_gauss(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& c);

/// Same map from the second row, -dF22/dF21.
template <typename Real>
Complex<Real> secondary_gauss_row2(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& c);

/// (F nu)(F nu)* / (|g|^2 - 1), nu = [[1, g], [conj g, 1]]; F F* at g = infinity.
/// Throws SingularPoint when ||g| - 1| < tol_sing.
template <typename Real>
MinkowskiPoint<Real> unit_normal(const Mat2<Real>& F, const Complex<Real>& g,
                                 double tol_sing = kTolSingular);

template <typename Real>
HollowBallPoint<Real> hollow_ball(const MinkowskiPoint<Real>& X);

/// Frame at p with F(0, 1) = sol.P, continued along the straight segment from
/// z = 0 (DomainError if that segment lands on the other sheet).
template <typename Real>
Mat2<Real> frame_at(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p,
                    const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Rebuilds F at p from g and G = w by the Small formula, with all
/// derivatives taken from dF = alpha F; min over the overall sign of
/// max |entry difference|. Throws DegeneratePoint.
template <typename Real>
Real small_formula_residual(const Mat2<Real>& F, const CurvePoint<Real>& p, const Real& a,
                            const Real& c);

template <typename Real>
Real small_formula_check(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p,
                         const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// |2 c L(z) - (S(g) - S(G))| at p with five-point differences of step h. The
/// stencil differences 1/(g - lambda), lambda in {inf, 0, +-1, +-i} chordally
/// farthest from g(p), which has the same Schwarzian.
template <typename Real>
Real schwarzian_check(const PeriodSolution<Real>& sol, const CurvePoint<Real>& p, const Real& h,
                      const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

}  // namespace dscmc
