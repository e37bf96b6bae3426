#pragma once

// The two punctures (inf, +-1): indicial exponent m = sqrt(1 - 4c(a-1)),
// predicted end monodromy eigenvalues -exp(+-m pi i), and the direct check
// against holonomy around |z| = 3a.

#include <utility>

#include "dscmc/curve.hpp"
#include "dscmc/integrator.hpp"
#include "dscmc/linalg2c.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

inline constexpr double kTolResonance = 1e-6;
inline constexpr double kTolEigen = 1e-6;

template <typename Real>
struct EndAnalysis {
  Complex<Real> m;
  ConjugacyKind end_type;
  std::pair<Complex<Real>, Complex<Real>> predicted_eigenvalues;
  std::pair<Complex<Real>, Complex<Real>> measured_eigenvalues;
  Real eigenvalue_mismatch = Real(0);
  bool measured = false;
};

/// Principal root: real positive or positive imaginary. Throws ResonantExponent
/// when m lies within tol_res of an integer (including 0).
template <typename Real>
Complex<Real> indicial_exponent(const Real& a, const Real& c, double tol_res = kTolResonance);

/// Elliptic for real m, hyperbolic for imaginary m; predicted eigenvalues only.
template <typename Real>
EndAnalysis<Real> classify_end(const Real& a, const Real& c, double tol_res = kTolResonance);

/// max_k |x_k - y_k| / max(1, |y_k|), minimized over the two pairings.
template <typename Real>
Real eigenvalue_mismatch(const std::pair<Complex<Real>, Complex<Real>>& measured,
                         const std::pair<Complex<Real>, Complex<Real>>& predicted);

/// Holonomy around end_loop_plus (which_end = +1) or end_loop_minus (-1),
/// compared with the prediction. Throws EigenvalueMismatch above tol_eig.
template <typename Real>
EndAnalysis<Real> end_loop_check(const Real& a, const Real& c, int which_end,
                                 const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>(),
                                 double tol_eig = kTolEigen);

/// Eigenvalue discrepancy between holonomies of `loop` started at identity and at B.
template <typename Real>
Real lift_independence_check(const CurveParams<Real>& params, const PathSpec<Real>& loop,
                             const Mat2<Real>& B,
                             const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// 2 deg G == -chi(M) + n, chi(M) = 2 - 2 genus - n.
bool osserman_equality_check(int genus, int n_ends, int deg_G);

}  // namespace dscmc
