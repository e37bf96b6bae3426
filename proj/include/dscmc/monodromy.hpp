#pragma once

// Monodromies of the three generating loops, assembled from the two half-path
// frames by the reflection symmetries of M, and the period functions f1, f2.

#include "dscmc/curve.hpp"
#include "dscmc/integrator.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

/// Tolerance for the structural forms of Phi1, Phi2, Phi3 (relative to max(1, |Phi|)).
inline constexpr double kTolForm = 1e-7;
/// Relative imaginary part allowed in f1, f2.
inline constexpr double kTolPeriodImag = 1e-8;
/// |denominator| below this fraction of the sum of its term moduli counts as zero.
inline constexpr double kTolDenominator = 1e-13;

template <typename Real>
struct HalfPathFrames {
  Mat2<Real> F_c1;  // A1 B1 / C1 D1
  Mat2<Real> F_c2;  // A2 B2 / C2 D2
  CurveParams<Real> params;
};

template <typename Real>
struct MonodromyTriple {
  Mat2<Real> Phi1;
  Mat2<Real> Phi2;
  Mat2<Real> Phi3;

  /// j in {1, 2, 3}.
  const Mat2<Real>& operator[](int j) const { return j == 1 ? Phi1 : (j == 2 ? Phi2 : Phi3); }
};

template <typename Real>
struct PeriodValues {
  Real f1;
  Real f2;
};

/// Endpoint frames of c1 and c2 with F(0, 1) = identity.
template <typename Real>
HalfPathFrames<Real> half_path_frames(const CurveParams<Real>& params,
                                      const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Same with caller-supplied half-paths (must end on the real axis in 1 < z < a and z > a).
template <typename Real>
HalfPathFrames<Real> half_path_frames(const CurveParams<Real>& params, const PathSpec<Real>& c1,
                                      const PathSpec<Real>& c2,
                                      const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

template <typename Real>
MonodromyTriple<Real> assemble_monodromies(const HalfPathFrames<Real>& h);

/// B^{-1} F(end) for F(start) = B; the monodromy of `loop` in the frame B.
template <typename Real>
Mat2<Real> direct_loop_holonomy(const PathSpec<Real>& loop, const CurveParams<Real>& params,
                                const Mat2<Real>& B = identity2<Real>(),
                                const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Holonomies of the default gamma1, gamma2, gamma3.
template <typename Real>
MonodromyTriple<Real> direct_monodromies(const CurveParams<Real>& params,
                                         const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// f1, f2 from the half-path frames. Throws DegenerateDenominator, FormViolation.
template <typename Real>
PeriodValues<Real> period_functions(const HalfPathFrames<Real>& h);

/// Phi2, Phi3 shape [[p, i q], [i r, conj p]] with q, r real.
template <typename Real>
Real lemma_psi_form_residual(const Mat2<Real>& phi);

/// Phi1 shape [[p, q], [-conj q, s]] with p, s real.
template <typename Real>
Real lemma_phi_form_residual(const Mat2<Real>& phi);

/// Distance of Phi3 from the swap/conjugate image [[conj p, i r], [i q, p]] of Phi2.
template <typename Real>
Real phi3_pattern_residual(const Mat2<Real>& phi2, const Mat2<Real>& phi3);

}  // namespace dscmc
