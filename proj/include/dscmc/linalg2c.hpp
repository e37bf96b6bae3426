#pragma once

// SU(1,1) membership, conjugacy classes and Mobius action for 2x2 complex matrices.

#include <utility>

#include "dscmc/types.hpp"

namespace dscmc {

inline constexpr double kTolSU11 = 1e-6;
inline constexpr double kTolClass = 1e-6;
inline constexpr double kTolDet = 1e-9;

enum class ConjugacyKind { Elliptic, Hyperbolic, Parabolic };

const char* to_string(ConjugacyKind kind);

/// Conjugacy class in SU(1,1): rotation angle theta (elliptic), boost
/// parameter s (hyperbolic), 0 for parabolic.
struct ConjugacyType {
  ConjugacyKind kind;
  double parameter;
};

/// max(|m22 - conj m11|, |m21 - conj m12|, ||m11|^2 - |m12|^2 - 1|, |det - 1|).
template <typename Real>
Real su11_distance(const Mat2<Real>& m);

/// Classification by |trace|; throws NotInSU11 if su11_distance(m) > tol_su11.
template <typename Real>
ConjugacyType classify_su11(const Mat2<Real>& m, double tol_class = kTolClass,
                            double tol_su11 = kTolSU11);

/// Roots of lambda^2 - tr lambda + det, ordered by modulus (descending), ties by argument
/// (descending).
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> eigenvalues(const Mat2<Real>& m);

/// Orders a pair the same way `eigenvalues` does.
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> order_eigenpair(Complex<Real> x, Complex<Real> y);

/// Phi^{-1} * g = (Phi22 g - Phi12) / (-Phi21 g + Phi11); g may be complex infinity.
template <typename Real>
Complex<Real> mobius_star(const Mat2<Real>& phi, const Complex<Real>& g);

}  // namespace dscmc
