#include "dscmc/ends.hpp"

#include <cmath>
#include <string>

#include "dscmc/errors.hpp"
#include "dscmc/monodromy.hpp"

namespace dscmc {

template <typename Real>
Complex<Real> indicial_exponent(const Real& a, const Real& c, double tol_res) {
  using std::abs;
  using std::round;
  using std::sqrt;
  CurveParams<Real> params{a, c};
  params.validate();
  params.require_nonzero_c();
  const Real radicand = Real(1) - Real(4) * c * (a - Real(1));
  const Complex<Real> m =
      radicand >= Real(0) ? Complex<Real>(sqrt(radicand), Real(0)) : Complex<Real>(Real(0), sqrt(-radicand));
  const Real dist = abs(m - Complex<Real>(round(m.real()), Real(0)));
  if (dist < Real(tol_res))
    throw ResonantExponent("indicial exponent m = " + std::to_string(to_double(m.real())) + " + " +
                           std::to_string(to_double(m.imag())) + "i is resonant (integer)");
  return m;
}

template <typename Real>
EndAnalysis<Real> classify_end(const Real& a, const Real& c, double tol_res) {
  using std::exp;
  EndAnalysis<Real> out;
  out.m = indicial_exponent(a, c, tol_res);
  out.end_type = out.m.imag() == Real(0) ? ConjugacyKind::Elliptic : ConjugacyKind::Hyperbolic;
  const Complex<Real> ipi = imag_unit<Real>() * pi<Real>();
  out.predicted_eigenvalues =
      order_eigenpair<Real>(-exp(out.m * ipi), -exp(-out.m * ipi));
  return out;
}

template <typename Real>
Real eigenvalue_mismatch(const std::pair<Complex<Real>, Complex<Real>>& measured,
                         const std::pair<Complex<Real>, Complex<Real>>& predicted) {
  using std::abs;
  auto rel = [](const Complex<Real>& x, const Complex<Real>& y) {
    return Real(abs(x - y)) / std::max(Real(1), Real(abs(y)));
  };
  const Real same = std::max(rel(measured.first, predicted.first), rel(measured.second, predicted.second));
  const Real crossed = std::max(rel(measured.first, predicted.second), rel(measured.second, predicted.first));
  return std::min(same, crossed);
}

template <typename Real>
EndAnalysis<Real> end_loop_check(const Real& a, const Real& c, int which_end,
                                 const IntegratorConfig& cfg, double tol_eig) {
  if (which_end != 1 && which_end != -1) throw DomainError("which_end must be +1 or -1");
  EndAnalysis<Real> out = classify_end(a, c);
  const auto paths = canonical_paths<Real>(a);
  const PathSpec<Real>& loop = which_end == 1 ? paths.end_loop_plus : paths.end_loop_minus;
  const Mat2<Real> phi = direct_loop_holonomy(loop, CurveParams<Real>{a, c}, identity2<Real>(), cfg);
  out.measured_eigenvalues = eigenvalues<Real>(phi);
  out.eigenvalue_mismatch = eigenvalue_mismatch<Real>(out.measured_eigenvalues, out.predicted_eigenvalues);
  out.measured = true;
  if (out.eigenvalue_mismatch > Real(tol_eig))
    throw EigenvalueMismatch(to_double(out.eigenvalue_mismatch),
                             "end " + std::to_string(which_end) + " eigenvalue mismatch " +
                                 std::to_string(to_double(out.eigenvalue_mismatch)));
  return out;
}

template <typename Real>
Real lift_independence_check(const CurveParams<Real>& params, const PathSpec<Real>& loop,
                             const Mat2<Real>& B, const IntegratorConfig& cfg) {
  using std::abs;
  if (abs(det2<Real>(B) - Real(1)) > Real(kTolDet)) throw DomainError("B must have determinant 1");
  const auto plain = eigenvalues<Real>(direct_loop_holonomy(loop, params, identity2<Real>(), cfg));
  const auto lifted = eigenvalues<Real>(direct_loop_holonomy(loop, params, B, cfg));
  return eigenvalue_mismatch<Real>(lifted, plain);
}

bool osserman_equality_check(int genus, int n_ends, int deg_G) {
  if (genus < 0 || n_ends < 0 || deg_G < 0) throw DomainError("Osserman check needs nonnegative inputs");
  const int chi = 2 - 2 * genus - n_ends;  // punctured surface
  return 2 * deg_G == -chi + n_ends;
}

#define DSCMC_INSTANTIATE_ENDS(R)                                                                \
  template Complex<R> indicial_exponent<R>(const R&, const R&, double);                         \
  template EndAnalysis<R> classify_end<R>(const R&, const R&, double);                          \
  template R eigenvalue_mismatch<R>(const std::pair<Complex<R>, Complex<R>>&,                   \
                                    const std::pair<Complex<R>, Complex<R>>&);                  \
  template EndAnalysis<R> end_loop_check<R>(const R&, const R&, int, const IntegratorConfig&,   \
                                            double);                                            \
  template R lift_independence_check<R>(const CurveParams<R>&, const PathSpec<R>&,              \
                                        const Mat2<R>&, const IntegratorConfig&);

DSCMC_INSTANTIATE_ENDS(double)
DSCMC_INSTANTIATE_ENDS(Quad)

}  // namespace dscmc
