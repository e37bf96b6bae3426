#include "dscmc/monodromy.hpp"

#include <cmath>
#include <string>

#include "dscmc/errors.hpp"
#include "dscmc/transport.hpp"

namespace dscmc {

template <typename Real>
HalfPathFrames<Real> half_path_frames(const CurveParams<Real>& params, const PathSpec<Real>& c1,
                                      const PathSpec<Real>& c2, const IntegratorConfig& cfg) {
  params.validate();
  const Mat2<Real> I = identity2<Real>();
  return {integrate_frame(c1, params, I, cfg).F, integrate_frame(c2, params, I, cfg).F, params};
}

template <typename Real>
HalfPathFrames<Real> half_path_frames(const CurveParams<Real>& params, const IntegratorConfig& cfg) {
  const auto paths = canonical_paths<Real>(params.a);
  return half_path_frames(params, paths.c1, paths.c2, cfg);
}

template <typename Real>
MonodromyTriple<Real> assemble_monodromies(const HalfPathFrames<Real>& h) {
  using std::conj;
  const auto& F1 = h.F_c1;
  const auto& F2 = h.F_c2;
  const Complex<Real> A1 = F1(0, 0), B1 = F1(0, 1), C1 = F1(1, 0), D1 = F1(1, 1);
  const Complex<Real> A2 = F2(0, 0), B2 = F2(0, 1), C2 = F2(1, 0), D2 = F2(1, 1);

  MonodromyTriple<Real> out;
  out.Phi1 = mat2<Real>(conj(A1), -conj(C1), -conj(B1), conj(D1)) *
             mat2<Real>(D1, -C1, -B1, A1) * mat2<Real>(conj(D1), conj(B1), conj(C1), conj(A1)) * F1;
  out.Phi2 = mat2<Real>(conj(D2), -conj(B2), -conj(C2), conj(A2)) * F2;
  out.Phi3 = mat2<Real>(conj(A2), -conj(C2), -conj(B2), conj(D2)) * mat2<Real>(D2, C2, B2, A2);
  return out;
}

template <typename Real>
Mat2<Real> direct_loop_holonomy(const PathSpec<Real>& loop, const CurveParams<Real>& params,
                                const Mat2<Real>& B, const IntegratorConfig& cfg) {
  if (!loop.closed) throw DomainError("holonomy needs a closed loop");
  return inverse2<Real>(B) * integrate_frame(loop, params, B, cfg).F;
}

template <typename Real>
MonodromyTriple<Real> direct_monodromies(const CurveParams<Real>& params, const IntegratorConfig& cfg) {
  const auto paths = canonical_paths<Real>(params.a);
  const Mat2<Real> I = identity2<Real>();
  return {direct_loop_holonomy(paths.gamma1, params, I, cfg),
          direct_loop_holonomy(paths.gamma2, params, I, cfg),
          direct_loop_holonomy(paths.gamma3, params, I, cfg)};
}

namespace {

template <typename Real>
Real ratio_checked(const Complex<Real>& num, const Complex<Real>& den, const Real& den_scale,
                   const char* name) {
  using std::abs;
  if (!(abs(den) > Real(kTolDenominator) * den_scale))
    throw DegenerateDenominator(std::string(name) + " denominator vanishes");
  const Complex<Real> f = num / den;
  if (abs(f.imag()) > Real(kTolPeriodImag) * std::max(Real(1), Real(abs(f.real()))))
    throw FormViolation(std::string(name) + " has imaginary part " +
                        std::to_string(to_double(f.imag())));
  return f.real();
}

}  // namespace

template <typename Real>
PeriodValues<Real> period_functions(const HalfPathFrames<Real>& h) {
  using std::abs;
  using std::conj;
  const Complex<Real> A1 = h.F_c1(0, 0), B1 = h.F_c1(0, 1), C1 = h.F_c1(1, 0), D1 = h.F_c1(1, 1);
  const Complex<Real> A2 = h.F_c2(0, 0), B2 = h.F_c2(0, 1), C2 = h.F_c2(1, 0), D2 = h.F_c2(1, 1);

  const Complex<Real> n1 = -(conj(A1) * C1 + A1 * conj(C1) + conj(B1) * D1 + B1 * conj(D1));
  const Complex<Real> d1 = conj(A1) * D1 + A1 * conj(D1) + conj(B1) * C1 + B1 * conj(C1);
  const Real s1 = Real(2) * (abs(A1 * D1) + abs(B1 * C1));

  const Complex<Real> n2 = -(conj(A2) * C2 - A2 * conj(C2) + conj(B2) * D2 - B2 * conj(D2));
  const Complex<Real> d2 = conj(A2) * D2 - A2 * conj(D2) + conj(B2) * C2 - B2 * conj(C2);
  const Real s2 = Real(2) * (abs(A2 * D2) + abs(B2 * C2));

  return {ratio_checked(n1, d1, s1, "f1"), ratio_checked(n2, d2, s2, "f2")};
}

template <typename Real>
Real lemma_psi_form_residual(const Mat2<Real>& phi) {
  using std::abs;
  const Real r = std::max({Real(abs(phi(1, 1) - std::conj(phi(0, 0)))), Real(abs(phi(0, 1).real())),
                           Real(abs(phi(1, 0).real()))});
  return r / std::max(Real(1), max_abs<Real>(phi));
}

template <typename Real>
Real lemma_phi_form_residual(const Mat2<Real>& phi) {
  using std::abs;
  const Real r = std::max({Real(abs(phi(0, 0).imag())), Real(abs(phi(1, 1).imag())),
                           Real(abs(phi(1, 0) + std::conj(phi(0, 1))))});
  return r / std::max(Real(1), max_abs<Real>(phi));
}

template <typename Real>
Real phi3_pattern_residual(const Mat2<Real>& phi2, const Mat2<Real>& phi3) {
  const Mat2<Real> expected = mat2<Real>(std::conj(phi2(0, 0)), phi2(1, 0), phi2(0, 1), phi2(0, 0));
  return max_abs_diff<Real>(phi3, expected) / std::max(Real(1), max_abs<Real>(phi2));
}

#define DSCMC_INSTANTIATE_MONODROMY(R)                                                           \
  template HalfPathFrames<R> half_path_frames<R>(const CurveParams<R>&, const IntegratorConfig&); \
  template HalfPathFrames<R> half_path_frames<R>(const CurveParams<R>&, const PathSpec<R>&,       \
                                                 const PathSpec<R>&, const IntegratorConfig&);    \
  template MonodromyTriple<R> assemble_monodromies<R>(const HalfPathFrames<R>&);                 \
  template Mat2<R> direct_loop_holonomy<R>(const PathSpec<R>&, const CurveParams<R>&,            \
                                           const Mat2<R>&, const IntegratorConfig&);             \
  template MonodromyTriple<R> direct_monodromies<R>(const CurveParams<R>&,                       \
                                                    const IntegratorConfig&);                    \
  template PeriodValues<R> period_functions<R>(const HalfPathFrames<R>&);                        \
  template R lemma_psi_form_residual<R>(const Mat2<R>&);                                         \
  template R lemma_phi_form_residual<R>(const Mat2<R>&);                                         \
  template R phi3_pattern_residual<R>(const Mat2<R>&, const Mat2<R>&);

DSCMC_INSTANTIATE_MONODROMY(double)
DSCMC_INSTANTIATE_MONODROMY(Quad)

}  // namespace dscmc
