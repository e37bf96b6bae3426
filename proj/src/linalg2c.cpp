#include "dscmc/linalg2c.hpp"

#include <cmath>

#include "dscmc/errors.hpp"

namespace dscmc {

const char* to_string(ConjugacyKind kind) {
  switch (kind) {
    case ConjugacyKind::Elliptic: return "elliptic";
    case ConjugacyKind::Hyperbolic: return "hyperbolic";
    case ConjugacyKind::Parabolic: return "parabolic";
  }
  return "unknown";
}

template <typename Real>
Real su11_distance(const Mat2<Real>& m) {
  using std::abs;
  const Real r1 = abs(m(1, 1) - std::conj(m(0, 0)));
  const Real r2 = abs(m(1, 0) - std::conj(m(0, 1)));
  const Real r3 = abs(std::norm(m(0, 0)) - std::norm(m(0, 1)) - Real(1));
  const Real r4 = abs(det2<Real>(m) - Real(1));
  return std::max({r1, r2, r3, r4});
}

template <typename Real>
ConjugacyType classify_su11(const Mat2<Real>& m, double tol_class, double tol_su11) {
  using std::abs;
  const Real dist = su11_distance<Real>(m);
  if (dist > Real(tol_su11))
    throw NotInSU11("matrix is not in SU(1,1): distance " + std::to_string(to_double(dist)));
  const Real tr = (m(0, 0) + m(1, 1)).real();
  const Real abs_tr = abs(tr);
  if (abs_tr < Real(2) - Real(tol_class)) {
    using std::acos;
    return {ConjugacyKind::Elliptic, to_double(Real(acos(tr / Real(2))))};
  }
  if (abs_tr > Real(2) + Real(tol_class)) {
    using std::acosh;
    using boost::multiprecision::acosh;
    return {ConjugacyKind::Hyperbolic, to_double(Real(acosh(abs_tr / Real(2))))};
  }
  return {ConjugacyKind::Parabolic, 0.0};
}

template <typename Real>
std::pair<Complex<Real>, Complex<Real>> order_eigenpair(Complex<Real> x, Complex<Real> y) {
  using std::abs;
  using std::sqrt;
  const Real ax = abs(x), ay = abs(y);
  const Real tie = sqrt(std::numeric_limits<Real>::epsilon()) * std::max({ax, ay, Real(1)});
  bool swap_needed;
  if (abs(ax - ay) > tie) swap_needed = ay > ax;
  else swap_needed = std::arg(y) > std::arg(x);
  if (swap_needed) std::swap(x, y);
  return {x, y};
}

template <typename Real>
std::pair<Complex<Real>, Complex<Real>> eigenvalues(const Mat2<Real>& m) {
  using std::abs;
  using std::sqrt;
  const Complex<Real> tr = m(0, 0) + m(1, 1);
  const Complex<Real> det = det2<Real>(m);
  const Complex<Real> half = tr / Real(2);
  const Complex<Real> disc = sqrt(half * half - det);
  // Larger-modulus root first, then the other from the product to avoid cancellation.
  Complex<Real> big = (abs(half + disc) >= abs(half - disc)) ? half + disc : half - disc;
  Complex<Real> small = (big == Complex<Real>(0)) ? Complex<Real>(0) : det / big;
  return order_eigenpair<Real>(big, small);
}

template <typename Real>
Complex<Real> mobius_star(const Mat2<Real>& phi, const Complex<Real>& g) {
  if (is_infinite<Real>(g)) {
    if (phi(1, 0) == Complex<Real>(0)) return complex_infinity<Real>();
    return -phi(1, 1) / phi(1, 0);
  }
  const Complex<Real> den = -phi(1, 0) * g + phi(0, 0);
  if (den == Complex<Real>(0)) throw PoleError("Mobius denominator vanishes");
  return (phi(1, 1) * g - phi(0, 1)) / den;
}

#define DSCMC_INSTANTIATE_LINALG(R)                                                           \
  template R su11_distance<R>(const Mat2<R>&);                                                \
  template ConjugacyType classify_su11<R>(const Mat2<R>&, double, double);                    \
  template std::pair<Complex<R>, Complex<R>> eigenvalues<R>(const Mat2<R>&);                  \
  template std::pair<Complex<R>, Complex<R>> order_eigenpair<R>(Complex<R>, Complex<R>);      \
  template Complex<R> mobius_star<R>(const Mat2<R>&, const Complex<R>&);

DSCMC_INSTANTIATE_LINALG(double)
DSCMC_INSTANTIATE_LINALG(Quad)

}  // namespace dscmc
