#pragma once

#include <complex>
#include <limits>

#include <Eigen/Core>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace dscmc {

/// IEEE binary128 scalar used for extended-precision period verification.
using Quad = boost::multiprecision::float128;

template <typename Real>
using Complex = std::complex<Real>;

/// 2x2 complex matrix: frames F, monodromies, gauges P.
template <typename Real>
using Mat2 = Eigen::Matrix<Complex<Real>, 2, 2>;

template <typename Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

template <typename Real>
inline Complex<Real> imag_unit() {
  return Complex<Real>(Real(0), Real(1));
}

template <typename Real>
inline Mat2<Real> identity2() {
  return Mat2<Real>::Identity();
}

template <typename Real>
inline Mat2<Real> mat2(Complex<Real> m11, Complex<Real> m12, Complex<Real> m21,
                       Complex<Real> m22) {
  Mat2<Real> m;
  m << m11, m12, m21, m22;
  return m;
}

/// Closed-form inverse of a 2x2 matrix.
template <typename Real>
inline Mat2<Real> inverse2(const Mat2<Real>& m) {
  const Complex<Real> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return mat2<Real>(m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det);
}

template <typename Real>
inline Complex<Real> det2(const Mat2<Real>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Largest entry modulus.
template <typename Real>
inline Real max_abs(const Mat2<Real>& m) {
  using std::abs;
  Real best(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) best = std::max(best, Real(abs(m(i, j))));
  return best;
}

template <typename Real>
inline Real max_abs_diff(const Mat2<Real>& a, const Mat2<Real>& b) {
  return max_abs<Real>(a - b);
}

template <typename Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <typename Real>
inline std::complex<double> to_double(const Complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <typename To, typename From>
inline Complex<To> complex_cast(const Complex<From>& z) {
  return {static_cast<To>(z.real()), static_cast<To>(z.imag())};
}

template <typename To, typename From>
inline Mat2<To> mat2_cast(const Mat2<From>& m) {
  Mat2<To> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = complex_cast<To>(m(i, j));
  return out;
}

template <typename Real>
inline Complex<Real> complex_infinity() {
  return {std::numeric_limits<Real>::infinity(), Real(0)};
}

template <typename Real>
inline bool is_infinite(const Complex<Real>& z) {
  using std::isinf;
  using boost::multiprecision::isinf;
  return isinf(z.real()) || isinf(z.imag());
}

}  // namespace dscmc
