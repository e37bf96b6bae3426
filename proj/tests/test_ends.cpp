#include <doctest.h>

#include <cmath>
#include <random>

#include "dscmc/curve.hpp"
#include "dscmc/ends.hpp"
#include "dscmc/errors.hpp"
#include "dscmc/monodromy.hpp"

using namespace dscmc;
using cd = std::complex<double>;
using M = Mat2<double>;

TEST_CASE("indicial_exponent examples") {
  const cd m1 = indicial_exponent(2.0, -7.6119);
  CHECK(m1.imag() == 0.0);
  CHECK(m1.real() == doctest::Approx(5.60782).epsilon(1e-6));
  CHECK(m1.real() == doctest::Approx(std::sqrt(1 + 4 * 7.6119)).epsilon(1e-15));

  const cd m2 = indicial_exponent(2.0, 1.26988);
  CHECK(m2.real() == 0.0);
  CHECK(m2.imag() == doctest::Approx(2.01978).epsilon(1e-5));

  CHECK(indicial_exponent(2.0, 0.1875) == cd(0.5, 0.0));

  CHECK_THROWS_AS(indicial_exponent(2.0, -0.75), ResonantExponent);  // m = 2
  CHECK_THROWS_AS(indicial_exponent(2.0, 0.25), ResonantExponent);   // m = 0
  CHECK_THROWS_AS(indicial_exponent(3.0, -0.375), ResonantExponent); // m = 2 at a = 3
  CHECK_NOTHROW(indicial_exponent(2.0, -0.75 + 1e-3));
}

TEST_CASE("classify_end examples") {
  CHECK(classify_end(2.0, -7.6119).end_type == ConjugacyKind::Elliptic);
  CHECK(classify_end(2.0, 1.26988).end_type == ConjugacyKind::Hyperbolic);
  CHECK(classify_end(2.0, 0.1).end_type == ConjugacyKind::Elliptic);
  const auto e = classify_end(2.0, 0.1);
  CHECK_FALSE(e.measured);
  CHECK(e.m.real() == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
}

TEST_CASE("exponent and eigenvalue identities") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ua(1.2, 4.0), uc(-9.0, 4.0);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const double a = ua(rng), c = uc(rng);
    EndAnalysis<double> e;
    try {
      e = classify_end(a, c);
    } catch (const ResonantExponent&) {
      continue;
    }
    ++checked;
    CHECK(std::abs(e.m * e.m + 4 * c * (a - 1) - 1.0) < 1e-12 * std::max(1.0, std::abs(c) * a));
    const auto [l1, l2] = e.predicted_eigenvalues;
    CHECK(std::abs(l1 * l2 - 1.0) < 1e-12);
    // Predicted trace is -2 cos(m pi).
    CHECK(std::abs(l1 + l2 + 2.0 * std::cos(e.m * M_PI)) < 1e-9 * std::max(1.0, std::abs(l1)));
    // Sign dichotomy: elliptic iff 4c(a-1) < 1.
    CHECK((e.end_type == ConjugacyKind::Elliptic) == (4 * c * (a - 1) < 1));
  }
  CHECK(checked > 390);
}

TEST_CASE("end_loop_check at the examples") {
  SUBCASE("elliptic end, c = -7.6119") {
    const auto plus = end_loop_check(2.0, -7.6119, +1);
    const auto minus = end_loop_check(2.0, -7.6119, -1);
    CHECK(plus.measured);
    CHECK(plus.end_type == ConjugacyKind::Elliptic);
    const double m = plus.m.real();
    const cd tr = plus.measured_eigenvalues.first + plus.measured_eigenvalues.second;
    CHECK(std::abs(tr - -2 * std::cos(m * M_PI)) < 1e-6);
    CHECK(std::abs(plus.measured_eigenvalues.first * plus.measured_eigenvalues.second - 1.0) < 1e-9);
    CHECK(plus.eigenvalue_mismatch < 1e-6);
    CHECK(minus.eigenvalue_mismatch < 1e-6);
    CHECK(eigenvalue_mismatch(plus.measured_eigenvalues, minus.measured_eigenvalues) < 1e-6);
  }

  SUBCASE("hyperbolic end, c = 1.26988") {
    const auto plus = end_loop_check(2.0, 1.26988, +1);
    const auto minus = end_loop_check(2.0, 1.26988, -1);
    CHECK(plus.end_type == ConjugacyKind::Hyperbolic);
    const double s = plus.m.imag();
    const cd tr = plus.measured_eigenvalues.first + plus.measured_eigenvalues.second;
    const double expected = -2 * std::cosh(s * M_PI);
    CHECK(std::abs(tr - expected) < 1e-6 * std::abs(expected));
    CHECK(eigenvalue_mismatch(plus.measured_eigenvalues, minus.measured_eigenvalues) < 1e-6);
    // Eigenvalues ~ exp(+-6.3); the product is resolved to ~2e-9 in double, so it is checked in quad.
    const auto q = end_loop_check<Quad>(Quad(2), Quad(1.26988), +1);
    const auto lq = q.measured_eigenvalues;
    CHECK(to_double(abs(lq.first * lq.second - Complex<Quad>(1))) < 1e-9);
  }

  SUBCASE("quad") {
    const auto q = end_loop_check<Quad>(Quad(2), Quad(-4.0601136), +1);
    CHECK(to_double(q.eigenvalue_mismatch) < 1e-20);
  }

  SUBCASE("threshold below the double floor triggers a mismatch") {
    CHECK_THROWS_AS(end_loop_check(2.0, -7.6119, +1, IntegratorConfig{}, 1e-20), EigenvalueMismatch);
  }

  SUBCASE("bad end index") { CHECK_THROWS_AS(end_loop_check(2.0, -1.0, 0), DomainError); }
}

TEST_CASE("eigenvalue_mismatch pairing") {
  const std::pair<cd, cd> p{cd(2, 0), cd(0.5, 0)};
  CHECK(eigenvalue_mismatch<double>({cd(0.5, 0), cd(2, 0)}, p) == 0.0);
  CHECK(eigenvalue_mismatch<double>({cd(2.1, 0), cd(0.5, 0)}, p) == doctest::Approx(0.05));
}

TEST_CASE("lift independence") {
  const auto paths = canonical_paths<double>(2.0);
  const CurveParams<double> params{2.0, -2.5};
  CHECK(lift_independence_check(params, paths.gamma2, identity2<double>()) < 1e-12);
  CHECK(lift_independence_check(params, paths.gamma2, mat2<double>(2.0, 0.0, 0.0, 0.5)) < 1e-7);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 3; ++k) {
    const cd p(1 + 0.3 * u(rng), 0.3 * u(rng)), q(u(rng), u(rng)), r(u(rng), u(rng));
    const M B = mat2<double>(p, q, r, (1.0 + q * r) / p);
    CHECK(lift_independence_check(params, paths.gamma1, B) < 1e-6);
    CHECK(lift_independence_check(params, paths.end_loop_plus, B) < 1e-6);
  }
}

TEST_CASE("Osserman equality") {
  CHECK(osserman_equality_check(1, 2, 2));
  CHECK(osserman_equality_check(0, 2, 1));
  CHECK_FALSE(osserman_equality_check(1, 2, 1));
  CHECK_FALSE(osserman_equality_check(1, 2, 3));
  // deg G = genus - 1 + n.
  for (int genus = 0; genus < 5; ++genus)
    for (int n = 1; n < 6; ++n) CHECK(osserman_equality_check(genus, n, genus - 1 + n));
}
