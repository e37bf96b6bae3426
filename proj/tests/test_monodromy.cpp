#include <doctest.h>

#include "dscmc/curve.hpp"
#include "dscmc/errors.hpp"
#include "dscmc/monodromy.hpp"
#include "reference.hpp"

using namespace dscmc;
using cd = std::complex<double>;
using M = Mat2<double>;

namespace {

double rel_diff(const M& x, const M& y) { return max_abs_diff<double>(x, y) / std::max(1.0, max_abs<double>(y)); }

// Period expressions written out from the frame entries.
std::pair<cd, cd> periods_from_entries(const std::array<cd, 4>& F1, const std::array<cd, 4>& F2) {
  const cd A1 = F1[0], B1 = F1[1], C1 = F1[2], D1 = F1[3];
  const cd A2 = F2[0], B2 = F2[1], C2 = F2[2], D2 = F2[3];
  auto cj = [](cd x) { return std::conj(x); };
  const cd f1 = -(cj(A1) * C1 + A1 * cj(C1) + cj(B1) * D1 + B1 * cj(D1)) /
                (cj(A1) * D1 + A1 * cj(D1) + cj(B1) * C1 + B1 * cj(C1));
  const cd f2 = -(cj(A2) * C2 - A2 * cj(C2) + cj(B2) * D2 - B2 * cj(D2)) /
                (cj(A2) * D2 - A2 * cj(D2) + cj(B2) * C2 - B2 * cj(C2));
  return {f1, f2};
}

}  // namespace

TEST_CASE("assemble_monodromies from identity frames") {
  const HalfPathFrames<double> h{identity2<double>(), identity2<double>(), {2.0, 1.0}};
  const auto t = assemble_monodromies(h);
  for (int j = 1; j <= 3; ++j) CHECK(max_abs_diff<double>(t[j], identity2<double>()) == 0.0);
}

TEST_CASE("symmetry products against direct loops") {
  SUBCASE("a = 2, c = 1: Phi2") {
    const CurveParams<double> params{2.0, 1.0};
    const auto t = assemble_monodromies(half_path_frames(params));
    const auto d = direct_monodromies(params);
    CHECK(rel_diff(t.Phi2, d.Phi2) < 1e-7);
  }
  SUBCASE("a = 2, c = -7.6119: Phi1") {
    const CurveParams<double> params{2.0, -7.6119};
    const auto t = assemble_monodromies(half_path_frames(params));
    const auto paths = canonical_paths<double>(2.0);
    CHECK(rel_diff(direct_loop_holonomy(paths.gamma1, params), t.Phi1) < 1e-6);
  }
  SUBCASE("grid") {
    for (double a : {1.5, 2.0, 3.0}) {
      for (double c : {-8.7, -3.3, -0.4, 0.35, 2.9}) {
        const CurveParams<double> params{a, c};
        const auto t = assemble_monodromies(half_path_frames(params));
        const auto d = direct_monodromies(params);
        for (int j = 1; j <= 3; ++j) CHECK(rel_diff(t[j], d[j]) < 1e-6);
      }
    }
  }
}

TEST_CASE("structure of the monodromies") {
  SUBCASE("a = 2, c = -1: off-diagonal coefficients of Phi2 are real") {
    const auto t = assemble_monodromies(half_path_frames(CurveParams<double>{2.0, -1.0}));
    // Phi2 = [[psi11, i psi12], [i psi21, conj psi11]].
    const cd psi12 = t.Phi2(0, 1) / cd(0, 1), psi21 = t.Phi2(1, 0) / cd(0, 1);
    CHECK(std::abs(psi12.imag()) < 1e-8);
    CHECK(std::abs(psi21.imag()) < 1e-8);
    CHECK(std::abs(t.Phi2(1, 1) - std::conj(t.Phi2(0, 0))) < 1e-8);
    // Phi1 = [[phi11, phi12], [-conj phi12, phi22]] with real diagonal.
    CHECK(std::abs(t.Phi1(0, 0).imag()) < 1e-8 * std::max(1.0, std::abs(t.Phi1(0, 0))));
    CHECK(std::abs(t.Phi1(1, 1).imag()) < 1e-8 * std::max(1.0, std::abs(t.Phi1(1, 1))));
    CHECK(std::abs(t.Phi1(1, 0) + std::conj(t.Phi1(0, 1))) < 1e-8 * std::max(1.0, max_abs<double>(t.Phi1)));
  }

  SUBCASE("residual functions on the grid, including direct loops") {
    for (double a : {1.5, 2.0, 3.0}) {
      for (double c : {-8.1, -2.2, -0.3, 0.6, 3.7}) {
        const CurveParams<double> params{a, c};
        const auto t = assemble_monodromies(half_path_frames(params));
        CHECK(lemma_psi_form_residual(t.Phi2) < kTolForm);
        CHECK(lemma_psi_form_residual(t.Phi3) < kTolForm);
        CHECK(lemma_phi_form_residual(t.Phi1) < kTolForm);
        CHECK(phi3_pattern_residual(t.Phi2, t.Phi3) < kTolForm);
        const auto d = direct_monodromies(params);
        CHECK(phi3_pattern_residual(d.Phi2, d.Phi3) < kTolForm);
        CHECK(lemma_psi_form_residual(d.Phi2) < kTolForm);
      }
    }
  }

  SUBCASE("residual functions detect violations") {
    const M bad = mat2<double>(cd(1, 0), cd(1, 0), cd(0, 1), cd(1, 0));
    CHECK(lemma_psi_form_residual(bad) > 0.5);
    CHECK(lemma_phi_form_residual(mat2<double>(cd(1, 1), 0.0, 0.0, 1.0)) > 0.5);
  }
}

TEST_CASE("direct_loop_holonomy") {
  const auto paths = canonical_paths<double>(2.0);

  SUBCASE("contractible loop") {
    PathSpec<double> loop;
    loop.start = base_point<double>();
    loop.waypoints = {0.0, cd(0.4, 0.3), cd(0.0, 0.6), cd(-0.4, 0.3), 0.0};
    loop.closed = true;
    for (double c : {-5.0, 0.5, 3.0})
      CHECK(max_abs_diff<double>(direct_loop_holonomy(loop, CurveParams<double>{2.0, c}), identity2<double>()) < 1e-8);
  }

  SUBCASE("gamma2 then its reverse") {
    const CurveParams<double> params{2.0, 1.0};
    const M fwd = direct_loop_holonomy(paths.gamma2, params);
    const M back = direct_loop_holonomy(paths.gamma2.reversed(base_point<double>()), params);
    CHECK(max_abs_diff<double>(M(back * fwd), identity2<double>()) < 1e-7);
  }

  SUBCASE("conjugation by the initial frame") {
    const CurveParams<double> params{2.0, -2.0};
    const M B = mat2<double>(2.0, cd(0.3, 0.1), 0.0, 0.5);
    const M plain = direct_loop_holonomy(paths.gamma3, params);
    const M lifted = direct_loop_holonomy(paths.gamma3, params, B);
    CHECK(rel_diff(lifted, M(inverse2<double>(B) * plain * B)) < 1e-8);
  }
}

TEST_CASE("period_functions") {
  SUBCASE("at the first root") {
    const auto pv = period_functions(half_path_frames(CurveParams<double>{2.0, -7.6119}));
    CHECK(std::abs(pv.f1 - pv.f2) < 1e-3);
    CHECK(std::abs(pv.f1) > 1);
    CHECK(std::abs(pv.f2) > 1);
  }

  SUBCASE("a = 2, c = -1 against RK4 reference frames") {
    const double c = -1.0;
    const auto paths = canonical_paths<double>(2.0);
    const auto pv = period_functions(half_path_frames(CurveParams<double>{2.0, c}));
    const auto r1 = ref::integrate(paths.c1.waypoints, 1.0, ref::identity(), 2.0, c, 4000);
    const auto r2 = ref::integrate(paths.c2.waypoints, 1.0, ref::identity(), 2.0, c, 4000);
    const auto [f1, f2] = periods_from_entries(r1.F, r2.F);
    CHECK(std::abs(f1.imag()) < 1e-8);
    CHECK(std::abs(f2.imag()) < 1e-8);
    CHECK(std::abs(pv.f1 - f1.real()) < 1e-8);
    CHECK(std::abs(pv.f2 - f2.real()) < 1e-8);
  }

  SUBCASE("vanishing denominator") {
    const HalfPathFrames<double> h{identity2<double>(), identity2<double>(), {2.0, 1.0}};
    CHECK_THROWS_AS(period_functions(h), DegenerateDenominator);
  }

  SUBCASE("both expressions are real for any frames") {
    // Numerator and denominator of f1 are 2 Re(.), those of f2 are 2i Im(.).
    const M F1 = mat2<double>(cd(1, 0.5), cd(0.2, 0.0), cd(0.0, 0.3), cd(0.7, 0.1));
    const M F2 = mat2<double>(cd(0.4, -0.5), cd(1.2, 0.3), cd(-0.6, 0.3), cd(0.2, 0.9));
    const auto pv = period_functions(HalfPathFrames<double>{F1, F2, {2.0, 1.0}});
    const auto [f1, f2] = periods_from_entries({F1(0, 0), F1(0, 1), F1(1, 0), F1(1, 1)},
                                               {F2(0, 0), F2(0, 1), F2(1, 0), F2(1, 1)});
    CHECK(std::abs(f1.imag()) < 1e-15);
    CHECK(std::abs(f2.imag()) < 1e-15);
    CHECK(pv.f1 == doctest::Approx(f1.real()).epsilon(1e-14));
    CHECK(pv.f2 == doctest::Approx(f2.real()).epsilon(1e-14));
  }

  SUBCASE("quad and double agree") {
    const auto pd = period_functions(half_path_frames(CurveParams<double>{2.0, -3.0}));
    const auto pq = period_functions(half_path_frames(CurveParams<Quad>{Quad(2), Quad(-3)}));
    CHECK(std::abs(pd.f1 - to_double(pq.f1)) < 1e-8);
    CHECK(std::abs(pd.f2 - to_double(pq.f2)) < 1e-8);
  }
}

TEST_CASE("det Phi_j = 1 in quad on a grid") {
  for (double a : {1.5, 3.0}) {
    for (double c : {-9.0, -0.7, 3.9}) {
      const auto t = assemble_monodromies(half_path_frames(CurveParams<Quad>{Quad(a), Quad(c)}));
      for (int j = 1; j <= 3; ++j) CHECK(to_double(abs(det2<Quad>(t[j]) - Quad(1))) < 1e-9);
    }
  }
}
