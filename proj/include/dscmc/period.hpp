#pragma once

// The period problem in c: scan f1 - f2 for sign changes, refine roots,
// solve for the gauge P(alpha, beta) and verify P^{-1} Phi_j P in SU(1,1).

#include <array>
#include <cmath>
#include <vector>

#include "dscmc/ends.hpp"
#include "dscmc/errors.hpp"
#include "dscmc/integrator.hpp"
#include "dscmc/linalg2c.hpp"
#include "dscmc/monodromy.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

/// Grid points with |c| below this are skipped (c = 0 is excluded).
inline constexpr double kSkipWindow = 0.01;
inline constexpr double kDefaultTolC = 1e-10;

struct ScanRecord {
  double c;
  double f1;  // NaN at gaps
  double f2;
  bool admissible_hint;
  bool valid;
};

/// Adjacent valid grid points with f1 - f2 of opposite sign (or zero at one end).
struct ScanBracket {
  double c_lo;
  double c_hi;
  bool admissible_hint;  // |f| > 1 at both ends for both functions
};

struct ScanResult {
  double a;
  std::vector<ScanRecord> records;
  std::vector<ScanBracket> brackets;
};

/// Uniform grid c_k = c_min + k (c_max - c_min) / steps, k = 0..steps.
ScanResult scan_c(double a, double c_min, double c_max, int steps,
                  const IntegratorConfig& cfg = IntegratorConfig::standard(),
                  double skip_window = kSkipWindow);

enum class RootKind { Crossing, Pole };

const char* to_string(RootKind kind);

template <typename Real>
struct BracketRoot {
  Real x;
  Real g;  // g(x)
  RootKind kind;
  int evaluations;
};

/// Illinois iteration with bisection fallback on a sign-changing bracket, down
/// to hi - lo <= tol. A sign change through a pole is reported as RootKind::Pole
/// (|g| grows instead of shrinking). Throws LostBracket if g(lo), g(hi) agree in sign.
template <typename Real, typename Fn>
BracketRoot<Real> refine_bracket(Fn&& g, Real lo, Real hi, const Real& tol, int max_evaluations = 400) {
  using std::abs;
  if (!(lo < hi)) throw DomainError("bracket must satisfy lo < hi");
  Real glo = g(lo), ghi = g(hi);
  int evals = 2;
  if (glo == Real(0)) return {lo, glo, RootKind::Crossing, evals};
  if (ghi == Real(0)) return {hi, ghi, RootKind::Crossing, evals};
  if ((glo < Real(0)) == (ghi < Real(0))) throw LostBracket("no sign change over the bracket");

  const Real initial = std::min(abs(glo), abs(ghi));
  Real wlo = glo, whi = ghi;  // Illinois-weighted copies
  int side = 0;
  int slow = 0;
  Real width_prev = hi - lo;
  while (hi - lo > tol) {
    if (evals >= max_evaluations) throw LostBracket("root refinement did not converge");
    bool bisect = slow >= 2;
    Real x(0);
    if (!bisect) {
      x = (lo * whi - hi * wlo) / (whi - wlo);
      if (!(x > lo && x < hi)) bisect = true;
    }
    if (bisect) x = lo + (hi - lo) / Real(2);
    const Real gx = g(x);
    ++evals;
    if (gx == Real(0)) return {x, gx, RootKind::Crossing, evals};
    if ((gx < Real(0)) == (glo < Real(0))) {
      lo = x;
      glo = wlo = gx;
      if (side == 1) whi /= Real(2);
      side = 1;
    } else {
      hi = x;
      ghi = whi = gx;
      if (side == -1) wlo /= Real(2);
      side = -1;
    }
    const Real width = hi - lo;
    slow = (bisect || width <= width_prev / Real(2)) ? 0 : slow + 1;
    width_prev = width;
  }
  const bool lo_better = abs(glo) <= abs(ghi);
  const Real x = lo_better ? lo : hi;
  const Real gx = lo_better ? glo : ghi;
  const RootKind kind = abs(gx) > initial ? RootKind::Pole : RootKind::Crossing;
  return {x, gx, kind, evals};
}

template <typename Real>
struct RootResult {
  Real c;
  Real f;  // (f1 + f2) / 2 at c
  Real f1;
  Real f2;
  RootKind kind;
  int evaluations;
};

/// Refines a root of f1 - f2 in [lo, hi]. Poles (including a vanishing
/// denominator met during refinement) are returned with kind Pole.
template <typename Real>
RootResult<Real> refine_root(const Real& a, const Real& lo, const Real& hi, const Real& tol_c,
                             const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Quad-precision polish of a crossing known to lie near c0 (to |dc| ~ 1e-26).
RootResult<Quad> polish_root(const Quad& a, double c0,
                             const IntegratorConfig& cfg = IntegratorConfig::extended());

template <typename Real>
struct GaugeSolution {
  int epsilon;
  Real beta;
  Real alpha;
  Mat2<Real> P;
};

/// epsilon = sign f, beta^4 = (eps f - 1) / (4 (eps f + 1)), alpha = -eps / (2 beta),
/// P = [[alpha, eps beta], [alpha, -eps beta]]. Throws NotAdmissible if |f| <= 1.
template <typename Real>
GaugeSolution<Real> solve_gauge(const Real& f);

template <typename Real>
struct PeriodSolution {
  Real a;
  Real c;
  Real f;
  Real f1;
  Real f2;
  int epsilon;
  Real beta;
  Real alpha;
  Mat2<Real> P;
  std::array<Real, 3> loop_residuals;  // su11_distance(P^{-1} Phi_j P)
  Real su11_residual;
  EndAnalysis<Real> end;  // both end loops measured; mismatch is the larger one
  IntegratorConfig integrator;
};

/// Recomputes the monodromies at (a, c), conjugates by P and checks SU(1,1)
/// membership (VerificationFailed names the worst loop), then classifies the ends.
template <typename Real>
PeriodSolution<Real> verify_solution(const Real& a, const Real& c, const Mat2<Real>& P,
                                     const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>(),
                                     double tol_su11 = kTolSU11);

template <typename To, typename From>
PeriodSolution<To> solution_cast(const PeriodSolution<From>& s) {
  PeriodSolution<To> out;
  out.a = static_cast<To>(s.a);
  out.c = static_cast<To>(s.c);
  out.f = static_cast<To>(s.f);
  out.f1 = static_cast<To>(s.f1);
  out.f2 = static_cast<To>(s.f2);
  out.epsilon = s.epsilon;
  out.beta = static_cast<To>(s.beta);
  out.alpha = static_cast<To>(s.alpha);
  out.P = mat2_cast<To>(s.P);
  for (int j = 0; j < 3; ++j) out.loop_residuals[j] = static_cast<To>(s.loop_residuals[j]);
  out.su11_residual = static_cast<To>(s.su11_residual);
  out.end.m = complex_cast<To>(s.end.m);
  out.end.end_type = s.end.end_type;
  out.end.predicted_eigenvalues = {complex_cast<To>(s.end.predicted_eigenvalues.first),
                                   complex_cast<To>(s.end.predicted_eigenvalues.second)};
  out.end.measured_eigenvalues = {complex_cast<To>(s.end.measured_eigenvalues.first),
                                  complex_cast<To>(s.end.measured_eigenvalues.second)};
  out.end.eigenvalue_mismatch = static_cast<To>(s.end.eigenvalue_mismatch);
  out.end.measured = s.end.measured;
  out.integrator = s.integrator;
  return out;
}

struct SolveOptions {
  double tol_c = kDefaultTolC;
  IntegratorConfig scan_cfg = IntegratorConfig::standard();
  IntegratorConfig verify_cfg = IntegratorConfig::extended();
  double tol_su11 = kTolSU11;
};

/// refine (double) -> admissibility -> polish (quad) -> gauge -> verify (quad).
/// Throws NotAdmissible for poles and for |f| <= 1.
PeriodSolution<Quad> solve_period(double a, double c_lo, double c_hi, const SolveOptions& opts = {});

/// As solve_period, with the bracket found by widening around c_guess.
PeriodSolution<Quad> solve_near(double a, double c_guess, const SolveOptions& opts = {});

}  // namespace dscmc
