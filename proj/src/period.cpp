#include "dscmc/period.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace dscmc {

const char* to_string(RootKind kind) { return kind == RootKind::Crossing ? "crossing" : "pole"; }

ScanResult scan_c(double a, double c_min, double c_max, int steps, const IntegratorConfig& cfg,
                  double skip_window) {
  CurveParams<double>{a, 1.0}.validate();
  if (!(c_min < c_max)) throw DomainError("scan needs c_min < c_max");
  if (steps < 2) throw DomainError("scan needs at least 2 steps");
  cfg.validate();
  const auto paths = canonical_paths<double>(a);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double h = (c_max - c_min) / steps;

  ScanResult out{a, {}, {}};
  out.records.resize(static_cast<std::size_t>(steps) + 1);
  auto evaluate = [&](int k) {
    const double c = k == steps ? c_max : c_min + k * h;
    ScanRecord rec{c, nan, nan, false, false};
    if (std::abs(c) >= skip_window) {
      try {
        const auto pv = period_functions(half_path_frames<double>({a, c}, paths.c1, paths.c2, cfg));
        rec = {c, pv.f1, pv.f2, std::abs(pv.f1) > 1 && std::abs(pv.f2) > 1, true};
      } catch (const DegenerateDenominator&) {
      } catch (const FormViolation&) {
      }
    }
    out.records[static_cast<std::size_t>(k)] = rec;
  };

  // Grid points are independent; each worker takes a strided share.
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, steps + 1);
  if (workers == 1) {
    for (int k = 0; k <= steps; ++k) evaluate(k);
  } else {
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < workers; ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (int k = t; k <= steps; k += workers) evaluate(k);
      }));
    for (auto& j : jobs) j.get();
  }
  for (std::size_t k = 1; k < out.records.size(); ++k) {
    const ScanRecord& p = out.records[k - 1];
    const ScanRecord& q = out.records[k];
    if (!p.valid || !q.valid) continue;
    const double dp = p.f1 - p.f2, dq = q.f1 - q.f2;
    if (dp == 0.0) continue;  // counted with the previous interval
    if (dq == 0.0 || (dp < 0) != (dq < 0))
      out.brackets.push_back({p.c, q.c, p.admissible_hint && q.admissible_hint});
  }
  return out;
}

namespace {

template <typename Real>
PeriodValues<Real> periods_at(const Real& a, const Real& c, const CanonicalPaths<Real>& paths,
                              const IntegratorConfig& cfg) {
  return period_functions(half_path_frames<Real>({a, c}, paths.c1, paths.c2, cfg));
}

}  // namespace

template <typename Real>
RootResult<Real> refine_root(const Real& a, const Real& lo, const Real& hi, const Real& tol_c,
                             const IntegratorConfig& cfg) {
  using std::abs;
  CurveParams<Real>{a, Real(1)}.validate();
  if (lo <= Real(0) && hi >= Real(0)) throw DomainError("bracket must not contain c = 0");
  const auto paths = canonical_paths<Real>(a);
  auto g = [&](const Real& c) {
    const auto pv = periods_at(a, c, paths, cfg);
    return pv.f1 - pv.f2;
  };
  BracketRoot<Real> r;
  try {
    r = refine_bracket<Real>(g, lo, hi, tol_c);
  } catch (const DegenerateDenominator&) {
    const Real mid = lo + (hi - lo) / Real(2);
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    return {mid, nan, nan, nan, RootKind::Pole, 0};
  }
  PeriodValues<Real> pv{};
  try {
    pv = periods_at(a, r.x, paths, cfg);
  } catch (const DegenerateDenominator&) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    return {r.x, nan, nan, nan, RootKind::Pole, r.evaluations};
  }
  return {r.x, (pv.f1 + pv.f2) / Real(2), pv.f1, pv.f2, r.kind, r.evaluations + 1};
}

RootResult<Quad> polish_root(const Quad& a, double c0, const IntegratorConfig& cfg) {
  using std::abs;
  const auto paths = canonical_paths<Quad>(a);
  auto g = [&](const Quad& c) {
    const auto pv = periods_at(a, c, paths, cfg);
    return pv.f1 - pv.f2;
  };
  const Quad center(c0);
  const Quad scale = std::max(Quad(1), Quad(abs(center)));
  // The double-precision root is good to ~1e-9; widen until the sign change is caught.
  for (double delta = 1e-8; delta <= 1e-3; delta *= 10) {
    const Quad lo = center - Quad(delta) * scale, hi = center + Quad(delta) * scale;
    const Quad glo = g(lo), ghi = g(hi);
    if ((glo < 0) == (ghi < 0) && glo != 0 && ghi != 0) continue;
    const auto r = refine_bracket<Quad>(g, lo, hi, Quad(1e-26) * scale);
    const auto pv = periods_at(a, r.x, paths, cfg);
    return {r.x, (pv.f1 + pv.f2) / Quad(2), pv.f1, pv.f2, r.kind, r.evaluations + 3};
  }
  throw LostBracket("quad polish lost the sign change near c = " + std::to_string(c0));
}

template <typename Real>
GaugeSolution<Real> solve_gauge(const Real& f) {
  using std::abs;
  using std::sqrt;
  if (!(abs(f) > Real(1)))
    throw NotAdmissible("|f| = " + std::to_string(to_double(Real(abs(f)))) +
                        " <= 1: no SU(1,1) gauge exists");
  const int eps = f > Real(0) ? 1 : -1;
  const Real ef = Real(eps) * f;
  const Real b = (ef - Real(1)) / (Real(4) * (ef + Real(1)));
  const Real beta = sqrt(sqrt(b));
  const Real alpha = -Real(eps) / (Real(2) * beta);
  const Complex<Real> A(alpha), EB(Real(eps) * beta);
  return {eps, beta, alpha, mat2<Real>(A, EB, A, -EB)};
}

template <typename Real>
PeriodSolution<Real> verify_solution(const Real& a, const Real& c, const Mat2<Real>& P,
                                     const IntegratorConfig& cfg, double tol_su11) {
  using std::abs;
  CurveParams<Real> params{a, c};
  params.validate();
  params.require_nonzero_c();
  if (abs(det2<Real>(P) - Real(1)) > Real(kTolDet)) throw DomainError("gauge P must have determinant 1");

  const auto h = half_path_frames(params, cfg);
  const auto triple = assemble_monodromies(h);
  const Mat2<Real> Pinv = inverse2<Real>(P);

  PeriodSolution<Real> sol;
  sol.a = a;
  sol.c = c;
  sol.P = P;
  sol.integrator = cfg;
  sol.su11_residual = Real(0);
  int worst = 1;
  for (int j = 1; j <= 3; ++j) {
    sol.loop_residuals[j - 1] = su11_distance<Real>(Mat2<Real>(Pinv * triple[j] * P));
    if (sol.loop_residuals[j - 1] > sol.su11_residual) {
      sol.su11_residual = sol.loop_residuals[j - 1];
      worst = j;
    }
  }
  if (!(sol.su11_residual <= Real(tol_su11)))
    throw VerificationFailed(worst, to_double(sol.su11_residual),
                             "P^-1 Phi" + std::to_string(worst) + " P is not in SU(1,1): residual " +
                                 std::to_string(to_double(sol.su11_residual)));

  const auto pv = period_functions(h);
  sol.f1 = pv.f1;
  sol.f2 = pv.f2;
  sol.f = (pv.f1 + pv.f2) / Real(2);
  sol.epsilon = sol.f > Real(0) ? 1 : -1;
  sol.alpha = P(0, 0).real();
  sol.beta = abs(P(0, 1));

  const auto plus = end_loop_check(a, c, 1, cfg);
  const auto minus = end_loop_check(a, c, -1, cfg);
  sol.end = plus;
  sol.end.eigenvalue_mismatch = std::max(plus.eigenvalue_mismatch, minus.eigenvalue_mismatch);
  return sol;
}

PeriodSolution<Quad> solve_period(double a, double c_lo, double c_hi, const SolveOptions& opts) {
  const auto root = refine_root<double>(a, c_lo, c_hi, opts.tol_c, opts.scan_cfg);
  if (root.kind == RootKind::Pole)
    throw NotAdmissible("bracket [" + std::to_string(c_lo) + ", " + std::to_string(c_hi) +
                        "] holds a pole of f1 or f2, not a crossing");
  if (!(std::abs(root.f) > 1.0))
    throw NotAdmissible("crossing at c = " + std::to_string(root.c) + " has |f| = " +
                        std::to_string(std::abs(root.f)) + " <= 1");
  const auto polished = polish_root(Quad(a), root.c, opts.verify_cfg);
  const auto gauge = solve_gauge<Quad>(polished.f);
  auto sol = verify_solution<Quad>(Quad(a), polished.c, gauge.P, opts.verify_cfg, opts.tol_su11);
  sol.epsilon = gauge.epsilon;
  sol.alpha = gauge.alpha;
  sol.beta = gauge.beta;
  return sol;
}

PeriodSolution<Quad> solve_near(double a, double c_guess, const SolveOptions& opts) {
  CurveParams<double>{a, c_guess}.validate();
  CurveParams<double>{a, c_guess}.require_nonzero_c();
  const auto paths = canonical_paths<double>(a);
  auto g = [&](double c) {
    const auto pv = periods_at(a, c, paths, opts.scan_cfg);
    return pv.f1 - pv.f2;
  };
  const double scale = std::max(1.0, std::abs(c_guess));
  for (double delta = 1e-6; delta <= 2e-2; delta *= 2) {
    const double lo = c_guess - delta * scale, hi = c_guess + delta * scale;
    if (lo <= 0.0 && hi >= 0.0) break;
    double glo, ghi;
    try {
      glo = g(lo);
      ghi = g(hi);
    } catch (const DegenerateDenominator&) {
      continue;
    }
    if (glo == 0.0 || ghi == 0.0 || (glo < 0) != (ghi < 0)) return solve_period(a, lo, hi, opts);
  }
  throw NotAdmissible("no sign change of f1 - f2 near c = " + std::to_string(c_guess));
}

#define DSCMC_INSTANTIATE_PERIOD(R)                                                              \
  template RootResult<R> refine_root<R>(const R&, const R&, const R&, const R&,                 \
                                        const IntegratorConfig&);                               \
  template GaugeSolution<R> solve_gauge<R>(const R&);                                           \
  template PeriodSolution<R> verify_solution<R>(const R&, const R&, const Mat2<R>&,             \
                                                const IntegratorConfig&, double);

DSCMC_INSTANTIATE_PERIOD(double)
DSCMC_INSTANTIATE_PERIOD(Quad)

}  // namespace dscmc
