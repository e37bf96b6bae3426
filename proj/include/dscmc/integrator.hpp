#pragma once

// Adaptive one-step integrators for complex-valued ODE systems y' = f(s, y)
// over a real parameter s. Two schemes:
//   * Dormand-Prince 5(4) with FSAL and PI-free step control (default);
//   * Gragg-Bulirsch-Stoer extrapolation of the modified midpoint rule, used
//     for extended-precision runs where a fixed-order pair would need far too
//     many steps.
// All coefficients are rational so the schemes keep their order in any Real.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "dscmc/errors.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

enum class Method { DormandPrince54, Extrapolation };

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 2'000'000;
  double initial_step = 1e-2;
  Method method = Method::DormandPrince54;

  /// Double-precision defaults: DP5(4), rel 1e-10, abs 1e-12.
  static IntegratorConfig standard() { return {}; }

  /// Quad-precision defaults used for root polishing and verification.
  static IntegratorConfig extended() {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-28;
    cfg.abs_tol = 1e-30;
    cfg.initial_step = 5e-2;
    cfg.method = Method::Extrapolation;
    return cfg;
  }

  template <typename Real>
  static IntegratorConfig defaults_for() {
    if constexpr (std::numeric_limits<Real>::digits > 64) {
      return extended();
    } else {
      return standard();
    }
  }

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw DomainError("integrator tolerances must be positive");
    if (max_steps <= 0) throw DomainError("max_steps must be positive");
    if (!(initial_step > 0)) throw DomainError("initial_step must be positive");
  }
};

template <typename Real, int N>
using StateVec = Eigen::Matrix<Complex<Real>, N, 1>;

namespace detail {

template <typename Real, int N>
Real error_norm(const StateVec<Real, N>& err, const StateVec<Real, N>& y0,
                const StateVec<Real, N>& y1, const IntegratorConfig& cfg) {
  using std::abs;
  const Real atol(cfg.abs_tol);
  const Real rtol(cfg.rel_tol);
  Real worst(0);
  for (int i = 0; i < N; ++i) {
    const Real scale = atol + rtol * std::max(Real(abs(y0(i))), Real(abs(y1(i))));
    worst = std::max(worst, Real(abs(err(i))) / scale);
  }
  return worst;
}

template <typename Real, int N>
bool all_finite(const StateVec<Real, N>& y) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  for (int i = 0; i < N; ++i)
    if (!isfinite(y(i).real()) || !isfinite(y(i).imag())) return false;
  return true;
}

template <typename Real>
Real rat(long num, long den) {
  return Real(num) / Real(den);
}

}  // namespace detail

/// Bookkeeping shared by consecutive integrate_interval calls along one path.
template <typename Real>
struct StepControl {
  Real h;
  long steps = 0;
  long rejected = 0;
  int column = 4;  // extrapolation: column that converged last step
};

/// Dormand-Prince 5(4) over [s0, s1]. `on_accept(s, y)` runs after each accepted
/// step and may throw to abort.
template <typename Real, int N, typename Rhs, typename Observer>
void integrate_dp54(Rhs&& rhs, StateVec<Real, N>& y, Real s0, Real s1, StepControl<Real>& ctl,
                    const IntegratorConfig& cfg, Observer&& on_accept) {
  using detail::rat;
  using std::abs;
  using std::pow;
  using State = StateVec<Real, N>;

  const Real c2 = rat<Real>(1, 5), c3 = rat<Real>(3, 10), c4 = rat<Real>(4, 5), c5 = rat<Real>(8, 9);
  const Real a21 = rat<Real>(1, 5);
  const Real a31 = rat<Real>(3, 40), a32 = rat<Real>(9, 40);
  const Real a41 = rat<Real>(44, 45), a42 = rat<Real>(-56, 15), a43 = rat<Real>(32, 9);
  const Real a51 = rat<Real>(19372, 6561), a52 = rat<Real>(-25360, 2187),
             a53 = rat<Real>(64448, 6561), a54 = rat<Real>(-212, 729);
  const Real a61 = rat<Real>(9017, 3168), a62 = rat<Real>(-355, 33), a63 = rat<Real>(46732, 5247),
             a64 = rat<Real>(49, 176), a65 = rat<Real>(-5103, 18656);
  const Real b1 = rat<Real>(35, 384), b3 = rat<Real>(500, 1113), b4 = rat<Real>(125, 192),
             b5 = rat<Real>(-2187, 6784), b6 = rat<Real>(11, 84);
  const Real e1 = rat<Real>(71, 57600), e3 = rat<Real>(-71, 16695), e4 = rat<Real>(71, 1920),
             e5 = rat<Real>(-17253, 339200), e6 = rat<Real>(22, 525), e7 = rat<Real>(-1, 40);

  const Real span = s1 - s0;
  if (span <= Real(0)) return;
  Real s = s0;
  State k1 = rhs(s, y);
  while (s < s1) {
    if (ctl.steps >= cfg.max_steps)
      throw StepLimitExceeded("step limit " + std::to_string(cfg.max_steps) + " exceeded");
    Real h = std::min(ctl.h, s1 - s);
    const bool last = (h >= s1 - s);
    if (h < span * Real(1e-14) && !last) throw StepLimitExceeded("step size underflow");

    const State k2 = rhs(s + c2 * h, State(y + h * (a21 * k1)));
    const State k3 = rhs(s + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
    const State k4 = rhs(s + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 = rhs(s + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 =
        rhs(s + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Real s_new = last ? s1 : s + h;
    const State k7 = rhs(s_new, y_new);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    Real en = detail::error_norm<Real, N>(err, y, y_new, cfg);
    if (!detail::all_finite<Real, N>(y_new)) en = Real(1e10);
    if (en <= Real(1)) {
      y = y_new;
      s = s_new;
      k1 = k7;
      ++ctl.steps;
      on_accept(s, y);
      Real fac = en > Real(0) ? Real(0.9) * pow(en, Real(-0.2)) : Real(5);
      fac = std::clamp(fac, Real(0.2), Real(5));
      if (!last) ctl.h = h * fac;
      else ctl.h = std::max(ctl.h, h * fac);
    } else {
      ++ctl.rejected;
      Real fac = Real(0.9) * pow(en, Real(-0.2));
      fac = std::clamp(fac, Real(0.1), Real(0.9));
      ctl.h = h * fac;
      if (ctl.rejected > cfg.max_steps)
        throw StepLimitExceeded("too many rejected steps");
    }
  }
}

/// Gragg-Bulirsch-Stoer extrapolation over [s0, s1], step sequence n_j = 2j.
template <typename Real, int N, typename Rhs, typename Observer>
void integrate_gbs(Rhs&& rhs, StateVec<Real, N>& y, Real s0, Real s1, StepControl<Real>& ctl,
                   const IntegratorConfig& cfg, Observer&& on_accept) {
  using std::abs;
  using std::pow;
  using State = StateVec<Real, N>;
  constexpr int kColumns = 16;

  const Real span = s1 - s0;
  if (span <= Real(0)) return;
  std::array<int, kColumns> seq{};
  for (int j = 0; j < kColumns; ++j) seq[j] = 2 * (j + 1);

  std::array<State, kColumns> table;
  Real s = s0;
  while (s < s1) {
    if (ctl.steps >= cfg.max_steps)
      throw StepLimitExceeded("step limit " + std::to_string(cfg.max_steps) + " exceeded");
    Real H = std::min(ctl.h, s1 - s);
    const bool last = (H >= s1 - s);
    if (H < span * Real(1e-14) && !last) throw StepLimitExceeded("step size underflow");

    const State f0 = rhs(s, y);
    bool accepted = false;
    Real next_h = H;
    for (int j = 0; j < kColumns; ++j) {
      const int n = seq[j];
      const Real h = H / Real(n);
      State z_prev = y;
      State z = y + h * f0;
      for (int m = 1; m < n; ++m) {
        State z_next = z_prev + Real(2) * h * rhs(s + Real(m) * h, z);
        z_prev = z;
        z = z_next;
      }
      // table[k] holds T_{j-1,k}; overwrite with row j, extrapolating in h^2.
      State cur = (z_prev + z + h * rhs(s + H, z)) / Real(2);
      for (int k = 1; k <= j; ++k) {
        const Real ratio = Real(seq[j]) / Real(seq[j - k]);
        State nxt = cur + (cur - table[k - 1]) / (ratio * ratio - Real(1));
        table[k - 1] = cur;
        cur = nxt;
      }
      table[j] = cur;
      if (j < 2) continue;
      const State diff = table[j] - table[j - 1];
      Real en = detail::error_norm<Real, N>(diff, y, table[j], cfg);
      if (!detail::all_finite<Real, N>(table[j])) en = Real(1e10);
      const Real expo = Real(1) / Real(2 * j + 1);
      Real fac = en > Real(0) ? Real(0.94) * pow(Real(0.65) / en, expo) : Real(4);
      fac = std::clamp(fac, Real(0.02), Real(4));
      if (en <= Real(1)) {
        y = table[j];
        s = last ? s1 : s + H;
        ++ctl.steps;
        on_accept(s, y);
        // Aim the next step at the same column.
        next_h = H * fac;
        if (j > ctl.column + 1) next_h = std::min(next_h, H);
        ctl.column = j;
        accepted = true;
        break;
      }
      if (j == kColumns - 1) next_h = H * std::min(fac, Real(0.5));
    }
    if (accepted) {
      if (!last) ctl.h = next_h;
      else ctl.h = std::max(ctl.h, next_h);
    } else {
      ++ctl.rejected;
      ctl.h = next_h;
      if (ctl.rejected > cfg.max_steps) throw StepLimitExceeded("too many rejected steps");
    }
  }
}

template <typename Real, int N, typename Rhs, typename Observer>
void integrate_interval(Rhs&& rhs, StateVec<Real, N>& y, Real s0, Real s1, StepControl<Real>& ctl,
                        const IntegratorConfig& cfg, Observer&& on_accept) {
  if (cfg.method == Method::Extrapolation)
    integrate_gbs<Real, N>(rhs, y, s0, s1, ctl, cfg, on_accept);
  else
    integrate_dp54<Real, N>(rhs, y, s0, s1, ctl, cfg, on_accept);
}

}  // namespace dscmc
