#pragma once

// Holomorphic null lift F along lifted paths: dF/dz = alpha(z, w) F with
// alpha = c [[1, -w], [1/w, -1]], integrated jointly with w' = w L(z).

#include <vector>

#include "dscmc/curve.hpp"
#include "dscmc/integrator.hpp"
#include "dscmc/linalg2c.hpp"
#include "dscmc/types.hpp"

namespace dscmc {

template <typename Real>
struct FrameState {
  CurvePoint<Real> point;
  Mat2<Real> F;
  Real arc_param;
  /// max |det F - 1| over accepted steps so far.
  Real det_drift;
  long steps;
};

/// Coefficient of dz in alpha for G = w, Q = c dz dw / w.
template <typename Real>
Mat2<Real> alpha_matrix(const CurvePoint<Real>& p, const Real& c);

/// Incremental integration of the frame along one path; advance_to() calls
/// must use nondecreasing arc parameters.
template <typename Real>
class FrameTransport {
 public:
  FrameTransport(PathSpec<Real> path, CurveParams<Real> params, const Mat2<Real>& F0,
                 IntegratorConfig cfg = IntegratorConfig::defaults_for<Real>());

  const FrameState<Real>& state() const { return state_; }
  const FrameState<Real>& advance_to(const Real& arc_param);
  const FrameState<Real>& finish() { return advance_to(Real(1)); }

 private:
  using State = StateVec<Real, 5>;

  PathSpec<Real> path_;
  CurveParams<Real> params_;
  IntegratorConfig cfg_;
  std::vector<Real> cumulative_;  // arc length at each waypoint
  Real total_;
  std::size_t segment_ = 1;
  Real s_in_segment_ = Real(0);
  State y_;
  StepControl<Real> ctl_;
  FrameState<Real> state_;
};

/// Endpoint frame of dF F^{-1} = alpha along `path` from F(start) = F0.
template <typename Real>
FrameState<Real> integrate_frame(const PathSpec<Real>& path, const CurveParams<Real>& params,
                                 const Mat2<Real>& F0,
                                 const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Frames at arc parameters `ts` (sorted ascending) along the path.
template <typename Real>
std::vector<FrameState<Real>> integrate_frame_sampled(
    const PathSpec<Real>& path, const CurveParams<Real>& params, const Mat2<Real>& F0,
    const std::vector<Real>& ts, const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Residual of the second-order equations satisfied by the rows of F:
///   F1j'' - L F1j' + c L F1j = 0,   F2j'' + L F2j' + c L F2j = 0   (L = w'/w),
/// with F' and F'' taken from the first-order system. Maximum over `samples`
/// equally spaced points of |residual| / max(1, |F''|).
template <typename Real>
Real scalar_ode_residual(const PathSpec<Real>& path, const CurveParams<Real>& params, int samples,
                         const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

}  // namespace dscmc
