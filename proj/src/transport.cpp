#include "dscmc/transport.hpp"

#include <cmath>

#include "dscmc/errors.hpp"

namespace dscmc {

template <typename Real>
Mat2<Real> alpha_matrix(const CurvePoint<Real>& p, const Real& c) {
  using std::abs;
  using std::isfinite;
  using boost::multiprecision::isfinite;
  if (p.w == Complex<Real>(0) || !isfinite(abs(p.w)))
    throw DomainError("alpha is singular where w = 0 or w = infinity");
  return mat2<Real>(Complex<Real>(c), -c * p.w, c / p.w, -Complex<Real>(c));
}

template <typename Real>
FrameTransport<Real>::FrameTransport(PathSpec<Real> path, CurveParams<Real> params,
                                     const Mat2<Real>& F0, IntegratorConfig cfg)
    : path_(std::move(path)), params_(params), cfg_(cfg), ctl_{Real(cfg.initial_step)} {
  using std::abs;
  params_.validate();
  cfg_.validate();
  validate_path(path_, params_.a);
  if (abs(det2<Real>(F0) - Real(1)) > Real(kTolDet))
    throw DomainError("initial frame must have determinant 1");
  cumulative_.push_back(Real(0));
  for (std::size_t i = 1; i < path_.waypoints.size(); ++i)
    cumulative_.push_back(cumulative_.back() + Real(abs(path_.waypoints[i] - path_.waypoints[i - 1])));
  total_ = cumulative_.back();
  y_ << F0(0, 0), F0(0, 1), F0(1, 0), F0(1, 1), path_.start.w;
  state_ = FrameState<Real>{path_.start, F0, Real(0), Real(abs(det2<Real>(F0) - Real(1))), 0};
}

template <typename Real>
const FrameState<Real>& FrameTransport<Real>::advance_to(const Real& arc_param) {
  using std::abs;
  const Real target_t = std::clamp(arc_param, Real(0), Real(1));
  if (target_t < state_.arc_param) throw DomainError("FrameTransport cannot move backwards");
  const Real target_s = target_t * total_;
  const Real c = params_.c;
  const Real a = params_.a;

  while (segment_ < path_.waypoints.size()) {
    const Complex<Real> z0 = path_.waypoints[segment_ - 1];
    const Complex<Real> dz = path_.waypoints[segment_] - z0;
    const Real len = cumulative_[segment_] - cumulative_[segment_ - 1];
    const bool whole = target_s >= cumulative_[segment_] || target_t == Real(1);
    const Real stop = whole ? len : target_s - cumulative_[segment_ - 1];
    if (len > Real(0) && stop > s_in_segment_) {
      const Complex<Real> u = dz / len;
      auto rhs = [&](const Real& s, const State& st) {
        const Complex<Real> z = z0 + u * s;
        const Complex<Real> w = st(4);
        const Complex<Real> cu = c * u;
        State d;
        const Complex<Real> r1 = cu * (st(0) - w * st(2));
        const Complex<Real> r2 = cu * (st(1) - w * st(3));
        d(0) = r1;
        d(1) = r2;
        d(2) = r1 / w;
        d(3) = r2 / w;
        const Complex<Real> z2 = z * z;
        d(4) = w * (-Real(1) / (z2 - Real(1)) + a / (z2 - a * a)) * u;
        return d;
      };
      auto check = [&](const Real& s, const State& st) {
        const CurvePoint<Real> p{z0 + u * s, st(4)};
        if (sheet_residual(p, a) > Real(kSheetTol))
          throw ContinuationError("sheet residual exceeded tolerance along path");
        const Complex<Real> det = st(0) * st(3) - st(1) * st(2);
        state_.det_drift = std::max(state_.det_drift, Real(abs(det - Real(1))));
      };
      integrate_interval<Real, 5>(rhs, y_, s_in_segment_, stop, ctl_, cfg_, check);
      s_in_segment_ = stop;
    }
    if (!whole) break;
    ++segment_;
    s_in_segment_ = Real(0);
  }

  const Complex<Real> z =
      segment_ < path_.waypoints.size()
          ? path_.waypoints[segment_ - 1] +
                (path_.waypoints[segment_] - path_.waypoints[segment_ - 1]) *
                    (s_in_segment_ / std::max(cumulative_[segment_] - cumulative_[segment_ - 1],
                                              std::numeric_limits<Real>::min()))
          : path_.waypoints.back();
  state_.point = {z, y_(4)};
  state_.F = mat2<Real>(y_(0), y_(1), y_(2), y_(3));
  state_.arc_param = target_t;
  state_.steps = ctl_.steps;
  return state_;
}

template <typename Real>
FrameState<Real> integrate_frame(const PathSpec<Real>& path, const CurveParams<Real>& params,
                                 const Mat2<Real>& F0, const IntegratorConfig& cfg) {
  FrameTransport<Real> transport(path, params, F0, cfg);
  return transport.finish();
}

template <typename Real>
std::vector<FrameState<Real>> integrate_frame_sampled(const PathSpec<Real>& path,
                                                      const CurveParams<Real>& params,
                                                      const Mat2<Real>& F0,
                                                      const std::vector<Real>& ts,
                                                      const IntegratorConfig& cfg) {
  FrameTransport<Real> transport(path, params, F0, cfg);
  std::vector<FrameState<Real>> out;
  out.reserve(ts.size());
  for (const Real& t : ts) out.push_back(transport.advance_to(t));
  return out;
}

template <typename Real>
Real scalar_ode_residual(const PathSpec<Real>& path, const CurveParams<Real>& params, int samples,
                         const IntegratorConfig& cfg) {
  using std::abs;
  if (samples < 2) throw DomainError("scalar_ode_residual needs at least two samples");
  std::vector<Real> ts;
  for (int k = 0; k < samples; ++k) ts.push_back(Real(k) / Real(samples - 1));
  const auto states = integrate_frame_sampled(path, params, identity2<Real>(), ts, cfg);
  const Real c = params.c;
  Real worst(0);
  for (const auto& st : states) {
    const Complex<Real> w = st.point.w;
    const Complex<Real> L = log_derivative(st.point.z, params.a);
    const Complex<Real> wp = w * L;
    const Mat2<Real> alpha = alpha_matrix(st.point, c);
    const Mat2<Real> alpha_prime =
        mat2<Real>(Complex<Real>(0), -c * wp, -c * wp / (w * w), Complex<Real>(0));
    const Mat2<Real> d1 = alpha * st.F;
    // F'' = (alpha' + alpha^2) F and alpha is nilpotent.
    const Mat2<Real> d2 = alpha_prime * st.F;
    for (int j = 0; j < 2; ++j) {
      const Complex<Real> r1 = d2(0, j) - L * d1(0, j) + c * L * st.F(0, j);
      const Complex<Real> r2 = d2(1, j) + L * d1(1, j) + c * L * st.F(1, j);
      worst = std::max(worst, Real(abs(r1)) / std::max(Real(1), Real(abs(d2(0, j)))));
      worst = std::max(worst, Real(abs(r2)) / std::max(Real(1), Real(abs(d2(1, j)))));
    }
  }
  return worst;
}

#define DSCMC_INSTANTIATE_TRANSPORT(R)                                                           \
  template Mat2<R> alpha_matrix<R>(const CurvePoint<R>&, const R&);                              \
  template class FrameTransport<R>;                                                              \
  template FrameState<R> integrate_frame<R>(const PathSpec<R>&, const CurveParams<R>&,           \
                                            const Mat2<R>&, const IntegratorConfig&);            \
  template std::vector<FrameState<R>> integrate_frame_sampled<R>(                                \
      const PathSpec<R>&, const CurveParams<R>&, const Mat2<R>&, const std::vector<R>&,          \
      const IntegratorConfig&);                                                                  \
  template R scalar_ode_residual<R>(const PathSpec<R>&, const CurveParams<R>&, int,              \
                                    const IntegratorConfig&);

DSCMC_INSTANTIATE_TRANSPORT(double)
DSCMC_INSTANTIATE_TRANSPORT(Quad)

}  // namespace dscmc
