#pragma once

// Test-side reference integrator: classical RK4 with a fixed step along a
// polyline, for the joint system w' = w L(z), F' = c [[1, -w], [1/w, -1]] F.
// Written independently of the library's adaptive integrators.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace ref {

using cd = std::complex<double>;

struct State {
  cd w;
  std::array<cd, 4> F;  // row-major
};

inline cd log_deriv(cd z, double a) {
  return 0.5 * (1.0 / (z + 1.0) + 1.0 / (z - a) - 1.0 / (z - 1.0) - 1.0 / (z + a));
}

inline State rhs(const State& s, cd z, cd dz, double a, double c) {
  const cd w = s.w;
  const cd m11 = c, m12 = -c * w, m21 = c / w, m22 = -c;
  State d;
  d.w = w * log_deriv(z, a) * dz;
  d.F[0] = (m11 * s.F[0] + m12 * s.F[2]) * dz;
  d.F[1] = (m11 * s.F[1] + m12 * s.F[3]) * dz;
  d.F[2] = (m21 * s.F[0] + m22 * s.F[2]) * dz;
  d.F[3] = (m21 * s.F[1] + m22 * s.F[3]) * dz;
  return d;
}

inline State axpy(const State& s, double h, const State& d) {
  State o;
  o.w = s.w + h * d.w;
  for (int k = 0; k < 4; ++k) o.F[k] = s.F[k] + h * d.F[k];
  return o;
}

/// Integrates along the polyline `pts` with `steps_per_unit` RK4 steps per unit length.
inline State integrate(const std::vector<cd>& pts, cd w0, std::array<cd, 4> F0, double a, double c,
                       int steps_per_unit) {
  State s{w0, F0};
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const cd z0 = pts[k - 1], dz = pts[k] - pts[k - 1];
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(dz) * steps_per_unit)));
    const double h = 1.0 / n;
    for (int j = 0; j < n; ++j) {
      const double t = j * h;
      const State k1 = rhs(s, z0 + t * dz, dz, a, c);
      const State k2 = rhs(axpy(s, h / 2, k1), z0 + (t + h / 2) * dz, dz, a, c);
      const State k3 = rhs(axpy(s, h / 2, k2), z0 + (t + h / 2) * dz, dz, a, c);
      const State k4 = rhs(axpy(s, h, k3), z0 + (t + h) * dz, dz, a, c);
      for (int q = 0; q < 5; ++q) {
        auto& y = q == 4 ? s.w : s.F[q];
        const cd d1 = q == 4 ? k1.w : k1.F[q], d2 = q == 4 ? k2.w : k2.F[q];
        const cd d3 = q == 4 ? k3.w : k3.F[q], d4 = q == 4 ? k4.w : k4.F[q];
        y += h / 6 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
      }
    }
  }
  return s;
}

inline std::array<cd, 4> identity() { return {1.0, 0.0, 0.0, 1.0}; }

}  // namespace ref
