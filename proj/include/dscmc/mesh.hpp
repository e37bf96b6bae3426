#pragma once

// Sampling the face over M. Each sheet of M is covered by a polar grid around
// its point over z = 0; the upper and lower half-planes are reached by a spine
// along the imaginary axis followed by circular arcs, so every node frame is
// continued inside a simply connected half-sheet. Half-sheets are glued across
// the real axis where the sheets actually meet.

#include <array>
#include <vector>

#include "dscmc/geometry.hpp"

namespace dscmc {

/// Nodes closer than this to a branch point are left out of the mesh.
inline constexpr double kMeshExclusion = 0.2;

enum class MeshTraversal {
  Arcs,  // spine then arcs (default)
  Rays   // straight rays from the sheet center where they keep clear of the branch points
};

struct MeshOptions {
  int nu = 16;  // radial rings
  int nv = 16;  // angular nodes per ring (even, >= 4)
  double r_max_factor = 12.0;  // outer radius = factor * a
  MeshTraversal traversal = MeshTraversal::Arcs;
  double exclusion = kMeshExclusion;
  double tol_sing = kTolSingular;
};

template <typename Real>
struct SurfaceSample {
  CurvePoint<Real> param;
  int sheet;  // +1 for the sheet through (0, 1), -1 through (0, -1)
  int ring;   // 0 for the center
  int slot;   // angular index (0 at the center)
  Mat2<Real> F;
  MinkowskiPoint<Real> X;
  HollowBallPoint<Real> Y;
  Real g_abs;  // +inf allowed
  bool singular;
};

template <typename Real>
struct SurfaceMesh {
  std::vector<SurfaceSample<Real>> samples;
  /// Faces with all vertices on one side of |g| = 1.
  std::vector<std::array<int, 3>> triangles;
  /// Every face between emitted samples, including those crossing |g| = 1.
  std::vector<std::array<int, 3>> all_triangles;
  int holes = 0;  // nodes inside the excluded disks or lost to integration failures
  double r_max = 0;
};

template <typename Real>
SurfaceMesh<Real> build_mesh(const PeriodSolution<Real>& sol, const MeshOptions& opts = {},
                             const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

using Polyline = std::vector<std::array<double, 3>>;

/// Pieces of the face on the plane y2 = 0, traced through all_triangles.
template <typename Real>
std::vector<Polyline> symmetry_curves(const SurfaceMesh<Real>& mesh);

template <typename Real>
std::vector<Polyline> symmetry_curves(const PeriodSolution<Real>& sol, const MeshOptions& opts = {},
                                      const IntegratorConfig& cfg = IntegratorConfig::defaults_for<Real>());

/// Symmetric Hausdorff distance between two polyline sets (vertex-to-segment).
double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b);

/// Longest edge of `all_triangles` in hollow-ball coordinates.
template <typename Real>
double max_edge_length(const SurfaceMesh<Real>& mesh);

}  // namespace dscmc
