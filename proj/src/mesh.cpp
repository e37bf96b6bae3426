#include "dscmc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "dscmc/errors.hpp"
#include "dscmc/transport.hpp"

namespace dscmc {

namespace {

/// Largest angular step whose chord stays within `sagitta` of the circle.
double arc_step(double radius, double sagitta = 0.005) {
  if (radius <= sagitta) return 0.1;
  return std::min(0.1, 2.0 * std::acos(1.0 - sagitta / radius));
}

/// F / sqrt(det F): removes the determinant drift before a frame seeds new paths.
template <typename Real>
Mat2<Real> unimodular(const Mat2<Real>& F) {
  using std::sqrt;
  return F / sqrt(det2<Real>(F));
}

template <typename Real>
class MeshBuilder {
 public:
  MeshBuilder(const PeriodSolution<Real>& sol, const MeshOptions& opts, const IntegratorConfig& cfg)
      : sol_(sol), opts_(opts), cfg_(cfg), params_{sol.a, sol.c} {
    if (opts.nu < 2) throw DomainError("mesh needs nu >= 2");
    if (opts.nv < 4 || opts.nv % 2 != 0) throw DomainError("mesh needs an even nv >= 4");
    if (!(opts.r_max_factor > 1.0)) throw DomainError("r_max_factor must exceed 1");
    a_ = to_double(sol.a);
    r_max_ = opts.r_max_factor * a_;
    for (int i = 1; i <= opts.nu; ++i)
      radii_.push_back(std::expm1(std::log1p(r_max_) * i / opts.nu));
    for (int j = 0; j < opts.nv; ++j) thetas_.push_back(2.0 * M_PI * (j + 0.5) / opts.nv);
    for (auto& sheet : index_) sheet.assign(static_cast<std::size_t>((opts.nu + 1) * opts.nv), -1);
  }

  SurfaceMesh<Real> run() {
    mesh_.r_max = r_max_;
    const auto paths = canonical_paths<Real>(sol_.a);
    // Sheet +: F = P at (0, 1). Sheet -: continue P around z = 1 to (0, -1).
    centers_[0] = {base_point<Real>(), sol_.P};
    PathSpec<Real> to_lower = paths.gamma1;
    to_lower.waypoints.resize(5);
    to_lower.closed = false;
    const auto st = integrate_frame(to_lower, params_, sol_.P, cfg_);
    centers_[1] = {st.point, unimodular(st.F)};

    for (int s = 0; s < 2; ++s) {
      add_sample(s, 0, 0, centers_[s].first, centers_[s].second);
      for (int half = 0; half < 2; ++half) fill_half(s, half);
    }
    triangulate();
    return std::move(mesh_);
  }

 private:
  using Node = std::pair<CurvePoint<Real>, Mat2<Real>>;

  int& slot(int s, int ring, int j) { return index_[s][static_cast<std::size_t>(ring * opts_.nv + j)]; }

  bool excluded(const Complex<Real>& z) const {
    return to_double(branch_distance(z, sol_.a)) < opts_.exclusion;
  }

  Complex<Real> node_z(int ring, int j) const {
    const double r = radii_[ring - 1];
    return Complex<Real>(Real(r * std::cos(thetas_[j])), Real(r * std::sin(thetas_[j])));
  }

  void add_sample(int s, int ring, int j, const CurvePoint<Real>& p, const Mat2<Real>& F) {
    using std::abs;
    SurfaceSample<Real> smp;
    smp.param = p;
    smp.sheet = s == 0 ? 1 : -1;
    smp.ring = ring;
    smp.slot = j;
    smp.F = F;
    smp.X = immerse<Real>(F);
    smp.Y = hollow_ball<Real>(smp.X);
    const Complex<Real> g = secondary_gauss<Real>(F, p, sol_.c);
    smp.g_abs = is_infinite<Real>(g) ? std::numeric_limits<Real>::infinity() : Real(abs(g));
    smp.singular = is_infinite<Real>(g) ? false : abs(smp.g_abs - Real(1)) < Real(opts_.tol_sing);
    slot(s, ring, j) = static_cast<int>(mesh_.samples.size());
    mesh_.samples.push_back(smp);
  }

  /// Nodes of one half-plane (upper: theta in (0, pi)), ordered outward from the spine.
  std::pair<std::vector<int>, std::vector<int>> half_slots(int half) const {
    const double spine = half == 0 ? M_PI / 2 : 3 * M_PI / 2;
    std::vector<int> down, up;
    for (int j = 0; j < opts_.nv; ++j) {
      const bool in_half = half == 0 ? j < opts_.nv / 2 : j >= opts_.nv / 2;
      if (!in_half) continue;
      (thetas_[j] < spine ? down : up).push_back(j);
    }
    std::reverse(down.begin(), down.end());
    return {down, up};
  }

  void fill_half(int s, int half) {
    const auto [down, up] = half_slots(half);
    const Node& center = centers_[s];
    if (opts_.traversal == MeshTraversal::Rays) {
      for (int ring = 1; ring <= opts_.nu; ++ring)
        for (const auto& list : {down, up})
          for (int j : list) ray_node(s, ring, j, center);
    }
    const double spine_angle = half == 0 ? M_PI / 2 : 3 * M_PI / 2;
    const Complex<Real> dir = half == 0 ? imag_unit<Real>() : -imag_unit<Real>();
    PathSpec<Real> spine;
    spine.start = center.first;
    spine.waypoints.push_back(Complex<Real>(0));
    for (double r : radii_) spine.waypoints.push_back(dir * Real(r));
    std::vector<Real> ts;
    for (double r : radii_) ts.push_back(Real(r / r_max_));
    ts.back() = Real(1);
    const auto spine_states = integrate_frame_sampled(spine, params_, center.second, ts, cfg_);
    for (int ring = 1; ring <= opts_.nu; ++ring) {
      const Node start{spine_states[ring - 1].point, unimodular(spine_states[ring - 1].F)};
      arc_nodes(s, ring, spine_angle, down, start);
      arc_nodes(s, ring, spine_angle, up, start);
    }
  }

  void ray_node(int s, int ring, int j, const Node& center) {
    const Complex<Real> z = node_z(ring, j);
    if (excluded(z)) return;
    PathSpec<Real> ray;
    ray.start = center.first;
    ray.waypoints = {Complex<Real>(0), z};
    try {
      validate_path(ray, sol_.a, opts_.exclusion);
      const auto st = integrate_frame(ray, params_, center.second, cfg_);
      add_sample(s, ring, j, st.point, st.F);
    } catch (const Error&) {
      // left to the arc traversal
    }
  }

  void arc_nodes(int s, int ring, double from_angle, const std::vector<int>& slots, const Node& start) {
    if (slots.empty()) return;
    const double r = radii_[ring - 1];
    const double step = arc_step(r);
    PathSpec<Real> arc;
    arc.start = start.first;
    arc.waypoints.push_back(start.first.z);
    std::vector<std::size_t> node_vertex;
    std::vector<int> node_slots;
    double angle = from_angle;
    for (int j : slots) {
      if (excluded(node_z(ring, j))) break;
      const double target = thetas_[j];
      const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(target - angle) / step)));
      for (int k = 1; k <= pieces; ++k) {
        const double t = angle + (target - angle) * k / pieces;
        arc.waypoints.push_back(k == pieces ? node_z(ring, j)
                                            : Complex<Real>(Real(r * std::cos(t)), Real(r * std::sin(t))));
      }
      node_vertex.push_back(arc.waypoints.size() - 1);
      node_slots.push_back(j);
      angle = target;
    }
    mesh_.holes += static_cast<int>(slots.size() - node_slots.size());
    if (node_slots.empty()) return;

    std::vector<Real> cumulative{Real(0)};
    for (std::size_t k = 1; k < arc.waypoints.size(); ++k) {
      using std::abs;
      cumulative.push_back(cumulative.back() + Real(abs(arc.waypoints[k] - arc.waypoints[k - 1])));
    }
    const Real total = cumulative.back();
    std::size_t done = 0;
    try {
      FrameTransport<Real> transport(arc, params_, start.second, cfg_);
      for (; done < node_slots.size(); ++done) {
        const Real t = done + 1 == node_slots.size() ? Real(1) : cumulative[node_vertex[done]] / total;
        const auto& st = transport.advance_to(t);
        if (slot(s, ring, node_slots[done]) < 0) add_sample(s, ring, node_slots[done], st.point, st.F);
      }
    } catch (const Error&) {
      for (; done < node_slots.size(); ++done)
        if (slot(s, ring, node_slots[done]) < 0) ++mesh_.holes;
    }
  }

  void emit(int v0, int v1, int v2) {
    if (v0 < 0 || v1 < 0 || v2 < 0) return;
    const std::array<int, 3> tri{v0, v1, v2};
    mesh_.all_triangles.push_back(tri);
    int above = 0;
    for (int v : tri) above += mesh_.samples[static_cast<std::size_t>(v)].g_abs > Real(1) ? 1 : 0;
    if (above == 0 || above == 3) mesh_.triangles.push_back(tri);
  }

  void quad(int sa, int ja, int sb, int jb, int ring) {
    // ring -> ring + 1 between slot ja (sheet sa) and slot jb (sheet sb)
    if (ring == 0) {
      if (sa != sb) return;
      emit(slot(sa, 0, 0), slot(sa, 1, ja), slot(sb, 1, jb));
      return;
    }
    const int A = slot(sa, ring, ja), B = slot(sa, ring + 1, ja);
    const int C = slot(sb, ring + 1, jb), D = slot(sb, ring, jb);
    emit(A, B, C);
    emit(A, C, D);
  }

  void triangulate() {
    const int nv = opts_.nv;
    for (int s = 0; s < 2; ++s) {
      for (int ring = 0; ring < opts_.nu; ++ring) {
        for (int j = 0; j + 1 < nv; ++j) {
          if (j + 1 == nv / 2) continue;  // crosses the negative real axis
          quad(s, j, s, j + 1, ring);
        }
        // Crossings of the real axis: |x| runs over [r_in, r_out].
        const double r_in = ring == 0 ? 0.0 : radii_[ring - 1];
        const double r_out = radii_[ring];
        int other;
        if (r_out <= 1.0 || r_in >= a_) other = s;
        else if (r_in >= 1.0 && r_out <= a_) other = 1 - s;
        else continue;
        quad(s, nv / 2 - 1, other, nv / 2, ring);  // upper of s to lower of `other`, x < 0
        quad(other, nv - 1, s, 0, ring);           // lower of `other` to upper of s, x > 0
      }
    }
  }

  const PeriodSolution<Real>& sol_;
  MeshOptions opts_;
  IntegratorConfig cfg_;
  CurveParams<Real> params_;
  double a_ = 0;
  double r_max_ = 0;
  std::vector<double> radii_;
  std::vector<double> thetas_;
  std::array<std::vector<int>, 2> index_;
  std::array<Node, 2> centers_;
  SurfaceMesh<Real> mesh_;
};

std::array<double, 3> ball_coords(const HollowBallPoint<double>& y) { return {y.y1, y.y2, y.y3}; }

template <typename Real>
std::array<double, 3> ball_coords(const HollowBallPoint<Real>& y) {
  return {to_double(y.y1), to_double(y.y2), to_double(y.y3)};
}

double dist(const std::array<double, 3>& p, const std::array<double, 3>& q) {
  return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) + (p[2] - q[2]) * (p[2] - q[2]));
}

double point_segment(const std::array<double, 3>& x, const std::array<double, 3>& p,
                     const std::array<double, 3>& q) {
  std::array<double, 3> d{q[0] - p[0], q[1] - p[1], q[2] - p[2]};
  const double len2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
  double t = 0;
  if (len2 > 0) t = std::clamp(((x[0] - p[0]) * d[0] + (x[1] - p[1]) * d[1] + (x[2] - p[2]) * d[2]) / len2, 0.0, 1.0);
  return dist(x, {p[0] + t * d[0], p[1] + t * d[1], p[2] + t * d[2]});
}

double directed_hausdorff(const std::vector<Polyline>& a, const std::vector<Polyline>& b) {
  double worst = 0;
  for (const auto& line : a) {
    for (const auto& x : line) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& other : b) {
        if (other.size() == 1) best = std::min(best, dist(x, other[0]));
        for (std::size_t k = 1; k < other.size(); ++k) best = std::min(best, point_segment(x, other[k - 1], other[k]));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

template <typename Real>
SurfaceMesh<Real> build_mesh(const PeriodSolution<Real>& sol, const MeshOptions& opts, const IntegratorConfig& cfg) {
  return MeshBuilder<Real>(sol, opts, cfg).run();
}

template <typename Real>
std::vector<Polyline> symmetry_curves(const SurfaceMesh<Real>& mesh) {
  // One point per mesh edge on which y2 changes sign; segments join the two such edges of a face.
  std::map<std::pair<int, int>, int> edge_point;
  std::vector<std::array<double, 3>> points;
  std::vector<std::vector<int>> adjacent;
  auto edge = [&](int u, int v) -> int {
    if (u > v) std::swap(u, v);
    const auto key = std::make_pair(u, v);
    if (auto it = edge_point.find(key); it != edge_point.end()) return it->second;
    const auto p = ball_coords(mesh.samples[static_cast<std::size_t>(u)].Y);
    const auto q = ball_coords(mesh.samples[static_cast<std::size_t>(v)].Y);
    const double t = p[1] / (p[1] - q[1]);
    points.push_back({p[0] + t * (q[0] - p[0]), 0.0, p[2] + t * (q[2] - p[2])});
    adjacent.emplace_back();
    edge_point[key] = static_cast<int>(points.size() - 1);
    return static_cast<int>(points.size() - 1);
  };
  auto positive = [&](int v) { return to_double(mesh.samples[static_cast<std::size_t>(v)].Y.y2) >= 0.0; };

  for (const auto& tri : mesh.all_triangles) {
    std::vector<int> hits;
    for (int k = 0; k < 3; ++k) {
      const int u = tri[k], v = tri[(k + 1) % 3];
      if (positive(u) != positive(v)) hits.push_back(edge(u, v));
    }
    if (hits.size() == 2 && hits[0] != hits[1]) {
      adjacent[hits[0]].push_back(hits[1]);
      adjacent[hits[1]].push_back(hits[0]);
    }
  }

  std::vector<Polyline> curves;
  std::vector<bool> used(points.size(), false);
  auto walk = [&](int from) {
    Polyline line{points[from]};
    used[from] = true;
    int cur = from;
    for (;;) {
      int next = -1;
      for (int n : adjacent[cur])
        if (!used[n]) {
          next = n;
          break;
        }
      if (next < 0) break;
      used[next] = true;
      line.push_back(points[next]);
      cur = next;
    }
    return line;
  };
  // Open chains first (start at degree-1 points), then closed loops.
  for (std::size_t p = 0; p < points.size(); ++p)
    if (!used[p] && adjacent[p].size() == 1) curves.push_back(walk(static_cast<int>(p)));
  for (std::size_t p = 0; p < points.size(); ++p)
    if (!used[p] && !adjacent[p].empty()) {
      auto line = walk(static_cast<int>(p));
      line.push_back(line.front());
      curves.push_back(std::move(line));
    }
  return curves;
}

template <typename Real>
std::vector<Polyline> symmetry_curves(const PeriodSolution<Real>& sol, const MeshOptions& opts,
                                      const IntegratorConfig& cfg) {
  return symmetry_curves(build_mesh(sol, opts, cfg));
}

double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

template <typename Real>
double max_edge_length(const SurfaceMesh<Real>& mesh) {
  double worst = 0;
  for (const auto& tri : mesh.all_triangles)
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, dist(ball_coords(mesh.samples[static_cast<std::size_t>(tri[k])].Y),
                                   ball_coords(mesh.samples[static_cast<std::size_t>(tri[(k + 1) % 3])].Y)));
  return worst;
}

#define DSCMC_INSTANTIATE_MESH(R)                                                                \
  template SurfaceMesh<R> build_mesh<R>(const PeriodSolution<R>&, const MeshOptions&,           \
                                        const IntegratorConfig&);                               \
  template std::vector<Polyline> symmetry_curves<R>(const SurfaceMesh<R>&);                     \
  template std::vector<Polyline> symmetry_curves<R>(const PeriodSolution<R>&, const MeshOptions&, \
                                                    const IntegratorConfig&);                   \
  template double max_edge_length<R>(const SurfaceMesh<R>&);

DSCMC_INSTANTIATE_MESH(double)
DSCMC_INSTANTIATE_MESH(Quad)

}  // namespace dscmc
