#pragma once

#include <array>
#include <vector>

#include "pcadv/core.hpp"
#include "pcadv/geometry/vptree.hpp"

namespace pcadv {

inline constexpr real kDegenerateCross = 1e-12;  // squared-area scale cutoff

struct Triangle {
  std::array<Point3, 3> v;
  Point3 normal;  // unit

  Triangle(const Point3& a, const Point3& b, const Point3& c) : v{a, b, c} {
    const Point3 n = (b - a).cross(c - a);
    const real len = n.norm();
    if (len <= kDegenerateCross)
      throw error(errc::degenerate_geometry, "Triangle: collinear vertices");
    normal = n / len;
  }

  real area() const { return 0.5 * (v[1] - v[0]).cross(v[2] - v[0]).norm(); }
  Point3 centroid() const { return (v[0] + v[1] + v[2]) / 3; }
};

struct TriangleMesh {
  std::vector<Triangle> triangles;

  real total_area() const {
    real a = 0;
    for (const auto& t : triangles) a += t.area();
    return a;
  }
};

// Closest point on a triangle by region decomposition: orthogonal projection
// onto the plane, then clipping against each edge (face, edge, and vertex
// regions handled via barycentric signs).
inline Point3 closest_point_on_triangle(const Point3& p, const Triangle& t) {
  const Point3 a = t.v[0], b = t.v[1], c = t.v[2];
  const Point3 ab = b - a, ac = c - a, ap = p - a;

  const real d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;

  const Point3 bp = p - b;
  const real d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;

  const real vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));

  const Point3 cp = p - c;
  const real d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;

  const real vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));

  const real va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const real w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + (c - b) * w;
  }

  const real denom = 1 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

inline real point_triangle_distance(const Point3& p, const Triangle& t) {
  return distance(p, closest_point_on_triangle(p, t));
}

// Spatial index over a mesh: triangles keyed by centroid with enclosing radii.
inline VpTree build_index(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) throw error(errc::empty_input, "build_index: empty mesh");
  std::vector<VpTree::Item> items(mesh.triangles.size());
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    const Point3 c = t.centroid();
    real r = 0;
    for (const auto& q : t.v) r = std::max(r, distance(c, q));
    items[i] = {c, r, static_cast<int>(i)};
  }
  return VpTree::build(std::move(items));
}

inline VpTree build_index(const PointCloud& pts) { return VpTree::over_points(pts); }

// Exact closest mesh point to p, accelerated by the index.
inline Point3 project_to_surface(const Point3& p, const TriangleMesh& mesh, const VpTree& index) {
  real best = std::numeric_limits<real>::infinity();
  Point3 best_point = p;
  index.nearest_by(
      p,
      [&](int id) {
        const Point3 cp = closest_point_on_triangle(p, mesh.triangles[id]);
        const real d = distance(p, cp);
        if (d < best) best_point = cp;
        return d;
      },
      best);
  return best_point;
}

inline Point3 project_to_surface(const Point3& p, const TriangleMesh& mesh) {
  return project_to_surface(p, mesh, build_index(mesh));
}

inline real distance_to_surface(const Point3& p, const TriangleMesh& mesh, const VpTree& index) {
  real best = std::numeric_limits<real>::infinity();
  index.nearest_by(
      p, [&](int id) { return point_triangle_distance(p, mesh.triangles[id]); }, best);
  return best;
}

}  // namespace pcadv
