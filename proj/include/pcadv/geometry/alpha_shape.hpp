#pragma once

#include <map>
#include <vector>

#include "pcadv/core.hpp"
#include "pcadv/geometry/delaunay.hpp"
#include "pcadv/geometry/triangle.hpp"
#include "pcadv/geometry/vptree.hpp"

namespace pcadv {

// Alpha shape over one Delaunay triangulation. Keeps tetrahedra whose
// circumsphere radius is at most alpha and returns the boundary faces (faces
// incident to exactly one kept tetrahedron) with outward unit normals.
// Extraction at several alpha values reuses the triangulation.
class AlphaShapeBuilder {
public:
  explicit AlphaShapeBuilder(const PointCloud& points) {
    DelaunayTriangulator tri(points);
    pts_ = tri.working_points();
    tets_ = tri.tetrahedra();
    radius_.resize(tets_.size());
    for (size_t i = 0; i < tets_.size(); ++i) {
      Point3 c;
      real r2 = 0;
      const auto& t = tets_[i];
      if (!detail::circumsphere(pts_[t[0]], pts_[t[1]], pts_[t[2]], pts_[t[3]], c, r2))
        r2 = std::numeric_limits<real>::infinity();
      radius_[i] = std::sqrt(r2);
    }
  }

  size_t tetrahedron_count() const { return tets_.size(); }

  std::vector<int> kept(real alpha) const {
    std::vector<int> out;
    for (size_t i = 0; i < tets_.size(); ++i)
      if (radius_[i] <= alpha) out.push_back(static_cast<int>(i));
    return out;
  }

  TriangleMesh extract(real alpha) const {
    bool closed = false;
    TriangleMesh mesh = boundary(alpha, closed);
    if (mesh.triangles.empty())
      throw error(errc::empty_boundary, "alpha_shape: no boundary at this alpha");
    return mesh;
  }

  // Doubles alpha while the boundary is empty or not closed, then falls back
  // to the convex hull.
  TriangleMesh extract_closed(real alpha, int doublings = 3) const {
    for (int i = 0; i <= doublings; ++i, alpha *= 2) {
      bool closed = false;
      TriangleMesh mesh = boundary(alpha, closed);
      if (!mesh.triangles.empty() && closed) return mesh;
    }
    bool closed = false;
    return boundary(std::numeric_limits<real>::infinity(), closed);  // convex hull
  }

  // Scale-aware default: factor x mean nearest-neighbor distance.
  real suggest_alpha(real factor = 4) const {
    const VpTree tree = VpTree::over_points(pts_);
    return factor * mean_nn_distance(tree, pts_);
  }

private:
  PointCloud pts_;
  std::vector<Tetrahedron> tets_;
  std::vector<real> radius_;

  TriangleMesh boundary(real alpha, bool& closed) const {
    std::map<std::array<int, 3>, std::pair<int, int>> faces;  // sorted key -> (tet, face)
    for (size_t i = 0; i < tets_.size(); ++i) {
      if (radius_[i] > alpha) continue;
      const auto& t = tets_[i];
      static constexpr std::array<std::array<int, 3>, 4> kF{
          {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}};
      for (int f = 0; f < 4; ++f) {
        std::array<int, 3> key{t[kF[f][0]], t[kF[f][1]], t[kF[f][2]]};
        std::sort(key.begin(), key.end());
        auto [it, fresh] = faces.emplace(key, std::make_pair(static_cast<int>(i), f));
        if (!fresh) it->second.first = -1;  // interior face
      }
    }
    TriangleMesh mesh;
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& [key, owner] : faces) {
      if (owner.first < 0) continue;
      const auto& t = tets_[owner.first];
      static constexpr std::array<std::array<int, 3>, 4> kF{
          {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}};
      const int a = t[kF[owner.second][0]], b = t[kF[owner.second][1]], c = t[kF[owner.second][2]];
      // kF orders each face toward the opposite vertex; reversed order makes
      // the Triangle normal point out of the kept region
      try {
        mesh.triangles.emplace_back(pts_[a], pts_[c], pts_[b]);
      } catch (const error&) {
        continue;  // degenerate sliver face; closedness check flags the hole
      }
      for (const auto [e0, e1] : {std::pair{a, b}, std::pair{b, c}, std::pair{a, c}})
        ++edge_count[std::minmax(e0, e1)];
    }
    closed = !mesh.triangles.empty();
    for (const auto& [e, n] : edge_count)
      if (n != 2) closed = false;
    return mesh;
  }
};

inline TriangleMesh alpha_shape(const PointCloud& points, real alpha) {
  return AlphaShapeBuilder(points).extract(alpha);
}

// Default pipeline used by the attacks: alpha = factor x mean NN distance,
// escalating per extract_closed when the boundary is empty or open.
inline TriangleMesh alpha_shape_auto(const PointCloud& points, real factor = 4) {
  AlphaShapeBuilder builder(points);
  return builder.extract_closed(builder.suggest_alpha(factor));
}

}  // namespace pcadv
