#pragma once

#include <vector>

#include "pcadv/core.hpp"
#include "pcadv/geometry/triangle.hpp"
#include "pcadv/geometry/vptree.hpp"

namespace pcadv {

// Asymmetric Chamfer distance: mean over A of the distance to the nearest
// point of B.
inline real chamfer_distance(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw error(errc::empty_input, "chamfer_distance: empty set");
  real sum = 0;
  if (b.size() <= 64) {
    for (const auto& p : a) {
      real best = std::numeric_limits<real>::infinity();
      for (const auto& q : b) best = std::min(best, distance2(p, q));
      sum += std::sqrt(best);
    }
  } else {
    const VpTree tree = VpTree::over_points(b);
    for (const auto& p : a) sum += distance(p, b[tree.k_nearest(p, 1)[0]]);
  }
  return sum / static_cast<real>(a.size());
}

// Max over the cloud of the exact point-to-mesh distance.
inline real hausdorff_to_surface(const PointCloud& a, const TriangleMesh& mesh,
                                 const VpTree& index) {
  if (a.empty()) throw error(errc::empty_input, "hausdorff_to_surface: empty cloud");
  real worst = 0;
  for (const auto& p : a) worst = std::max(worst, distance_to_surface(p, mesh, index));
  return worst;
}

inline real hausdorff_to_surface(const PointCloud& a, const TriangleMesh& mesh) {
  return hausdorff_to_surface(a, mesh, build_index(mesh));
}

}  // namespace pcadv
