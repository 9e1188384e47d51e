#pragma once

// Test-only reference implementations. Everything here is deliberately
// brute-force and independent of the library's accelerated paths.

#include <algorithm>
#include <numeric>
#include <vector>

#include "pcadv/core.hpp"
#include "pcadv/geometry/triangle.hpp"

namespace oracle {

using pcadv::Point3;
using pcadv::PointCloud;
using pcadv::real;
using pcadv::TriangleMesh;

inline std::vector<int> knn_scan(const PointCloud& pts, const Point3& q, int k, int exclude = -1) {
  std::vector<std::pair<real, int>> all;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(i) == exclude) continue;
    all.push_back({pcadv::distance2(pts[i], q), static_cast<int>(i)});
  }
  std::sort(all.begin(), all.end());
  std::vector<int> out;
  for (int i = 0; i < k; ++i) out.push_back(all[i].second);
  return out;
}

inline real chamfer_scan(const PointCloud& a, const PointCloud& b) {
  real sum = 0;
  for (const auto& p : a) {
    real best = std::numeric_limits<real>::infinity();
    for (const auto& q : b) best = std::min(best, pcadv::distance(p, q));
    sum += best;
  }
  return sum / static_cast<real>(a.size());
}

inline std::vector<int> fps_scan(const PointCloud& pts, int m, std::vector<int> seeds = {}) {
  const int n = static_cast<int>(pts.size());
  std::sort(seeds.begin(), seeds.end());
  std::vector<int> chosen = seeds;
  if (chosen.empty()) chosen.push_back(0);
  while (static_cast<int>(chosen.size()) < m) {
    int best = -1;
    real bd = -1;
    for (int i = 0; i < n; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      real d = std::numeric_limits<real>::infinity();
      for (const int c : chosen) d = std::min(d, pcadv::distance2(pts[i], pts[c]));
      if (d > bd) {
        bd = d;
        best = i;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

// Dense barycentric grid over every triangle; the reference for projection
// and point-to-surface distances.
inline PointCloud dense_surface_samples(const TriangleMesh& mesh, int per_edge = 100) {
  PointCloud out;
  for (const auto& t : mesh.triangles) {
    for (int i = 0; i <= per_edge; ++i) {
      for (int j = 0; j <= per_edge - i; ++j) {
        const real a = static_cast<real>(i) / per_edge;
        const real b = static_cast<real>(j) / per_edge;
        out.push_back(t.v[0] + (t.v[1] - t.v[0]) * a + (t.v[2] - t.v[0]) * b);
      }
    }
  }
  return out;
}

inline real min_distance_to(const PointCloud& samples, const Point3& p) {
  real best = std::numeric_limits<real>::infinity();
  for (const auto& s : samples) best = std::min(best, pcadv::distance2(s, p));
  return std::sqrt(best);
}

inline PointCloud random_cloud(size_t n, pcadv::Rng& rng, real lo = 0, real hi = 1) {
  std::uniform_real_distribution<real> u(lo, hi);
  PointCloud pts(n);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  return pts;
}

}  // namespace oracle
