#pragma once

#include <algorithm>
#include <vector>

#include "pcadv/core.hpp"
#include "pcadv/geometry/triangle.hpp"

namespace pcadv {

// Greedy farthest point sampling. Starting from the seed indices (or index 0
// when none are given), repeatedly adds the point with the largest distance
// to the chosen set; ties go to the lower index. Returns the chosen indices
// in selection order, seeds first.
inline std::vector<int> farthest_point_sample(const PointCloud& points, int m,
                                              std::vector<int> seeds = {}) {
  const int n = static_cast<int>(points.size());
  if (m < 0 || m > n) throw error(errc::bad_argument, "farthest_point_sample: m out of range");
  if (static_cast<int>(seeds.size()) > m)
    throw error(errc::bad_argument, "farthest_point_sample: more seeds than m");
  std::sort(seeds.begin(), seeds.end());
  for (const int s : seeds)
    if (s < 0 || s >= n) throw error(errc::bad_argument, "farthest_point_sample: bad seed index");

  std::vector<int> chosen;
  chosen.reserve(m);
  std::vector<real> dist2(n, std::numeric_limits<real>::infinity());
  std::vector<char> taken(n, 0);
  auto add = [&](int idx) {
    chosen.push_back(idx);
    taken[idx] = 1;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      dist2[i] = std::min(dist2[i], distance2(points[i], points[idx]));
    }
  };
  if (seeds.empty() && m > 0) {
    add(0);
  } else {
    for (const int s : seeds)
      if (!taken[s]) add(s);
  }
  while (static_cast<int>(chosen.size()) < m) {
    int best = -1;
    real bd = -1;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (dist2[i] > bd) {
        bd = dist2[i];
        best = i;
      }
    }
    add(best);
  }
  return chosen;
}

// Area-uniform sampling: triangles drawn proportionally to area, points by
// uniform barycentric coordinates.
inline PointCloud sample_on_mesh(const TriangleMesh& mesh, int m, Rng& rng) {
  std::vector<real> cum;
  std::vector<size_t> live;  // zero-area triangles are never drawn
  real total = 0;
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    const real a = mesh.triangles[i].area();
    if (a <= 0) continue;
    total += a;
    cum.push_back(total);
    live.push_back(i);
  }
  if (total <= 0) throw error(errc::bad_argument, "sample_on_mesh: zero total area");

  std::uniform_real_distribution<real> u(0, 1);
  PointCloud out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    const real pick = u(rng) * total;
    const size_t ti = live[std::min<size_t>(
        std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin(), cum.size() - 1)];
    const auto& t = mesh.triangles[ti];
    real a = u(rng), b = u(rng);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    out.push_back(t.v[0] + (t.v[1] - t.v[0]) * a + (t.v[2] - t.v[0]) * b);
  }
  return out;
}

}  // namespace pcadv
