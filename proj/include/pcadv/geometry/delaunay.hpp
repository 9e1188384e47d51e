#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "pcadv/core.hpp"

namespace pcadv {

// orient(a,b,c,d) > 0 when d lies on the positive side of triangle (a,b,c).
inline real orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return (b - a).cross(c - a).dot(d - a);
}

namespace detail {

inline constexpr real kPredicateRelTol = 1e-12;

// in_sphere < 0: p strictly inside the circumsphere of positively oriented
// (a,b,c,d). |in_sphere| <= tol (by the paired magnitude bound) counts as
// on-sphere.
struct InSphereResult {
  real det;
  real tol;
  bool strictly_inside() const { return det < -tol; }
};

inline InSphereResult in_sphere(const Point3& a, const Point3& b, const Point3& c,
                                const Point3& d, const Point3& p) {
  const Point3 ra = a - p, rb = b - p, rc = c - p, rd = d - p;
  const real wa = ra.norm2(), wb = rb.norm2(), wc = rc.norm2(), wd = rd.norm2();
  // det of rows (r, w); expansion by the w column
  const real m01 = ra.x * rb.y - rb.x * ra.y, m02 = ra.x * rc.y - rc.x * ra.y;
  const real m03 = ra.x * rd.y - rd.x * ra.y, m12 = rb.x * rc.y - rc.x * rb.y;
  const real m13 = rb.x * rd.y - rd.x * rb.y, m23 = rc.x * rd.y - rd.x * rc.y;
  const real d0 = m12 * rd.z - m13 * rc.z + m23 * rb.z;  // minor without row a
  const real d1 = m02 * rd.z - m03 * rc.z + m23 * ra.z;
  const real d2 = m01 * rd.z - m03 * rb.z + m13 * ra.z;
  const real d3 = m01 * rc.z - m02 * rb.z + m12 * ra.z;
  const real det = -wa * d0 + wb * d1 - wc * d2 + wd * d3;
  const real mag = std::abs(wa * d0) + std::abs(wb * d1) + std::abs(wc * d2) + std::abs(wd * d3);
  return {det, kPredicateRelTol * mag};
}

// Circumcenter of a tetrahedron via the 3x3 bisector system.
inline bool circumsphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                         Point3& center, real& r2) {
  const Point3 u = b - a, v = c - a, w = d - a;
  const real bu = 0.5 * u.norm2(), bv = 0.5 * v.norm2(), bw = 0.5 * w.norm2();
  const real det = u.dot(v.cross(w));
  if (det == 0) return false;
  const Point3 vw = v.cross(w), wu = w.cross(u), uv = u.cross(v);
  const Point3 rel = (vw * bu + wu * bv + uv * bw) / det;
  center = a + rel;
  r2 = rel.norm2();
  return true;
}

}  // namespace detail

using Tetrahedron = std::array<int, 4>;

// Incremental Bowyer-Watson over a far-out enclosing tetrahedron. Exact
// duplicates are pre-jittered by 1e-9 x diameter; predicates are double
// precision with a relative tolerance, so degeneracies raise errors instead
// of corrupting output. Returned tetrahedra are positively oriented.
class DelaunayTriangulator {
public:
  explicit DelaunayTriangulator(const PointCloud& points) : pts_(points) {
    if (pts_.size() < 4) throw error(errc::bad_argument, "delaunay_3d: need at least 4 points");
    jitter_duplicates();
    check_not_coplanar();
    build();
  }

  std::vector<Tetrahedron> tetrahedra() const {
    std::vector<Tetrahedron> out;
    const int n = static_cast<int>(pts_.size()) - 4;
    for (const auto& t : tets_) {
      if (!t.alive) continue;
      if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n || t.v[3] >= n) continue;
      out.push_back({t.v[0], t.v[1], t.v[2], t.v[3]});
    }
    return out;
  }

  // Points after duplicate jitter (indices match the input cloud; the
  // enclosing-tetrahedron vertices are stripped).
  PointCloud working_points() const {
    return PointCloud(pts_.begin(), pts_.end() - 4);
  }

private:
  struct Tet {
    std::array<int, 4> v;
    std::array<int, 4> nbr;  // nbr[i] across the face opposite v[i]
    bool alive = true;
  };

  PointCloud pts_;
  std::vector<Tet> tets_;
  std::vector<int> free_;
  int last_ = -1;

  void jitter_duplicates() {
    real diam2 = 0;
    Point3 lo = pts_[0], hi = pts_[0];
    for (const auto& p : pts_) {
      if (!p.finite()) throw error(errc::non_finite, "delaunay_3d: non-finite coordinate");
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    diam2 = (hi - lo).norm2();
    const real eps = 1e-9 * std::sqrt(diam2);
    if (eps == 0) throw error(errc::degenerate_geometry, "delaunay_3d: all points coincide");
    std::map<std::array<real, 3>, int> seen;
    Rng rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<real> u(-1, 1);
    for (size_t i = 0; i < pts_.size(); ++i) {
      std::array<real, 3> key{pts_[i].x, pts_[i].y, pts_[i].z};
      auto [it, fresh] = seen.emplace(key, static_cast<int>(i));
      if (!fresh) {
        pts_[i] += Point3{u(rng), u(rng), u(rng)} * eps;
        --i;  // re-check the jittered value
      }
    }
  }

  void check_not_coplanar() {
    // greedy basis: farthest point, then max area, then max volume
    const size_t n = pts_.size();
    size_t i1 = 1;
    real best = -1;
    for (size_t i = 1; i < n; ++i) {
      const real d = distance2(pts_[0], pts_[i]);
      if (d > best) best = d, i1 = i;
    }
    size_t i2 = 0;
    best = -1;
    for (size_t i = 0; i < n; ++i) {
      const real a = (pts_[i1] - pts_[0]).cross(pts_[i] - pts_[0]).norm2();
      if (a > best) best = a, i2 = i;
    }
    best = -1;
    real scale = 0;
    for (size_t i = 0; i < n; ++i) {
      const real v = std::abs(orient3d(pts_[0], pts_[i1], pts_[i2], pts_[i]));
      best = std::max(best, v);
      scale = std::max(scale, distance2(pts_[0], pts_[i]));
    }
    if (best <= 1e-12 * scale * std::sqrt(scale))
      throw error(errc::degenerate_geometry, "delaunay_3d: points are coplanar");
  }

  static constexpr std::array<std::array<int, 3>, 4> kFace{{{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}};

  int new_tet(int a, int b, int c, int d) {
    Tet t;
    t.v = {a, b, c, d};
    t.nbr = {-1, -1, -1, -1};
    if (!free_.empty()) {
      const int id = free_.back();
      free_.pop_back();
      tets_[id] = t;
      return id;
    }
    tets_.push_back(t);
    return static_cast<int>(tets_.size()) - 1;
  }

  bool contains(int ti, const Point3& p) const {
    const Tet& t = tets_[ti];
    for (int f = 0; f < 4; ++f) {
      const real o = orient3d(pts_[t.v[kFace[f][0]]], pts_[t.v[kFace[f][1]]],
                              pts_[t.v[kFace[f][2]]], p);
      if (o < 0) return false;
    }
    return true;
  }

  int locate(const Point3& p) const {
    int cur = last_;
    if (cur < 0 || !tets_[cur].alive) {
      cur = -1;
      for (size_t i = 0; i < tets_.size(); ++i)
        if (tets_[i].alive) {
          cur = static_cast<int>(i);
          break;
        }
    }
    const int max_steps = static_cast<int>(tets_.size()) * 4 + 64;
    int prev = -1;
    for (int step = 0; step < max_steps; ++step) {
      const Tet& t = tets_[cur];
      int go = -1;
      real worst = 0;
      for (int f = 0; f < 4; ++f) {
        if (t.nbr[f] == prev && prev >= 0) continue;
        const real o = orient3d(pts_[t.v[kFace[f][0]]], pts_[t.v[kFace[f][1]]],
                                pts_[t.v[kFace[f][2]]], p);
        if (o < worst) {
          worst = o;
          go = f;
        }
      }
      if (go < 0) return cur;
      if (t.nbr[go] < 0) return cur;  // outside hull: should not happen inside the super tet
      prev = cur;
      cur = t.nbr[go];
    }
    // walk cycled on a degeneracy; fall back to a scan
    for (size_t i = 0; i < tets_.size(); ++i)
      if (tets_[i].alive && contains(static_cast<int>(i), p)) return static_cast<int>(i);
    throw error(errc::degenerate_geometry, "delaunay_3d: point location failed");
  }

  bool insert(int pi) {
    const Point3& p = pts_[pi];
    const int start = locate(p);

    // cavity: BFS over tets whose circumsphere strictly contains p
    std::vector<int> cavity;
    std::vector<int> stack{start};
    std::vector<char> in_cavity(tets_.size(), 0);
    in_cavity[start] = 1;
    while (!stack.empty()) {
      const int ti = stack.back();
      stack.pop_back();
      cavity.push_back(ti);
      for (int f = 0; f < 4; ++f) {
        const int nb = tets_[ti].nbr[f];
        if (nb < 0 || in_cavity[nb]) continue;
        const Tet& t = tets_[nb];
        if (detail::in_sphere(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], pts_[t.v[3]], p)
                .strictly_inside()) {
          in_cavity[nb] = 1;
          stack.push_back(nb);
        }
      }
    }

    // boundary faces with their outside neighbors
    struct Wall {
      std::array<int, 3> f;
      int outside;
      int outside_face;
    };
    std::vector<Wall> walls;
    for (const int ti : cavity) {
      for (int f = 0; f < 4; ++f) {
        const int nb = tets_[ti].nbr[f];
        if (nb >= 0 && in_cavity[nb]) continue;
        Wall w;
        w.f = {tets_[ti].v[kFace[f][0]], tets_[ti].v[kFace[f][1]], tets_[ti].v[kFace[f][2]]};
        w.outside = nb;
        w.outside_face = -1;
        if (nb >= 0) {
          for (int g = 0; g < 4; ++g)
            if (tets_[nb].nbr[g] == ti) w.outside_face = g;
        }
        walls.push_back(w);
      }
    }

    // star-shapedness guard: every wall must face p strictly
    for (const auto& w : walls) {
      if (orient3d(pts_[w.f[0]], pts_[w.f[1]], pts_[w.f[2]], p) <= 0) return false;
    }

    for (const int ti : cavity) {
      tets_[ti].alive = false;
      free_.push_back(ti);
    }

    std::map<std::pair<int, int>, std::pair<int, int>> half;  // edge -> (tet, face)
    int made = -1;
    for (const auto& w : walls) {
      const int nt = new_tet(w.f[0], w.f[1], w.f[2], pi);
      made = nt;
      tets_[nt].nbr[3] = w.outside;
      if (w.outside >= 0 && w.outside_face >= 0) tets_[w.outside].nbr[w.outside_face] = nt;
      // internal faces: opposite v0 -> edge (v1,v2), opposite v1 -> (v0,v2),
      // opposite v2 -> (v0,v1)
      const std::array<std::pair<int, int>, 3> edges{
          std::pair{w.f[1], w.f[2]}, std::pair{w.f[0], w.f[2]}, std::pair{w.f[0], w.f[1]}};
      for (int e = 0; e < 3; ++e) {
        auto key = std::minmax(edges[e].first, edges[e].second);
        auto it = half.find(key);
        if (it == half.end()) {
          half[key] = {nt, e};
        } else {
          tets_[nt].nbr[e] = it->second.first;
          tets_[it->second.first].nbr[it->second.second] = nt;
          half.erase(it);
        }
      }
    }
    if (!half.empty()) throw error(errc::degenerate_geometry, "delaunay_3d: cavity not closed");
    last_ = made;
    return true;
  }

  void build() {
    // enclosing tetrahedron far outside the data
    Point3 c = centroid(pts_);
    real rad = 0;
    for (const auto& p : pts_) rad = std::max(rad, distance(p, c));
    const real R = std::max<real>(rad, 1e-6) * 1e3;
    const int n = static_cast<int>(pts_.size());
    pts_.push_back(c + Point3{R, R, R});
    pts_.push_back(c + Point3{R, -R, -R});
    pts_.push_back(c + Point3{-R, R, -R});
    pts_.push_back(c + Point3{-R, -R, R});
    if (orient3d(pts_[n], pts_[n + 1], pts_[n + 2], pts_[n + 3]) < 0)
      std::swap(pts_[n + 2], pts_[n + 3]);
    new_tet(n, n + 1, n + 2, n + 3);
    last_ = 0;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(0x51f3c6d2a94bull);
    std::shuffle(order.begin(), order.end(), rng);

    Rng jrng(0xa76b1e03ull);
    std::uniform_real_distribution<real> u(-1, 1);
    const real eps = 1e-9 * rad * 2;
    for (const int pi : order) {
      bool ok = false;
      for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
        if (attempt > 0) pts_[pi] += Point3{u(jrng), u(jrng), u(jrng)} * (eps * attempt);
        ok = insert(pi);
      }
      if (!ok) throw error(errc::degenerate_geometry, "delaunay_3d: degenerate insertion");
    }
  }
};

inline std::vector<Tetrahedron> delaunay_3d(const PointCloud& points) {
  return DelaunayTriangulator(points).tetrahedra();
}

}  // namespace pcadv
