#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "pcadv/core.hpp"

namespace pcadv {

// Vantage-point tree over a set of keyed items. Plain points have zero item
// radius; triangles are keyed by their centroid with the circumscribing
// radius stored per item, so pruning bounds stay valid for the exact
// point-to-triangle metric. Immutable after construction; concurrent queries
// are safe.
class VpTree {
public:
  struct Item {
    Point3 key;
    real radius = 0;  // max distance from key to any point of the item
    int id = 0;       // caller's index
  };

  static VpTree build(std::vector<Item> items) {
    if (items.empty()) throw error(errc::empty_input, "VpTree: empty input");
    VpTree t;
    t.items_ = std::move(items);
    std::vector<int> order(t.items_.size());
    std::iota(order.begin(), order.end(), 0);
    t.nodes_.reserve(t.items_.size());
    t.root_ = t.build_node(order, 0, static_cast<int>(order.size()));
    return t;
  }

  static VpTree over_points(const PointCloud& pts) {
    std::vector<Item> items(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) items[i] = {pts[i], 0, static_cast<int>(i)};
    return build(std::move(items));
  }

  size_t size() const { return items_.size(); }

  // Exact k nearest item ids ordered by increasing key distance, ties broken
  // by lower id. Matches an exhaustive scan exactly. `exclude` skips one id
  // (callers pass a point's own index to drop self-matches).
  std::vector<int> k_nearest(const Point3& q, int k, int exclude = -1) const {
    const int avail = static_cast<int>(items_.size()) - (exclude >= 0 ? 1 : 0);
    if (k < 0 || k > avail) throw error(errc::bad_argument, "VpTree::k_nearest: k out of range");
    if (k == 0) return {};
    std::vector<std::pair<real, int>> best;  // (distance^2, id), worst at back
    best.reserve(k + 1);
    search_knn(root_, q, k, exclude, best);
    std::vector<int> ids(best.size());
    for (size_t i = 0; i < best.size(); ++i) ids[i] = best[i].second;
    return ids;
  }

  // Ids of all items whose key distance minus item radius is <= r: a superset
  // of the items whose exact closest point lies within r of the query.
  std::vector<int> radius_candidates(const Point3& q, real r) const {
    std::vector<int> out;
    search_radius(root_, q, r, out);
    return out;
  }

  // Branch-and-bound nearest item under an exact metric supplied by the
  // caller. `exact` receives an item id and returns the true distance from
  // the query to that item. Returns the winning id; `best` carries the
  // running upper bound in and the final distance out.
  int nearest_by(const Point3& q, const std::function<real(int)>& exact, real& best) const {
    int best_id = -1;
    search_exact(root_, q, exact, best, best_id);
    return best_id;
  }

private:
  struct Node {
    int item = -1;
    real split = 0;    // median key distance to vantage
    real bound = 0;    // max item radius within this subtree
    int inner = -1;
    int outer = -1;
  };

  std::vector<Item> items_;
  std::vector<Node> nodes_;
  int root_ = -1;

  // Vantage point: the item farthest from the range centroid (ties by lower
  // id); remaining items median-split by distance to it.
  int build_node(std::vector<int>& order, int lo, int hi) {
    if (lo >= hi) return -1;
    Point3 c;
    for (int i = lo; i < hi; ++i) c += items_[order[i]].key;
    c = c / static_cast<real>(hi - lo);
    int vp = lo;
    real vd = -1;
    for (int i = lo; i < hi; ++i) {
      const real d = distance2(items_[order[i]].key, c);
      if (d > vd || (d == vd && items_[order[i]].id < items_[order[vp]].id)) {
        vd = d;
        vp = i;
      }
    }
    std::swap(order[lo], order[vp]);
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node n;
    n.item = order[lo];
    n.bound = items_[order[lo]].radius;
    for (int i = lo + 1; i < hi; ++i) n.bound = std::max(n.bound, items_[order[i]].radius);

    if (hi - lo > 1) {
      const Point3 vkey = items_[order[lo]].key;
      const int mid = lo + 1 + (hi - (lo + 1)) / 2;
      std::nth_element(order.begin() + lo + 1, order.begin() + mid, order.begin() + hi,
                       [&](int a, int b) {
                         const real da = distance2(items_[a].key, vkey);
                         const real db = distance2(items_[b].key, vkey);
                         return da < db || (da == db && items_[a].id < items_[b].id);
                       });
      n.split = distance(items_[order[mid]].key, vkey);
      n.inner = build_node(order, lo + 1, mid);
      n.outer = build_node(order, mid, hi);
    }
    nodes_[node_index] = n;
    return node_index;
  }

  static bool better(real d2a, int ida, real d2b, int idb) {
    return d2a < d2b || (d2a == d2b && ida < idb);
  }

  void search_knn(int ni, const Point3& q, int k, int exclude,
                  std::vector<std::pair<real, int>>& best) const {
    if (ni < 0) return;
    const Node& n = nodes_[ni];
    const Item& it = items_[n.item];
    const real d = distance(q, it.key);
    if (it.id != exclude) {
      const real d2 = d * d;
      if (static_cast<int>(best.size()) < k || better(d2, it.id, best.back().first, best.back().second)) {
        auto pos = std::upper_bound(best.begin(), best.end(), std::make_pair(d2, it.id));
        best.insert(pos, {d2, it.id});
        if (static_cast<int>(best.size()) > k) best.pop_back();
      }
    }
    if (n.inner < 0 && n.outer < 0) return;
    // min possible key distance within each half; <= keeps equal-distance
    // candidates reachable so tie-breaking matches the exhaustive scan
    const bool inner_first = d < n.split;
    const int first = inner_first ? n.inner : n.outer;
    const int second = inner_first ? n.outer : n.inner;
    search_knn(first, q, k, exclude, best);
    const real worst = static_cast<int>(best.size()) < k
                           ? std::numeric_limits<real>::infinity()
                           : std::sqrt(best.back().first);
    const real gap = inner_first ? (n.split - d) : (d - n.split);
    if (gap <= worst) search_knn(second, q, k, exclude, best);
  }

  void search_radius(int ni, const Point3& q, real r, std::vector<int>& out) const {
    if (ni < 0) return;
    const Node& n = nodes_[ni];
    const Item& it = items_[n.item];
    const real d = distance(q, it.key);
    if (d - it.radius <= r) out.push_back(it.id);
    if (n.inner >= 0 && std::max<real>(0, d - n.split) - n.bound <= r)
      search_radius(n.inner, q, r, out);
    if (n.outer >= 0 && std::max<real>(0, n.split - d) - n.bound <= r)
      search_radius(n.outer, q, r, out);
  }

  void search_exact(int ni, const Point3& q, const std::function<real(int)>& exact, real& best,
                    int& best_id) const {
    if (ni < 0) return;
    const Node& n = nodes_[ni];
    const Item& it = items_[n.item];
    const real dkey = distance(q, it.key);
    if (dkey - it.radius < best) {
      const real d = exact(it.id);
      if (d < best || (d == best && (best_id < 0 || it.id < best_id))) {
        best = d;
        best_id = it.id;
      }
    }
    const bool inner_first = dkey < n.split;
    for (int pass = 0; pass < 2; ++pass) {
      const bool go_inner = (pass == 0) == inner_first;
      const int child = go_inner ? n.inner : n.outer;
      if (child < 0) continue;
      const real gap = go_inner ? std::max<real>(0, dkey - n.split) : std::max<real>(0, n.split - dkey);
      if (gap - n.bound < best || best == std::numeric_limits<real>::infinity())
        search_exact(child, q, exact, best, best_id);
    }
  }

  VpTree() = default;
};

// mean_nn_distance via the index; identical result to the brute-force scan.
inline real mean_nn_distance(const VpTree& tree, const PointCloud& pts) {
  if (pts.size() < 2) throw error(errc::bad_argument, "mean_nn_distance: need at least 2 points");
  real sum = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto nn = tree.k_nearest(pts[i], 1, static_cast<int>(i));
    sum += distance(pts[i], pts[nn[0]]);
  }
  return sum / static_cast<real>(pts.size());
}

}  // namespace pcadv
