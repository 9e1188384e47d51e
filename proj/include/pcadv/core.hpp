#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcadv {

#ifdef PCADV_SINGLE_PRECISION
using real = float;
#else
using real = double;
#endif

enum class errc {
  empty_input,
  bad_argument,
  degenerate_geometry,
  empty_boundary,
  shape_mismatch,
  off_bad_header,
  off_count_mismatch,
  off_bad_index,
  io_failure,
  unknown_parameter,
  non_finite,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

struct Point3 {
  real x = 0, y = 0, z = 0;

  Point3() = default;
  Point3(real px, real py, real pz) : x(px), y(py), z(pz) {}

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(real s) const { return {x * s, y * s, z * s}; }
  Point3 operator/(real s) const { return {x / s, y / s, z / s}; }
  Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Point3& operator-=(const Point3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  real dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
  Point3 cross(const Point3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  real norm2() const { return x * x + y * y + z * z; }
  real norm() const { return std::sqrt(norm2()); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Point3 operator*(real s, const Point3& p) { return p * s; }

inline real distance2(const Point3& a, const Point3& b) { return (a - b).norm2(); }
inline real distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

using PointCloud = std::vector<Point3>;

using Rng = std::mt19937_64;

inline Point3 centroid(const PointCloud& pts) {
  Point3 c;
  for (const auto& p : pts) c += p;
  return pts.empty() ? c : c / static_cast<real>(pts.size());
}

// Mean distance from each point to its nearest neighbor; the scale unit used
// by the attacks' density parameters.
inline real mean_nn_distance(const PointCloud& pts) {
  if (pts.size() < 2) throw error(errc::bad_argument, "mean_nn_distance: need at least 2 points");
  real sum = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    real best = std::numeric_limits<real>::infinity();
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      best = std::min(best, distance2(pts[i], pts[j]));
    }
    sum += std::sqrt(best);
  }
  return sum / static_cast<real>(pts.size());
}

}  // namespace pcadv
