#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Floating-point geometric primitives shared by the Frechet-distance
// algorithms: points in R^d, balls (disks in 2d), and oriented rectangles.
// All comparisons inside algorithms are closed (<=); tolerances live in
// the tests, not here.

namespace fdi {

struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> c) : coords(c) {}
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(double x, double y) : coords{x, y} {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  bool operator==(const Point& o) const { return coords == o.coords; }
};

inline void require_same_dim(const Point& p, const Point& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("dimension mismatch");
}

inline double euclid_dist(const Point& p, const Point& q) {
  require_same_dim(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    double d = p.coords[i] - q.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct Ball {
  Point center;
  double radius = 0.0;

  Ball() = default;
  Ball(Point c, double r) : center(std::move(c)), radius(r) {
    if (radius < 0.0) throw std::invalid_argument("negative radius");
  }
  std::size_t dim() const { return center.dim(); }
};

// max_{q in w} d(p, q) = d(p, center) + radius
inline double dmax_point_ball(const Point& p, const Ball& w) {
  return euclid_dist(p, w.center) + w.radius;
}

// Closed containment w subseteq D(u_center, delta); equality counts.
inline bool ball_in_ball(const Ball& w, const Point& u_center, double delta) {
  return euclid_dist(u_center, w.center) + w.radius <= delta;
}

// Rectangle in R^2 given by center, unit long-axis direction and
// half-extents. Supports non-axis-aligned placements.
struct OrientedRect {
  Point center;          // d = 2
  double axis_x = 1.0;   // unit vector along the length
  double axis_y = 0.0;
  double half_length = 0.0;
  double half_width = 0.0;

  OrientedRect() = default;
  OrientedRect(Point c, double ax, double ay, double hl, double hw)
      : center(std::move(c)), axis_x(ax), axis_y(ay),
        half_length(hl), half_width(hw) {
    if (center.dim() != 2)
      throw std::invalid_argument("OrientedRect requires d = 2");
    double n = std::sqrt(axis_x * axis_x + axis_y * axis_y);
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument("axis must be a unit vector");
    if (half_length <= 0.0 || half_width <= 0.0)
      throw std::invalid_argument("half extents must be positive");
  }

  // Affine parameterization, (s,t) in [0,1]^2.
  Point point_at(double s, double t) const {
    double a = (2.0 * s - 1.0) * half_length;
    double b = (2.0 * t - 1.0) * half_width;
    return Point(center[0] + a * axis_x - b * axis_y,
                 center[1] + a * axis_y + b * axis_x);
  }

  std::array<Point, 4> corners() const {
    return {point_at(0, 0), point_at(1, 0), point_at(1, 1), point_at(0, 1)};
  }
};

struct DistRange {
  double min = 0.0;
  double max = 0.0;
};

// Distance range from a point to an oriented rectangle. The minimum is
// 0 for interior points; the maximum is attained at a corner.
inline DistRange rect_point_dist_range(const OrientedRect& r, const Point& p) {
  double dx = p[0] - r.center[0];
  double dy = p[1] - r.center[1];
  double u = dx * r.axis_x + dy * r.axis_y;    // along length
  double v = -dx * r.axis_y + dy * r.axis_x;   // along width
  double eu = std::max(std::abs(u) - r.half_length, 0.0);
  double ev = std::max(std::abs(v) - r.half_width, 0.0);
  double mu = std::abs(u) + r.half_length;
  double mv = std::abs(v) + r.half_width;
  return {std::hypot(eu, ev), std::hypot(mu, mv)};
}

// Sampling approximation of "every point of the rectangle lies within
// `radius` of some center": checks a resolution x resolution affine grid
// (corners included) plus the four edge midpoints.
inline bool rect_covered_by_disks(const OrientedRect& r,
                                  const std::vector<Point>& centers,
                                  double radius, int resolution) {
  if (resolution < 2) throw std::invalid_argument("resolution < 2");
  if (centers.empty() || centers.size() > 3)
    throw std::invalid_argument("expected 1..3 centers");

  auto covered = [&](const Point& q) {
    for (const Point& c : centers)
      if (euclid_dist(q, c) <= radius) return true;
    return false;
  };

  for (int i = 0; i < resolution; ++i) {
    double s = static_cast<double>(i) / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      double t = static_cast<double>(j) / (resolution - 1);
      if (!covered(r.point_at(s, t))) return false;
    }
  }
  const double mids[4][2] = {{0.5, 0.0}, {0.5, 1.0}, {0.0, 0.5}, {1.0, 0.5}};
  for (auto& m : mids)
    if (!covered(r.point_at(m[0], m[1]))) return false;
  return true;
}

}  // namespace fdi
