#pragma once

// Floating-point segment primitives shared by validation, the DE-9IM kernel
// and antimeridian splitting. All coincidence decisions use kEpsilon.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "radon/error.hpp"
#include "radon/geometry.hpp"

namespace radon::detail {

inline double cross(Point o, Point a, Point b) noexcept {
  return (a.lon - o.lon) * (b.lat - o.lat) - (a.lat - o.lat) * (b.lon - o.lon);
}

inline double dot(Point o, Point a, Point b) noexcept {
  return (a.lon - o.lon) * (b.lon - o.lon) + (a.lat - o.lat) * (b.lat - o.lat);
}

inline double distance(Point a, Point b) noexcept { return std::hypot(a.lon - b.lon, a.lat - b.lat); }

inline bool coincident(Point a, Point b, double tolerance = kEpsilon) noexcept {
  return distance(a, b) <= tolerance;
}

inline Point midpoint(Point a, Point b) noexcept {
  return {a.lon + (b.lon - a.lon) * 0.5, a.lat + (b.lat - a.lat) * 0.5};
}

inline double distance_to_segment(Point p, Point a, Point b) noexcept {
  const double dx = b.lon - a.lon;
  const double dy = b.lat - a.lat;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2;
  if (t <= 0.0) return distance(p, a);
  if (t >= 1.0) return distance(p, b);
  return std::hypot(p.lon - (a.lon + t * dx), p.lat - (a.lat + t * dy));
}

inline bool on_segment(Point p, Point a, Point b, double tolerance = kEpsilon) noexcept {
  return distance_to_segment(p, a, b) <= tolerance;
}

/// Sign of c relative to the directed line a->b; 0 when c is within tolerance of the line.
inline int orientation(Point a, Point b, Point c, double tolerance = kEpsilon) noexcept {
  const double len = distance(a, b);
  if (len == 0.0) return 0;
  const double d = cross(a, b, c) / len;
  if (d > tolerance) return 1;
  if (d < -tolerance) return -1;
  return 0;
}

/// Parameter of the projection of p onto a->b (unclamped).
inline double project(Point p, Point a, Point b) noexcept {
  const double dx = b.lon - a.lon;
  const double dy = b.lat - a.lat;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return 0.0;
  return ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2;
}

struct SegmentIntersection {
  std::array<Point, 4> points{};
  int count = 0;

  void add(Point p) noexcept {
    for (int k = 0; k < count; ++k)
      if (coincident(points[k], p)) return;
    if (count < 4) points[count++] = p;
  }
};

/// Intersection of closed segments a-b and c-d. Collinear overlaps are reported
/// through their end points. Throws numerical_degeneracy when a crossing point
/// cannot be placed within tolerance of both segments.
inline SegmentIntersection intersect_segments(Point a, Point b, Point c, Point d) {
  SegmentIntersection out;
  if (on_segment(a, c, d)) out.add(a);
  if (on_segment(b, c, d)) out.add(b);
  if (on_segment(c, a, b)) out.add(c);
  if (on_segment(d, a, b)) out.add(d);
  if (out.count > 0) return out;

  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    const double denom = (b.lon - a.lon) * (d.lat - c.lat) - (b.lat - a.lat) * (d.lon - c.lon);
    if (denom == 0.0) throw Error(ErrorCode::numerical_degeneracy, "parallel segments reported as crossing");
    const double t = ((c.lon - a.lon) * (d.lat - c.lat) - (c.lat - a.lat) * (d.lon - c.lon)) / denom;
    const Point p{a.lon + t * (b.lon - a.lon), a.lat + t * (b.lat - a.lat)};
    if (!on_segment(p, a, b) || !on_segment(p, c, d))
      throw Error(ErrorCode::numerical_degeneracy, "crossing point outside tolerance of its segments");
    out.add(p);
  }
  return out;
}

inline bool boxes_overlap(Point a, Point b, Point c, Point d, double tolerance = kEpsilon) noexcept {
  return std::fmin(a.lon, b.lon) <= std::fmax(c.lon, d.lon) + tolerance &&
         std::fmin(c.lon, d.lon) <= std::fmax(a.lon, b.lon) + tolerance &&
         std::fmin(a.lat, b.lat) <= std::fmax(c.lat, d.lat) + tolerance &&
         std::fmin(c.lat, d.lat) <= std::fmax(a.lat, b.lat) + tolerance;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  std::uint32_t id = 0;
};

/// Calls fn(id1, id2) once for every pair of intervals overlapping within tolerance.
template <class Fn>
void overlapping_intervals(std::vector<Interval> items, double tolerance, Fn&& fn) {
  std::sort(items.begin(), items.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size() && items[b].lo <= items[a].hi + tolerance; ++b)
      fn(items[a].id, items[b].id);
}

}  // namespace radon::detail
