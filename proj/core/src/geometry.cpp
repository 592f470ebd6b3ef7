#include "radon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "primitives.hpp"
#include "radon/error.hpp"

namespace radon {

std::string_view to_string(GeometryKind kind) noexcept {
  switch (kind) {
    case GeometryKind::point: return "POINT";
    case GeometryKind::line_string: return "LINESTRING";
    case GeometryKind::polygon: return "POLYGON";
    case GeometryKind::multi_point: return "MULTIPOINT";
    case GeometryKind::multi_line_string: return "MULTILINESTRING";
    case GeometryKind::multi_polygon: return "MULTIPOLYGON";
  }
  return "UNKNOWN";
}

int dimension(GeometryKind kind) noexcept {
  switch (kind) {
    case GeometryKind::point:
    case GeometryKind::multi_point: return 0;
    case GeometryKind::line_string:
    case GeometryKind::multi_line_string: return 1;
    case GeometryKind::polygon:
    case GeometryKind::multi_polygon: return 2;
  }
  return 0;
}

void MBB::expand(Point p) noexcept {
  lon_min = std::min(lon_min, p.lon);
  lat_min = std::min(lat_min, p.lat);
  lon_max = std::max(lon_max, p.lon);
  lat_max = std::max(lat_max, p.lat);
}

void MBB::expand(const MBB& other) noexcept {
  lon_min = std::min(lon_min, other.lon_min);
  lat_min = std::min(lat_min, other.lat_min);
  lon_max = std::max(lon_max, other.lon_max);
  lat_max = std::max(lat_max, other.lat_max);
}

double signed_area2(std::span<const Point> ring) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < ring.size(); ++k)
    sum += ring[k].lon * ring[k + 1].lat - ring[k + 1].lon * ring[k].lat;
  return sum;
}

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::invalid_geometry, why); }

void check_point(Point p) {
  if (!std::isfinite(p.lon) || !std::isfinite(p.lat)) invalid("non-finite coordinate");
  if (p.lon < -180.0 || p.lon > 180.0) invalid("longitude out of range: " + std::to_string(p.lon));
  if (p.lat < -90.0 || p.lat > 90.0) invalid("latitude out of range: " + std::to_string(p.lat));
}

void check_line(const LineString& line) {
  if (line.size() < 2) invalid("linestring needs at least 2 points");
  for (const Point& p : line) check_point(p);
  const bool has_length = std::any_of(line.begin() + 1, line.end(), [&](const Point& p) {
    return !detail::coincident(p, line.front());
  });
  if (!has_length) invalid("zero-length linestring");
}

void check_point_range(const Ring& ring) {
  for (const Point& p : ring) check_point(p);
}

Ring without_repeats(const Ring& ring) {
  Ring out;
  out.reserve(ring.size());
  for (const Point& p : ring)
    if (out.empty() || !detail::coincident(out.back(), p)) out.push_back(p);
  return out;
}

void check_ring(const Ring& ring) {
  if (ring.size() < 4) invalid("ring needs at least 4 points");
  if (!(ring.front() == ring.back())) invalid("ring is not closed");

  const Ring pts = without_repeats(ring);
  const std::size_t n = pts.size() - 1;  // segment count
  if (n < 3) invalid("ring collapses to fewer than 3 distinct vertices");
  if (std::abs(signed_area2(pts)) <= kEpsilon) invalid("ring has zero area");

  std::vector<detail::Interval> spans;
  spans.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    spans.push_back({std::fmin(pts[i].lon, pts[i + 1].lon), std::fmax(pts[i].lon, pts[i + 1].lon),
                     static_cast<std::uint32_t>(i)});
  try {
    detail::overlapping_intervals(std::move(spans), kEpsilon, [&](std::size_t i, std::size_t j) {
      if (j < i) std::swap(i, j);
      const Point a = pts[i], b = pts[i + 1];
      const Point c = pts[j], d = pts[j + 1];
      if (!detail::boxes_overlap(a, b, c, d)) return;
      const auto hit = detail::intersect_segments(a, b, c, d);
      const bool next = j == i + 1;
      const bool wrap = i == 0 && j == n - 1;
      if (next || wrap) {
        const Point shared = next ? b : a;
        for (int k = 0; k < hit.count; ++k)
          if (!detail::coincident(hit.points[k], shared)) invalid("ring folds back on itself");
      } else if (hit.count > 0) {
        invalid("ring self-intersects");
      }
    });
  } catch (const Error& e) {
    if (e.code() == ErrorCode::numerical_degeneracy) invalid(std::string("ring is degenerate: ") + e.what());
    throw;
  }
}

// Rings of one polygon may touch at isolated vertices but must not cross or share edges.
void check_ring_pair(const Ring& r1, const Ring& r2) {
  const auto n1 = static_cast<std::uint32_t>(r1.size() - 1);
  std::vector<detail::Interval> spans;
  spans.reserve(r1.size() + r2.size());
  auto add = [&](const Ring& ring, std::uint32_t offset) {
    for (std::size_t k = 0; k + 1 < ring.size(); ++k)
      if (!detail::coincident(ring[k], ring[k + 1]))
        spans.push_back({std::fmin(ring[k].lon, ring[k + 1].lon), std::fmax(ring[k].lon, ring[k + 1].lon),
                         offset + static_cast<std::uint32_t>(k)});
  };
  add(r1, 0);
  add(r2, n1);
  detail::overlapping_intervals(std::move(spans), kEpsilon, [&](std::uint32_t x, std::uint32_t y) {
    if ((x < n1) == (y < n1)) return;
    const std::uint32_t i = std::min(x, y);
    const std::uint32_t j = std::max(x, y) - n1;
    const Point a = r1[i], b = r1[i + 1];
    const Point c = r2[j], d = r2[j + 1];
    if (!detail::boxes_overlap(a, b, c, d)) return;
    const auto hit = detail::intersect_segments(a, b, c, d);
    if (hit.count >= 2) invalid("polygon rings share an edge");
    if (hit.count == 1) {
      const Point p = hit.points[0];
      const bool at_vertex = detail::coincident(p, a) || detail::coincident(p, b) ||
                             detail::coincident(p, c) || detail::coincident(p, d);
      if (!at_vertex) invalid("polygon rings cross");
    }
  });
}

bool wraps(const Ring& ring) {
  for (std::size_t k = 0; k + 1 < ring.size(); ++k)
    if (std::abs(ring[k + 1].lon - ring[k].lon) > 180.0) return true;
  return false;
}

// Continuous longitudes for a ring that jumps across +-180.
Ring unwrapped(const Ring& ring) {
  Ring out;
  out.reserve(ring.size());
  double offset = 0.0;
  for (std::size_t k = 0; k < ring.size(); ++k) {
    if (k > 0) {
      const double step = ring[k].lon - ring[k - 1].lon;
      if (step > 180.0) offset -= 360.0;
      else if (step < -180.0) offset += 360.0;
    }
    out.push_back({ring[k].lon + offset, ring[k].lat});
  }
  if (offset != 0.0) invalid("ring winds around a pole");
  return out;
}

void check_polygon(const Polygon& polygon) {
  if (polygon.rings.empty()) invalid("polygon without rings");
  for (const Ring& ring : polygon.rings) check_point_range(ring);
  const bool any_wrap = std::any_of(polygon.rings.begin(), polygon.rings.end(), wraps);
  std::vector<Ring> rings;
  rings.reserve(polygon.rings.size());
  for (const Ring& ring : polygon.rings) rings.push_back(any_wrap ? unwrapped(ring) : ring);
  if (any_wrap) {
    // Put every ring on the shell's sheet.
    const double center = 0.5 * (mbb(rings.front()).lon_min + mbb(rings.front()).lon_max);
    for (Ring& ring : rings) {
      const double mid = 0.5 * (mbb(ring).lon_min + mbb(ring).lon_max);
      const double shift = 360.0 * std::round((center - mid) / 360.0);
      for (Point& p : ring) p.lon += shift;
    }
  }
  for (const Ring& ring : rings) check_ring(ring);
  try {
    for (std::size_t i = 0; i < rings.size(); ++i)
      for (std::size_t j = i + 1; j < rings.size(); ++j) check_ring_pair(rings[i], rings[j]);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::numerical_degeneracy) invalid(std::string("rings are degenerate: ") + e.what());
    throw;
  }
}

}  // namespace

Geometry::Geometry(GeometryKind kind, std::vector<Point> points, std::vector<LineString> lines,
                   std::vector<Polygon> polygons)
    : kind_(kind), points_(std::move(points)), lines_(std::move(lines)), polygons_(std::move(polygons)) {}

Geometry Geometry::point(Point p) {
  check_point(p);
  return Geometry(GeometryKind::point, {p}, {}, {});
}

Geometry Geometry::line_string(LineString line) {
  check_line(line);
  return Geometry(GeometryKind::line_string, {}, {std::move(line)}, {});
}

Geometry Geometry::polygon(Polygon polygon) {
  check_polygon(polygon);
  return Geometry(GeometryKind::polygon, {}, {}, {std::move(polygon)});
}

Geometry Geometry::multi_point(std::vector<Point> points) {
  if (points.empty()) invalid("multipoint without members");
  for (const Point& p : points) check_point(p);
  return Geometry(GeometryKind::multi_point, std::move(points), {}, {});
}

Geometry Geometry::multi_line_string(std::vector<LineString> lines) {
  if (lines.empty()) invalid("multilinestring without members");
  for (const LineString& line : lines) check_line(line);
  return Geometry(GeometryKind::multi_line_string, {}, std::move(lines), {});
}

Geometry Geometry::multi_polygon(std::vector<Polygon> polygons) {
  if (polygons.empty()) invalid("multipolygon without members");
  for (const Polygon& polygon : polygons) check_polygon(polygon);
  return Geometry(GeometryKind::multi_polygon, {}, {}, std::move(polygons));
}

bool Geometry::is_multi() const noexcept {
  return kind_ == GeometryKind::multi_point || kind_ == GeometryKind::multi_line_string ||
         kind_ == GeometryKind::multi_polygon;
}

std::size_t Geometry::vertex_count() const noexcept {
  std::size_t n = 0;
  for_each_vertex([&](const Point&) { ++n; });
  return n;
}

MBB mbb(std::span<const Point> points) {
  MBB box = MBB::of(points.front());
  for (const Point& p : points.subspan(1)) box.expand(p);
  return box;
}

MBB mbb(const Geometry& g) {
  bool first = true;
  MBB box;
  g.for_each_vertex([&](const Point& p) {
    if (first) {
      box = MBB::of(p);
      first = false;
    } else {
      box.expand(p);
    }
  });
  return box;
}

}  // namespace radon
