#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace radon {

/// Absolute coincidence tolerance in degrees, shared by every geometric test.
inline constexpr double kEpsilon = 1e-12;

/// Planar coordinate, longitude first (WKT axis order).
struct Point {
  double lon{};
  double lat{};

  friend bool operator==(const Point&, const Point&) = default;
};

using LineString = std::vector<Point>;
using Ring = std::vector<Point>;

/// rings[0] is the shell, the rest are holes. Interiors follow the even-odd rule.
struct Polygon {
  std::vector<Ring> rings;

  const Ring& shell() const { return rings.front(); }

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

enum class GeometryKind : std::uint8_t {
  point,
  line_string,
  polygon,
  multi_point,
  multi_line_string,
  multi_polygon,
};

std::string_view to_string(GeometryKind kind) noexcept;

/// Topological dimension: 0 for points, 1 for lines, 2 for polygons.
int dimension(GeometryKind kind) noexcept;

/// Axis-aligned bounding box.
struct MBB {
  double lon_min{};
  double lat_min{};
  double lon_max{};
  double lat_max{};

  double width() const noexcept { return lon_max - lon_min; }
  double height() const noexcept { return lat_max - lat_min; }

  bool intersects(const MBB& other, double tolerance = kEpsilon) const noexcept {
    return lon_min <= other.lon_max + tolerance && other.lon_min <= lon_max + tolerance &&
           lat_min <= other.lat_max + tolerance && other.lat_min <= lat_max + tolerance;
  }

  /// True if `other` lies inside this box, allowing `tolerance` of slack on each edge.
  bool contains(const MBB& other, double tolerance = kEpsilon) const noexcept {
    return lon_min <= other.lon_min + tolerance && lat_min <= other.lat_min + tolerance &&
           other.lon_max <= lon_max + tolerance && other.lat_max <= lat_max + tolerance;
  }

  bool contains(Point p, double tolerance = kEpsilon) const noexcept {
    return lon_min <= p.lon + tolerance && p.lon <= lon_max + tolerance &&
           lat_min <= p.lat + tolerance && p.lat <= lat_max + tolerance;
  }

  void expand(Point p) noexcept;
  void expand(const MBB& other) noexcept;

  static MBB of(Point p) noexcept { return {p.lon, p.lat, p.lon, p.lat}; }

  friend bool operator==(const MBB&, const MBB&) = default;
};

/// A validated vector geometry. Construction goes through the named factories,
/// which throw Error(invalid_geometry) when an invariant does not hold.
class Geometry {
 public:
  static Geometry point(Point p);
  static Geometry line_string(LineString line);
  static Geometry polygon(Polygon polygon);
  static Geometry multi_point(std::vector<Point> points);
  static Geometry multi_line_string(std::vector<LineString> lines);
  static Geometry multi_polygon(std::vector<Polygon> polygons);

  GeometryKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return radon::dimension(kind_); }
  bool is_multi() const noexcept;

  /// Members of Point / MultiPoint geometries.
  std::span<const Point> points() const noexcept { return points_; }
  /// Members of LineString / MultiLineString geometries.
  std::span<const LineString> lines() const noexcept { return lines_; }
  /// Members of Polygon / MultiPolygon geometries.
  std::span<const Polygon> polygons() const noexcept { return polygons_; }

  template <typename Fn>
  void for_each_vertex(Fn&& fn) const {
    for (const Point& p : points_) fn(p);
    for (const LineString& line : lines_)
      for (const Point& p : line) fn(p);
    for (const Polygon& poly : polygons_)
      for (const Ring& ring : poly.rings)
        for (const Point& p : ring) fn(p);
  }

  std::size_t vertex_count() const noexcept;

  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  Geometry(GeometryKind kind, std::vector<Point> points, std::vector<LineString> lines,
           std::vector<Polygon> polygons);

  GeometryKind kind_{GeometryKind::point};
  std::vector<Point> points_;
  std::vector<LineString> lines_;
  std::vector<Polygon> polygons_;
};

/// Tight bounding box of the geometry. A point yields a degenerate box.
MBB mbb(const Geometry& g);
MBB mbb(std::span<const Point> points);

/// Twice the signed area of a closed ring (positive for counter-clockwise).
double signed_area2(std::span<const Point> ring) noexcept;

}  // namespace radon
