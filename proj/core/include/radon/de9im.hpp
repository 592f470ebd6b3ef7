#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radon/geometry.hpp"

namespace radon {

/// Point-set part of a geometry. Rows and columns of the matrix follow this order.
enum class Location : std::uint8_t { interior = 0, boundary = 1, exterior = 2 };

/// Dimensionally extended nine-intersection matrix. Entries are -1 (empty),
/// 0, 1 or 2. Rows index the first geometry, columns the second.
class De9imMatrix {
 public:
  De9imMatrix() { cells_.fill(-1); }

  /// Builds a matrix from nine symbols over {F,0,1,2}, row-major.
  static De9imMatrix from_string(std::string_view code);

  int operator()(Location a, Location b) const noexcept { return cells_[index(a, b)]; }

  /// Raises an entry to at least `dim`.
  void raise(Location a, Location b, int dim) noexcept {
    auto& cell = cells_[index(a, b)];
    if (dim > cell) cell = static_cast<std::int8_t>(dim);
  }

  De9imMatrix transposed() const noexcept;

  /// Row-major nine-character code, "F" for empty entries.
  std::string str() const;

  /// Matches a nine-symbol pattern over {T,F,0,1,2,*} (case-insensitive).
  /// Throws Error(invalid_mask) for malformed patterns.
  bool matches(std::string_view mask) const;

  friend bool operator==(const De9imMatrix&, const De9imMatrix&) = default;

 private:
  static constexpr std::size_t index(Location a, Location b) noexcept {
    return static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(b);
  }

  std::array<std::int8_t, 9> cells_{};
};

/// Throws Error(invalid_mask) unless `mask` has exactly nine symbols from {T,F,0,1,2,*}.
void validate_mask(std::string_view mask);

/// Edge/vertex view of a geometry with a point-location query, built once and
/// reused across many matrix computations.
class PreparedGeometry {
 public:
  struct Edge {
    Point a;
    Point b;
    MBB box;
    std::uint32_t member = 0;
    bool interior_left = false;  // polygons only: the interior lies left of a->b
  };

  explicit PreparedGeometry(const Geometry& g);

  int dimension() const noexcept { return dimension_; }
  const MBB& envelope() const noexcept { return envelope_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Every vertex, including isolated points.
  std::span<const Point> vertices() const noexcept { return vertices_; }
  /// Isolated points of Point / MultiPoint geometries.
  std::span<const Point> points() const noexcept { return points_; }

  /// Line end points lying strictly inside one of the geometry's own edges,
  /// keyed by edge index.
  std::span<const std::pair<std::uint32_t, Point>> end_stops() const noexcept { return end_stops_; }

  Location locate(Point p) const noexcept;

  /// Edges are bucketed into horizontal strips of the envelope. An edge is
  /// listed, in index order, in every strip its latitude range (widened by
  /// kEpsilon) meets, so any point within kEpsilon of an edge, and any
  /// horizontal ray crossing it, finds it in strip_of(lat).
  std::size_t strip_count() const noexcept { return strip_offsets_.size() - 1; }
  std::size_t strip_of(double lat) const noexcept;
  std::span<const std::uint32_t> strip_edges(std::size_t strip) const noexcept {
    return std::span<const std::uint32_t>(strip_edges_).subspan(strip_offsets_[strip],
                                                                strip_offsets_[strip + 1] - strip_offsets_[strip]);
  }

 private:
  struct Member {
    std::size_t first_edge = 0;
    std::size_t last_edge = 0;  // one past
    MBB box;
    Point start;                // line members: end points
    Point end;
    bool closed = false;
  };

  Location locate_line(Point p) const noexcept;
  Location locate_area(Point p) const noexcept;
  void build_strips();

  int dimension_ = 0;
  MBB envelope_;
  std::vector<Edge> edges_;
  std::vector<Point> vertices_;
  std::vector<Point> points_;
  std::vector<Member> members_;
  std::vector<std::pair<std::uint32_t, Point>> end_stops_;
  double strip_base_ = 0.0;
  double strip_height_ = 0.0;
  std::vector<std::size_t> strip_offsets_{0, 0};
  std::vector<std::uint32_t> strip_edges_;
};

/// Exact-topology intersection matrix of two valid geometries (floating point
/// with kEpsilon snapping). Throws Error(numerical_degeneracy) when the
/// arrangement cannot be resolved within tolerance.
De9imMatrix de9im(const PreparedGeometry& g1, const PreparedGeometry& g2);
De9imMatrix de9im(const Geometry& g1, const Geometry& g2);

/// de9im(g1, g2).matches(mask).
bool relate(const Geometry& g1, const Geometry& g2, std::string_view mask);

}  // namespace radon
