#include "radon/de9im.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "primitives.hpp"
#include "radon/error.hpp"

namespace radon {

// ---------------------------------------------------------------------------
// Matrix

De9imMatrix De9imMatrix::from_string(std::string_view code) {
  if (code.size() != 9) throw Error(ErrorCode::invalid_mask, "matrix code needs 9 symbols: " + std::string(code));
  De9imMatrix m;
  for (std::size_t k = 0; k < 9; ++k) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(code[k])));
    if (c == 'F') m.cells_[k] = -1;
    else if (c >= '0' && c <= '2') m.cells_[k] = static_cast<std::int8_t>(c - '0');
    else throw Error(ErrorCode::invalid_mask, "bad matrix symbol in " + std::string(code));
  }
  return m;
}

De9imMatrix De9imMatrix::transposed() const noexcept {
  De9imMatrix t;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) t.cells_[c * 3 + r] = cells_[r * 3 + c];
  return t;
}

std::string De9imMatrix::str() const {
  std::string out(9, 'F');
  for (std::size_t k = 0; k < 9; ++k)
    if (cells_[k] >= 0) out[k] = static_cast<char>('0' + cells_[k]);
  return out;
}

void validate_mask(std::string_view mask) {
  if (mask.size() != 9) throw Error(ErrorCode::invalid_mask, "mask needs 9 symbols: '" + std::string(mask) + "'");
  for (char raw : mask) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    if (c != 'T' && c != 'F' && c != '*' && (c < '0' || c > '2'))
      throw Error(ErrorCode::invalid_mask, "bad mask symbol '" + std::string(1, raw) + "'");
  }
}

bool De9imMatrix::matches(std::string_view mask) const {
  validate_mask(mask);
  for (std::size_t k = 0; k < 9; ++k) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(mask[k])));
    const int v = cells_[k];
    switch (c) {
      case '*': break;
      case 'T':
        if (v < 0) return false;
        break;
      case 'F':
        if (v >= 0) return false;
        break;
      default:
        if (v != c - '0') return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Prepared geometry

namespace {

bool inside_even_odd(std::span<const Point> ring, Point p) noexcept {
  bool inside = false;
  for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
    const Point a = ring[k], b = ring[k + 1];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

bool on_ring(std::span<const Point> ring, Point p) noexcept {
  for (std::size_t k = 0; k + 1 < ring.size(); ++k)
    if (detail::on_segment(p, ring[k], ring[k + 1])) return true;
  return false;
}

// Even-odd nesting depth of `ring` among the other rings of the same polygon.
int nesting_depth(const Polygon& polygon, std::size_t which) {
  const Ring& ring = polygon.rings[which];
  int depth = 0;
  for (std::size_t q = 0; q < polygon.rings.size(); ++q) {
    if (q == which) continue;
    const Ring& other = polygon.rings[q];
    // Rings never cross, so any point of `ring` off `other` decides containment.
    bool decided = false;
    for (std::size_t k = 0; k + 1 < ring.size() && !decided; ++k) {
      for (const Point p : {ring[k], detail::midpoint(ring[k], ring[k + 1])}) {
        if (on_ring(other, p)) continue;
        if (inside_even_odd(other, p)) ++depth;
        decided = true;
        break;
      }
    }
  }
  return depth;
}

}  // namespace

PreparedGeometry::PreparedGeometry(const Geometry& g) : dimension_(g.dimension()), envelope_(mbb(g)) {
  g.for_each_vertex([&](const Point& p) { vertices_.push_back(p); });
  points_.assign(g.points().begin(), g.points().end());

  auto push_edge = [&](Point a, Point b, std::uint32_t member, bool interior_left) {
    if (detail::coincident(a, b)) return;
    MBB box = MBB::of(a);
    box.expand(b);
    edges_.push_back({a, b, box, member, interior_left});
  };

  if (dimension_ == 1) {
    for (const LineString& line : g.lines()) {
      Member m;
      m.first_edge = edges_.size();
      const auto id = static_cast<std::uint32_t>(members_.size());
      for (std::size_t k = 0; k + 1 < line.size(); ++k) push_edge(line[k], line[k + 1], id, false);
      m.last_edge = edges_.size();
      m.box = mbb(line);
      m.start = line.front();
      m.end = line.back();
      m.closed = detail::coincident(m.start, m.end);
      members_.push_back(m);
    }
    build_strips();
    for (const Member& m : members_) {
      if (m.closed) continue;
      for (const Point p : {m.start, m.end})
        for (const std::uint32_t k : strip_edges(strip_of(p.lat))) {
          const Edge& e = edges_[k];
          if (e.box.contains(p) && detail::on_segment(p, e.a, e.b) && !detail::coincident(p, e.a) &&
              !detail::coincident(p, e.b))
            end_stops_.emplace_back(k, p);
        }
    }
    std::sort(end_stops_.begin(), end_stops_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  } else if (dimension_ == 2) {
    for (const Polygon& polygon : g.polygons()) {
      Member m;
      m.first_edge = edges_.size();
      const auto id = static_cast<std::uint32_t>(members_.size());
      for (std::size_t r = 0; r < polygon.rings.size(); ++r) {
        const Ring& ring = polygon.rings[r];
        const bool ccw = signed_area2(ring) > 0.0;
        const bool bounds_interior = nesting_depth(polygon, r) % 2 == 0;
        const bool interior_left = bounds_interior == ccw;
        for (std::size_t k = 0; k + 1 < ring.size(); ++k) push_edge(ring[k], ring[k + 1], id, interior_left);
      }
      m.last_edge = edges_.size();
      m.box = mbb(polygon.shell());
      for (std::size_t r = 1; r < polygon.rings.size(); ++r) m.box.expand(mbb(polygon.rings[r]));
      members_.push_back(m);
    }
    build_strips();
  }
}

void PreparedGeometry::build_strips() {
  const std::size_t count = std::clamp<std::size_t>(edges_.size() / 8, 1, 1024);
  strip_base_ = envelope_.lat_min;
  strip_height_ = envelope_.height() / static_cast<double>(count);
  strip_offsets_.assign(count + 1, 0);
  if (!(strip_height_ > 0.0)) strip_offsets_.assign(2, 0);

  auto span_of = [&](const Edge& e) {
    return std::pair{strip_of(e.box.lat_min - kEpsilon), strip_of(e.box.lat_max + kEpsilon)};
  };
  for (const Edge& e : edges_) {
    const auto [lo, hi] = span_of(e);
    for (std::size_t s = lo; s <= hi; ++s) ++strip_offsets_[s + 1];
  }
  for (std::size_t s = 1; s < strip_offsets_.size(); ++s) strip_offsets_[s] += strip_offsets_[s - 1];
  strip_edges_.resize(strip_offsets_.back());
  std::vector<std::size_t> fill(strip_offsets_.begin(), strip_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto [lo, hi] = span_of(edges_[k]);
    for (std::size_t s = lo; s <= hi; ++s) strip_edges_[fill[s]++] = static_cast<std::uint32_t>(k);
  }
}

std::size_t PreparedGeometry::strip_of(double lat) const noexcept {
  const std::size_t count = strip_count();
  if (count == 1) return 0;
  const double t = std::floor((lat - strip_base_) / strip_height_);
  if (!(t > 0.0)) return 0;
  if (t >= static_cast<double>(count - 1)) return count - 1;
  return static_cast<std::size_t>(t);
}

Location PreparedGeometry::locate(Point p) const noexcept {
  if (!envelope_.contains(p)) return Location::exterior;
  switch (dimension_) {
    case 0:
      for (const Point& q : points_)
        if (detail::coincident(p, q)) return Location::interior;
      return Location::exterior;
    case 1: return locate_line(p);
    default: return locate_area(p);
  }
}

namespace {

// Position of the first strip entry past the edges of the member owning near[k].
std::size_t skip_member(std::span<const std::uint32_t> near, std::size_t k, std::size_t last_edge) noexcept {
  return static_cast<std::size_t>(std::lower_bound(near.begin() + static_cast<std::ptrdiff_t>(k), near.end(),
                                                   last_edge) - near.begin());
}

}  // namespace

// Within one linestring an end point is boundary; across members interior wins.
Location PreparedGeometry::locate_line(Point p) const noexcept {
  const auto near = strip_edges(strip_of(p.lat));
  bool boundary = false;
  for (std::size_t k = 0; k < near.size();) {
    const Member& m = members_[edges_[near[k]].member];
    if (!m.box.contains(p)) {
      k = skip_member(near, k, m.last_edge);
      continue;
    }
    if (!m.closed && (detail::coincident(p, m.start) || detail::coincident(p, m.end))) {
      boundary = true;
      k = skip_member(near, k, m.last_edge);
      continue;
    }
    for (; k < near.size() && near[k] < m.last_edge; ++k)
      if (detail::on_segment(p, edges_[near[k]].a, edges_[near[k]].b)) return Location::interior;
  }
  return boundary ? Location::boundary : Location::exterior;
}

Location PreparedGeometry::locate_area(Point p) const noexcept {
  const auto near = strip_edges(strip_of(p.lat));
  bool boundary = false;
  for (std::size_t k = 0; k < near.size();) {
    const Member& m = members_[edges_[near[k]].member];
    if (!m.box.contains(p)) {
      k = skip_member(near, k, m.last_edge);
      continue;
    }
    bool on_edge = false;
    bool inside = false;
    for (; k < near.size() && near[k] < m.last_edge; ++k) {
      const Point a = edges_[near[k]].a, b = edges_[near[k]].b;
      if (detail::on_segment(p, a, b)) {
        on_edge = true;
        k = skip_member(near, k, m.last_edge);
        break;
      }
      if ((a.lat > p.lat) != (b.lat > p.lat)) {
        const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
        if (p.lon < x) inside = !inside;
      }
    }
    if (on_edge) boundary = true;
    else if (inside) return Location::interior;
  }
  return boundary ? Location::boundary : Location::exterior;
}

// ---------------------------------------------------------------------------
// Matrix computation
//
// Every segment of either geometry is split at the points where it meets the
// other geometry. Vertices and split points give the 0-dimensional entries,
// the open pieces between split points the 1-dimensional ones, and for two
// areal geometries the faces on either side of each boundary piece give the
// 2-dimensional ones. Every bounded face of the overlay touches some piece,
// so this enumerates all non-empty entries.

namespace {

using Edge = PreparedGeometry::Edge;

constexpr Location kI = Location::interior;
constexpr Location kB = Location::boundary;
constexpr Location kE = Location::exterior;

constexpr Location flip(Location l) noexcept { return l == kI ? kE : kI; }

class MatrixBuilder {
 public:
  MatrixBuilder(const PreparedGeometry& first, const PreparedGeometry& second) : first_(first), second_(second) {}

  De9imMatrix run() {
    matrix_.raise(kE, kE, 2);
    split_edges();
    classify_nodes();
    classify_pieces(first_, second_, split_first_, true);
    classify_pieces(second_, first_, split_second_, false);

    const bool areal_first = first_.dimension() == 2;
    const bool areal_second = second_.dimension() == 2;
    // Lower-dimensional sets cannot cover an area.
    if (areal_first && !areal_second) matrix_.raise(kI, kE, 2);
    if (areal_second && !areal_first) matrix_.raise(kE, kI, 2);
    return matrix_;
  }

 private:
  void raise(Location self, Location other, int dim, bool self_is_first) {
    if (self_is_first) matrix_.raise(self, other, dim);
    else matrix_.raise(other, self, dim);
  }

  void split_edges() {
    const auto edges1 = first_.edges();
    const auto edges2 = second_.edges();
    split_first_.assign(edges1.size(), {});
    split_second_.assign(edges2.size(), {});
    for (const auto& [k, p] : first_.end_stops()) split_first_[k].push_back(p);
    for (const auto& [k, p] : second_.end_stops()) split_second_[k].push_back(p);
    if (!first_.envelope().intersects(second_.envelope())) return;

    for (std::size_t i = 0; i < edges1.size(); ++i) {
      const Edge& e = edges1[i];
      if (!e.box.intersects(second_.envelope())) continue;
      const std::size_t lo = second_.strip_of(e.box.lat_min - kEpsilon);
      const std::size_t hi = second_.strip_of(e.box.lat_max + kEpsilon);
      for (std::size_t s = lo; s <= hi; ++s) {
        for (const std::uint32_t j : second_.strip_edges(s)) {
          const Edge& f = edges2[j];
          // Visit each pair once: in the lowest strip both edges share.
          if (s != std::max(lo, second_.strip_of(f.box.lat_min - kEpsilon))) continue;
          if (!e.box.intersects(f.box)) continue;
          const auto hit = detail::intersect_segments(e.a, e.b, f.a, f.b);
          for (int k = 0; k < hit.count; ++k) {
            nodes_.push_back(hit.points[k]);
            split_first_[i].push_back(hit.points[k]);
            split_second_[j].push_back(hit.points[k]);
          }
        }
      }
    }
    split_at_points(second_.points(), first_, split_first_);
    split_at_points(first_.points(), second_, split_second_);
  }

  static void split_at_points(std::span<const Point> points, const PreparedGeometry& owner,
                              std::vector<std::vector<Point>>& splits) {
    const auto edges = owner.edges();
    for (const Point& p : points)
      for (const std::uint32_t k : owner.strip_edges(owner.strip_of(p.lat)))
        if (edges[k].box.contains(p) && detail::on_segment(p, edges[k].a, edges[k].b)) splits[k].push_back(p);
  }

  void classify_nodes() {
    auto classify = [&](Point p) { matrix_.raise(first_.locate(p), second_.locate(p), 0); };
    for (const Point& p : first_.vertices()) classify(p);
    for (const Point& p : second_.vertices()) classify(p);
    for (const Point& p : nodes_) classify(p);
  }

  void classify_pieces(const PreparedGeometry& self, const PreparedGeometry& other,
                       std::vector<std::vector<Point>>& splits, bool self_is_first) {
    const auto edges = self.edges();
    std::vector<std::pair<double, Point>> stops;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge& e = edges[k];
      stops.clear();
      for (const Point& p : splits[k]) stops.emplace_back(detail::project(p, e.a, e.b), p);
      std::sort(stops.begin(), stops.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

      Point prev = e.a;
      for (const auto& [t, p] : stops) {
        if (t <= 0.0 || t >= 1.0 || detail::coincident(p, e.b)) continue;
        if (detail::coincident(prev, p)) continue;
        classify_piece(self, other, e, prev, p, self_is_first);
        prev = p;
      }
      if (!detail::coincident(prev, e.b)) classify_piece(self, other, e, prev, e.b, self_is_first);
    }
  }

  void classify_piece(const PreparedGeometry& self, const PreparedGeometry& other, const Edge& e, Point p,
                      Point q, bool self_is_first) {
    const Point mid = detail::midpoint(p, q);
    const Location at_self = self.locate(mid);
    const Location at_other = other.locate(mid);
    raise(at_self, at_other, 1, self_is_first);

    if (self.dimension() != 2 || other.dimension() != 2) return;

    const Location self_left = e.interior_left ? kI : kE;
    const Location self_right = flip(self_left);
    Location other_left = at_other;
    Location other_right = at_other;
    if (at_other == kB) {
      const Edge* along = nullptr;
      for (const std::uint32_t k : other.strip_edges(other.strip_of(mid.lat))) {
        const Edge& f = other.edges()[k];
        if (!f.box.contains(mid)) continue;
        if (detail::on_segment(p, f.a, f.b, 2 * kEpsilon) && detail::on_segment(q, f.a, f.b, 2 * kEpsilon)) {
          along = &f;
          break;
        }
      }
      if (along == nullptr)
        throw Error(ErrorCode::numerical_degeneracy, "boundary piece has no collinear partner edge");
      const bool same_direction = detail::dot(Point{}, Point{e.b.lon - e.a.lon, e.b.lat - e.a.lat},
                                              Point{along->b.lon - along->a.lon, along->b.lat - along->a.lat}) > 0.0;
      const bool other_interior_left = along->interior_left == same_direction;
      other_left = other_interior_left ? kI : kE;
      other_right = flip(other_left);
    }
    raise(self_left, other_left, 2, self_is_first);
    raise(self_right, other_right, 2, self_is_first);
  }

  const PreparedGeometry& first_;
  const PreparedGeometry& second_;
  De9imMatrix matrix_;
  std::vector<Point> nodes_;
  std::vector<std::vector<Point>> split_first_;
  std::vector<std::vector<Point>> split_second_;
};

}  // namespace

De9imMatrix de9im(const PreparedGeometry& g1, const PreparedGeometry& g2) { return MatrixBuilder(g1, g2).run(); }

De9imMatrix de9im(const Geometry& g1, const Geometry& g2) {
  return de9im(PreparedGeometry(g1), PreparedGeometry(g2));
}

bool relate(const Geometry& g1, const Geometry& g2, std::string_view mask) {
  validate_mask(mask);
  return de9im(g1, g2).matches(mask);
}

}  // namespace radon
