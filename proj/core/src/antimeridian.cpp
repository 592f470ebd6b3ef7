#include <algorithm>
#include <cmath>
#include <utility>

#include "primitives.hpp"
#include "radon/error.hpp"
#include "radon/tiling.hpp"

namespace radon {
namespace {

constexpr double kCut = 180.0;

// Points below are in "unwrapped" coordinates: longitudes are made continuous
// along each sequence and shifted so that a crossing sequence straddles +180.
using Sequence = std::vector<Point>;

bool crosses(std::span<const Point> seq) {
  for (std::size_t k = 0; k + 1 < seq.size(); ++k)
    if (std::abs(seq[k + 1].lon - seq[k].lon) > 180.0) return true;
  return false;
}

bool crosses(const Geometry& g) {
  for (const LineString& line : g.lines())
    if (crosses(line)) return true;
  for (const Polygon& poly : g.polygons())
    for (const Ring& ring : poly.rings)
      if (crosses(ring)) return true;
  return false;
}

// Returns false when the sequence does not close up again after unwrapping
// (a ring around a pole); such rings keep their planar reading.
bool unwrap(const Sequence& in, Sequence& out, bool must_close) {
  out.clear();
  out.reserve(in.size());
  double offset = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (k > 0) {
      const double step = in[k].lon - in[k - 1].lon;
      if (step > 180.0) offset -= 360.0;
      else if (step < -180.0) offset += 360.0;
    }
    out.push_back({in[k].lon + offset, in[k].lat});
  }
  if (must_close && offset != 0.0) return false;
  const auto [lo, hi] = std::minmax_element(out.begin(), out.end(),
                                            [](const Point& a, const Point& b) { return a.lon < b.lon; });
  if (lo->lon < -kCut) {
    for (Point& p : out) p.lon += 360.0;
  } else if (hi->lon <= kCut && lo->lon < 0.0 && crosses(in)) {
    for (Point& p : out) p.lon += 360.0;
  }
  return true;
}

bool keep(double x, bool east) { return east ? x <= kCut : x >= kCut; }

// Crossing of segment u-w with the cut line, computed from the western end so
// both sides obtain the identical point.
Point cut_point(Point u, Point w) {
  if (u.lon > w.lon) std::swap(u, w);
  if (u.lon == kCut) return u;
  if (w.lon == kCut) return w;
  const double t = (kCut - u.lon) / (w.lon - u.lon);
  return {kCut, u.lat + t * (w.lat - u.lat)};
}

void push_unique(Sequence& seq, Point p) {
  if (seq.empty() || !(seq.back() == p)) seq.push_back(p);
}

std::vector<Sequence> clip_polyline(const Sequence& line, bool east) {
  std::vector<Sequence> pieces;
  Sequence current;
  auto flush = [&] {
    if (current.size() >= 2) pieces.push_back(current);
    current.clear();
  };
  for (std::size_t k = 0; k + 1 < line.size(); ++k) {
    const Point u = line[k], w = line[k + 1];
    const bool ku = keep(u.lon, east), kw = keep(w.lon, east);
    if (ku && kw) {
      push_unique(current, u);
      push_unique(current, w);
    } else if (ku) {
      push_unique(current, u);
      push_unique(current, cut_point(u, w));
      flush();
    } else if (kw) {
      flush();
      push_unique(current, cut_point(u, w));
      push_unique(current, w);
    }
  }
  flush();
  return pieces;
}

// Clips an even-odd region given by `rings` to one side of the cut. Each ring
// is broken into chains that start and end on the cut line; consecutive
// crossings along the line (sorted by latitude) bound the inside stretches of
// the line, and walking chain -> stretch -> chain closes the output rings.
std::vector<Sequence> clip_rings(const std::vector<Sequence>& rings, bool east) {
  std::vector<Sequence> out;
  std::vector<Sequence> chains;

  for (const Sequence& ring : rings) {
    const std::size_t n = ring.size() - 1;
    std::size_t outside = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!keep(ring[k].lon, east)) {
        outside = k;
        break;
      }
    if (outside == n) {
      out.push_back(ring);
      continue;
    }
    Sequence chain;
    bool open = false;
    for (std::size_t step = 0; step < n; ++step) {
      const Point u = ring[(outside + step) % n];
      const Point w = ring[(outside + step + 1) % n];
      const bool ku = keep(u.lon, east), kw = keep(w.lon, east);
      if (!ku && kw) {
        chain.clear();
        push_unique(chain, cut_point(u, w));
        push_unique(chain, w);
        open = true;
      } else if (ku && kw) {
        push_unique(chain, w);
      } else if (ku && !kw) {
        push_unique(chain, cut_point(u, w));
        if (open && chain.size() >= 2) chains.push_back(chain);
        open = false;
      }
    }
  }

  struct Stop {
    double lat;
    std::size_t chain;
    bool at_start;
  };
  std::vector<Stop> stops;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    stops.push_back({chains[c].front().lat, c, true});
    stops.push_back({chains[c].back().lat, c, false});
  }
  std::stable_sort(stops.begin(), stops.end(), [](const Stop& a, const Stop& b) { return a.lat < b.lat; });
  std::vector<std::size_t> start_slot(chains.size()), end_slot(chains.size());
  for (std::size_t s = 0; s < stops.size(); ++s)
    (stops[s].at_start ? start_slot : end_slot)[stops[s].chain] = s;

  std::vector<bool> used(chains.size(), false);
  for (std::size_t first = 0; first < chains.size(); ++first) {
    if (used[first]) continue;
    Sequence ring;
    std::size_t chain = first;
    bool forward = true;
    while (!used[chain]) {
      used[chain] = true;
      const Sequence& pts = chains[chain];
      if (forward) for (const Point& p : pts) push_unique(ring, p);
      else for (auto it = pts.rbegin(); it != pts.rend(); ++it) push_unique(ring, *it);
      const std::size_t exit_slot = forward ? end_slot[chain] : start_slot[chain];
      const Stop& partner = stops[exit_slot ^ 1u];
      chain = partner.chain;
      forward = partner.at_start;
    }
    if (ring.size() >= 3) {
      push_unique(ring, ring.front());
      if (ring.size() >= 4 && std::abs(signed_area2(ring)) > kEpsilon) out.push_back(std::move(ring));
    }
  }
  return out;
}

bool ring_inside(const Sequence& inner, const Sequence& outer) {
  for (std::size_t k = 0; k + 1 < inner.size(); ++k) {
    for (const Point p : {inner[k], detail::midpoint(inner[k], inner[k + 1])}) {
      bool on = false;
      for (std::size_t q = 0; q + 1 < outer.size() && !on; ++q) on = detail::on_segment(p, outer[q], outer[q + 1]);
      if (on) continue;
      bool inside = false;
      for (std::size_t q = 0; q + 1 < outer.size(); ++q) {
        const Point a = outer[q], b = outer[q + 1];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
          const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
          if (p.lon < x) inside = !inside;
        }
      }
      return inside;
    }
  }
  return false;
}

// Groups rings into polygons by even-odd nesting depth.
std::vector<Polygon> assemble(std::vector<Sequence> rings) {
  const std::size_t n = rings.size();
  std::vector<int> depth(n, 0);
  std::vector<std::vector<std::size_t>> containers(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && ring_inside(rings[a], rings[b])) {
        ++depth[a];
        containers[a].push_back(b);
      }
  std::vector<Polygon> polygons;
  std::vector<std::size_t> polygon_of(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    if (depth[a] % 2 == 0) {
      polygon_of[a] = polygons.size();
      polygons.push_back(Polygon{{rings[a]}});
    }
  for (std::size_t a = 0; a < n; ++a) {
    if (depth[a] % 2 == 0) continue;
    for (std::size_t b : containers[a])
      if (depth[b] == depth[a] - 1) {
        polygons[polygon_of[b]].rings.push_back(rings[a]);
        break;
      }
  }
  return polygons;
}

Point to_output(Point p, bool east) {
  if (east) return p;
  return {p.lon - 360.0, p.lat};
}

Sequence to_output(Sequence seq, bool east) {
  for (Point& p : seq) p = to_output(p, east);
  return seq;
}

double center_lon(std::span<const Point> seq) {
  const MBB box = mbb(seq);
  return 0.5 * (box.lon_min + box.lon_max);
}

struct Sides {
  std::vector<Point> points[2];
  std::vector<LineString> lines[2];
  std::vector<Polygon> polygons[2];
};

void split_line(const LineString& line, Sides& sides) {
  Sequence unwrapped;
  if (!crosses(line)) {
    sides.lines[center_lon(line) >= 0.0 ? 0 : 1].push_back(line);
    return;
  }
  unwrap(line, unwrapped, false);
  for (int side = 0; side < 2; ++side)
    for (Sequence& piece : clip_polyline(unwrapped, side == 0))
      sides.lines[side].push_back(to_output(std::move(piece), side == 0));
}

void split_polygon(const Polygon& polygon, Sides& sides) {
  bool any = false;
  for (const Ring& ring : polygon.rings) any = any || crosses(ring);
  if (!any) {
    sides.polygons[center_lon(polygon.shell()) >= 0.0 ? 0 : 1].push_back(polygon);
    return;
  }
  std::vector<Sequence> rings;
  for (const Ring& ring : polygon.rings) {
    Sequence unwrapped;
    if (!unwrap(ring, unwrapped, true)) {
      // Encircles a pole: keep the planar reading.
      sides.polygons[center_lon(polygon.shell()) >= 0.0 ? 0 : 1].push_back(polygon);
      return;
    }
    rings.push_back(std::move(unwrapped));
  }
  // Bring holes onto the same sheet as the shell.
  const double shell_center = center_lon(rings.front());
  for (std::size_t r = 1; r < rings.size(); ++r) {
    const double c = center_lon(rings[r]);
    const double shift = c - shell_center > 180.0 ? -360.0 : (shell_center - c > 180.0 ? 360.0 : 0.0);
    if (shift != 0.0)
      for (Point& p : rings[r]) p.lon += shift;
  }
  for (int side = 0; side < 2; ++side) {
    const bool east = side == 0;
    for (Polygon& piece : assemble(clip_rings(rings, east))) {
      for (Ring& ring : piece.rings) ring = to_output(std::move(ring), east);
      sides.polygons[side].push_back(std::move(piece));
    }
  }
}

Geometry build(GeometryKind kind, std::vector<Point> points, std::vector<LineString> lines,
               std::vector<Polygon> polygons) {
  switch (dimension(kind)) {
    case 0: return points.size() == 1 ? Geometry::point(points[0]) : Geometry::multi_point(std::move(points));
    case 1:
      return lines.size() == 1 ? Geometry::line_string(std::move(lines[0]))
                               : Geometry::multi_line_string(std::move(lines));
    default:
      return polygons.size() == 1 ? Geometry::polygon(std::move(polygons[0]))
                                  : Geometry::multi_polygon(std::move(polygons));
  }
}

}  // namespace

std::vector<Geometry> split_antimeridian(const Geometry& g) {
  if (!crosses(g)) return {g};

  Sides sides;
  for (const Point& p : g.points()) sides.points[p.lon >= 0.0 ? 0 : 1].push_back(p);
  for (const LineString& line : g.lines()) split_line(line, sides);
  for (const Polygon& polygon : g.polygons()) split_polygon(polygon, sides);

  std::vector<Geometry> out;
  for (int side = 0; side < 2; ++side) {
    if (sides.points[side].empty() && sides.lines[side].empty() && sides.polygons[side].empty()) continue;
    out.push_back(build(g.kind(), std::move(sides.points[side]), std::move(sides.lines[side]),
                        std::move(sides.polygons[side])));
  }
  if (out.empty()) return {g};
  return out;
}

Geometry merge_pieces(std::span<const Geometry> pieces) {
  if (pieces.size() == 1) return pieces.front();
  std::vector<Point> points;
  std::vector<LineString> lines;
  std::vector<Polygon> polygons;
  for (const Geometry& piece : pieces) {
    points.insert(points.end(), piece.points().begin(), piece.points().end());
    lines.insert(lines.end(), piece.lines().begin(), piece.lines().end());
    polygons.insert(polygons.end(), piece.polygons().begin(), piece.polygons().end());
  }
  switch (pieces.front().dimension()) {
    case 0: return Geometry::multi_point(std::move(points));
    case 1: return Geometry::multi_line_string(std::move(lines));
    default: return Geometry::multi_polygon(std::move(polygons));
  }
}

}  // namespace radon
