#include "exact_oracle.hpp"

#include <algorithm>

namespace radon::testing {

namespace {

using i128 = __int128;

/// Rational point (x / w, y / w) with w > 0.
struct Q {
  i128 x = 0;
  i128 y = 0;
  i128 w = 1;
};

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Q normal(Q q) {
  if (q.w < 0) q = {-q.x, -q.y, -q.w};
  const i128 g = gcd128(gcd128(q.x, q.y), q.w);
  if (g > 1) q = {q.x / g, q.y / g, q.w / g};
  return q;
}

Q of(IPoint p) { return {p.x, p.y, 1}; }

bool same(const Q& a, const Q& b) { return a.x * b.w == b.x * a.w && a.y * b.w == b.y * a.w; }

int sign(i128 v) { return (v > 0) - (v < 0); }

struct Seg {
  IPoint a;
  IPoint b;
};

/// Side of q relative to the directed integer segment a -> b.
int orient(const Seg& s, const Q& q) {
  return sign((s.b.x - s.a.x) * (q.y - s.a.y * q.w) - (s.b.y - s.a.y) * (q.x - s.a.x * q.w));
}

bool within_box(const Seg& s, const Q& q) {
  const i128 lx = std::min(s.a.x, s.b.x), hx = std::max(s.a.x, s.b.x);
  const i128 ly = std::min(s.a.y, s.b.y), hy = std::max(s.a.y, s.b.y);
  return lx * q.w <= q.x && q.x <= hx * q.w && ly * q.w <= q.y && q.y <= hy * q.w;
}

bool on_seg(const Seg& s, const Q& q) { return orient(s, q) == 0 && within_box(s, q); }

enum Loc { kI = 0, kB = 1, kE = 2 };

class Shape {
 public:
  explicit Shape(const IGeometry& g) : g_(g) {
    for (const auto& line : g.lines)
      for (std::size_t k = 0; k + 1 < line.size(); ++k)
        if (!(line[k] == line[k + 1])) segs_.push_back({line[k], line[k + 1]});
    for (const auto& poly : g.polygons)
      for (const auto& ring : poly)
        for (std::size_t k = 0; k + 1 < ring.size(); ++k)
          if (!(ring[k] == ring[k + 1])) segs_.push_back({ring[k], ring[k + 1]});
  }

  const std::vector<Seg>& segments() const { return segs_; }

  std::vector<IPoint> vertices() const {
    std::vector<IPoint> out = g_.points;
    for (const auto& line : g_.lines) out.insert(out.end(), line.begin(), line.end());
    for (const auto& poly : g_.polygons)
      for (const auto& ring : poly) out.insert(out.end(), ring.begin(), ring.end());
    return out;
  }

  Loc locate(const Q& q) const {
    if (g_.dim == 0) {
      for (const IPoint& p : g_.points)
        if (same(q, of(p))) return kI;
      return kE;
    }
    bool boundary = false;
    if (g_.dim == 1) {
      for (const auto& line : g_.lines) {
        const bool closed = line.front() == line.back();
        if (!closed && (same(q, of(line.front())) || same(q, of(line.back())))) {
          boundary = true;
          continue;
        }
        for (std::size_t k = 0; k + 1 < line.size(); ++k)
          if (on_seg({line[k], line[k + 1]}, q)) return kI;
      }
      return boundary ? kB : kE;
    }
    for (const auto& poly : g_.polygons) {
      bool edge = false;
      bool inside = false;
      for (const auto& ring : poly)
        for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
          const Seg s{ring[k], ring[k + 1]};
          if (on_seg(s, q)) edge = true;
          const bool above_a = s.a.y * q.w > q.y, above_b = s.b.y * q.w > q.y;
          if (above_a != above_b) {
            const i128 dy = s.b.y - s.a.y;
            const i128 v = (q.x - s.a.x * q.w) * dy - (q.y - s.a.y * q.w) * (s.b.x - s.a.x);
            if (sign(v) * sign(dy) < 0) inside = !inside;
          }
        }
      if (edge) boundary = true;
      else if (inside) return kI;
    }
    return boundary ? kB : kE;
  }

 private:
  const IGeometry& g_;
  std::vector<Seg> segs_;
};

/// Crossing point of two integer segments when they meet in a single point
/// that is not shared collinearly.
bool crossing(const Seg& p, const Seg& q, Q& out) {
  const i128 rx = p.b.x - p.a.x, ry = p.b.y - p.a.y;
  const i128 sx = q.b.x - q.a.x, sy = q.b.y - q.a.y;
  i128 d = rx * sy - ry * sx;
  if (d == 0) return false;
  const i128 qpx = q.a.x - p.a.x, qpy = q.a.y - p.a.y;
  i128 t = qpx * sy - qpy * sx;
  i128 u = qpx * ry - qpy * rx;
  if (d < 0) {
    d = -d;
    t = -t;
    u = -u;
  }
  if (t < 0 || t > d || u < 0 || u > d) return false;
  out = normal({p.a.x * d + t * rx, p.a.y * d + t * ry, d});
  return true;
}

/// Does the closed segment from m to m + n / 2^k touch s? `n` is an integer
/// direction. A degenerate `s` stands for an isolated point.
bool offset_hits(const Q& m, i128 nx, i128 ny, int k, const Seg& s) {
  const i128 scale = i128{1} << k;
  const Q o{m.x * scale + nx * m.w, m.y * scale + ny * m.w, m.w * scale};
  const int o1 = orient(s, m), o2 = orient(s, o);
  auto side = [&](IPoint c) { return sign(nx * (c.y * m.w - m.y) - ny * (c.x * m.w - m.x)); };
  const int o3 = side(s.a), o4 = side(s.b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (on_seg(s, m) || on_seg(s, o)) return true;
  auto between = [&](IPoint c) {
    if (side(c) != 0) return false;
    const i128 along = (c.x * m.w - m.x) * nx + (c.y * m.w - m.y) * ny;
    return along >= 0 && along * scale <= (nx * nx + ny * ny) * m.w;
  };
  return between(s.a) || between(s.b);
}

class Witness {
 public:
  Witness(const IGeometry& a, const IGeometry& b) : a_(a), b_(b) {
    all_.insert(all_.end(), a_.segments().begin(), a_.segments().end());
    all_.insert(all_.end(), b_.segments().begin(), b_.segments().end());
    obstacles_ = all_;
    for (const IGeometry* g : {&a, &b})
      for (const IPoint& p : g->points) obstacles_.push_back({p, p});
  }

  De9imMatrix run() {
    nodes();
    pieces();
    scanlines();
    mark({-100000, -100000, 1}, 2);
    return m_;
  }

 private:
  void mark(const Q& q, int dim) {
    m_.raise(static_cast<Location>(a_.locate(q)), static_cast<Location>(b_.locate(q)), dim);
  }

  void nodes() {
    for (const IPoint& p : a_.vertices()) critical_.push_back(of(p));
    for (const IPoint& p : b_.vertices()) critical_.push_back(of(p));
    for (std::size_t i = 0; i < all_.size(); ++i)
      for (std::size_t j = i + 1; j < all_.size(); ++j) {
        Q q;
        if (crossing(all_[i], all_[j], q)) critical_.push_back(q);
      }
    for (const Q& q : critical_) mark(q, 0);
  }

  void pieces() {
    for (const Seg& s : all_) {
      const i128 dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
      std::vector<std::pair<Q, i128>> stops;  // point, numerator of its parameter over w
      for (const Q& q : critical_)
        if (on_seg(s, q)) stops.push_back({q, (q.x - s.a.x * q.w) * dx + (q.y - s.a.y * q.w) * dy});
      std::sort(stops.begin(), stops.end(),
                [](const auto& l, const auto& r) { return l.second * r.first.w < r.second * l.first.w; });
      for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
        const Q& p = stops[k].first;
        const Q& q = stops[k + 1].first;
        if (same(p, q)) continue;
        const Q mid = normal({p.x * q.w + q.x * p.w, p.y * q.w + q.y * p.w, 2 * p.w * q.w});
        mark(mid, 1);
        for (const int dir : {1, -1}) {
          const i128 nx = -dy * dir, ny = dx * dir;
          for (int k2 = 4; k2 < 60; ++k2) {
            bool clear = true;
            for (const Seg& t : obstacles_) {
              if (on_seg(t, mid)) continue;
              if (offset_hits(mid, nx, ny, k2, t)) {
                clear = false;
                break;
              }
            }
            if (clear) {
              const i128 scale = i128{1} << k2;
              mark(normal({mid.x * scale + nx * mid.w, mid.y * scale + ny * mid.w, mid.w * scale}), 2);
              break;
            }
          }
        }
      }
    }
  }

  // Horizontal lines y = (2j + 1) / 128 never meet a vertex or a horizontal
  // segment, so the midpoints between consecutive crossings lie inside faces.
  void scanlines() {
    if (all_.empty()) return;
    i128 lo = all_.front().a.y, hi = lo;
    for (const Seg& s : all_) {
      lo = std::min<i128>({lo, s.a.y, s.b.y});
      hi = std::max<i128>({hi, s.a.y, s.b.y});
    }
    std::vector<Q> xs;
    for (i128 j = lo * 64; j < hi * 64; ++j) {
      const i128 yn = 2 * j + 1;  // y = yn / 128
      xs.clear();
      for (const Seg& s : all_) {
        const bool a_above = s.a.y * 128 > yn, b_above = s.b.y * 128 > yn;
        if (a_above == b_above) continue;
        const i128 dy = s.b.y - s.a.y;
        // x = ax + (y - ay) * dx / dy
        Q x{s.a.x * 128 * dy + (yn - s.a.y * 128) * (s.b.x - s.a.x), yn * dy, 128 * dy};
        xs.push_back(normal(x));
      }
      std::sort(xs.begin(), xs.end(), [](const Q& l, const Q& r) { return l.x * r.w < r.x * l.w; });
      auto at = [&](i128 xn, i128 xd) { mark(normal({xn * 128, yn * xd, xd * 128}), 2); };
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const Q& l = xs[k];
        const Q& r = xs[k + 1];
        if (l.x * r.w != r.x * l.w) at(l.x * r.w + r.x * l.w, 2 * l.w * r.w);
      }
      if (!xs.empty()) {
        at(xs.front().x - xs.front().w, xs.front().w);
        at(xs.back().x + xs.back().w, xs.back().w);
      }
    }
  }

  Shape a_;
  Shape b_;
  std::vector<Seg> all_;
  std::vector<Seg> obstacles_;
  std::vector<Q> critical_;
  De9imMatrix m_;
};

}  // namespace

Geometry IGeometry::to_geometry() const {
  auto pt = [](IPoint p) { return Point{static_cast<double>(p.x), static_cast<double>(p.y)}; };
  auto seq = [&](const std::vector<IPoint>& v) {
    std::vector<Point> out;
    for (IPoint p : v) out.push_back(pt(p));
    return out;
  };
  if (dim == 0) {
    if (points.size() == 1) return Geometry::point(pt(points[0]));
    return Geometry::multi_point(seq(points));
  }
  if (dim == 1) {
    if (lines.size() == 1) return Geometry::line_string(seq(lines[0]));
    std::vector<LineString> ls;
    for (const auto& l : lines) ls.push_back(seq(l));
    return Geometry::multi_line_string(std::move(ls));
  }
  std::vector<Polygon> polys;
  for (const auto& poly : polygons) {
    Polygon p;
    for (const auto& ring : poly) p.rings.push_back(seq(ring));
    polys.push_back(std::move(p));
  }
  if (polys.size() == 1) return Geometry::polygon(std::move(polys[0]));
  return Geometry::multi_polygon(std::move(polys));
}

De9imMatrix oracle_de9im(const IGeometry& a, const IGeometry& b) { return Witness(a, b).run(); }

}  // namespace radon::testing
