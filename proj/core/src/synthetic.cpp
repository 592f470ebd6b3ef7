#include "radon/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "radon/error.hpp"
#include "radon/tiling.hpp"

namespace radon {

namespace {

constexpr double kGrid = 1.0 / 1024.0;
constexpr std::size_t kPoolSize = 24;
constexpr int kAttempts = 32;

double snap(double v) { return std::round(v / kGrid) * kGrid; }

Point snap(Point p) {
  return {std::clamp(snap(p.lon), -180.0, 180.0), std::clamp(snap(p.lat), -89.0, 89.0)};
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct Cluster {
  Point center;
  Point lattice_origin;
  double pitch = 0.5;
};

/// Everything derived from layout_seed.
struct Layout {
  std::vector<Cluster> clusters;
  std::vector<Geometry> pool;
  double cut_lat = 0.0;
};

Ring star_ring(Random& rng, Point c, double radius, double min_fraction, int vertices) {
  std::vector<double> angles;
  for (int k = 0; k < vertices; ++k) angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
  std::sort(angles.begin(), angles.end());
  Ring ring;
  for (double a : angles) {
    const double r = radius * rng.uniform(min_fraction, 1.0);
    ring.push_back({c.lon + r * std::cos(a), c.lat + r * std::sin(a)});
  }
  ring.push_back(ring.front());
  return ring;
}

Ring snapped(Ring ring) {
  for (Point& p : ring) p = snap(p);
  return ring;
}

Ring square(Point c, double half) {
  const Point lo = snap(Point{c.lon - half, c.lat - half});
  const Point hi = snap(Point{c.lon + half, c.lat + half});
  return {lo, {hi.lon, lo.lat}, hi, {lo.lon, hi.lat}, lo};
}

template <typename Make>
Geometry attempt(Make make, const Geometry& fallback) {
  for (int k = 0; k < kAttempts; ++k) {
    try {
      return make();
    } catch (const Error&) {
    }
  }
  return fallback;
}

Point around(Random& rng, const Cluster& c, double spread) {
  const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = spread * std::sqrt(rng.uniform(0.0, 1.0));
  return {c.center.lon + r * std::cos(a), c.center.lat + r * std::sin(a)};
}

Geometry star_polygon(Random& rng, Point c, double size) {
  return attempt([&] { return Geometry::polygon({{snapped(star_ring(rng, c, size * rng.uniform(0.2, 0.6), 0.5,
                                                                        rng.between(4, 10)))}}); },
                 Geometry::polygon({{square(c, size * 0.25)}}));
}

Geometry holed_polygon(Random& rng, Point c, double size) {
  return attempt(
      [&] {
        const double r = size * rng.uniform(0.3, 0.6);
        Ring shell = snapped(star_ring(rng, c, r, 0.6, rng.between(5, 10)));
        Ring hole = snapped(star_ring(rng, c, r * 0.4, 0.5, rng.between(3, 7)));
        std::reverse(hole.begin(), hole.end());
        return Geometry::polygon({{std::move(shell), std::move(hole)}});
      },
      Geometry::polygon({{square(c, size * 0.3), square(c, size * 0.1)}}));
}

Geometry polyline(Random& rng, Point c, double size) {
  return attempt(
      [&] {
        LineString line{snap(c)};
        const int n = rng.between(1, 4);
        for (int k = 0; k < n; ++k) {
          const Point last = line.back();
          line.push_back(snap(Point{last.lon + rng.uniform(-0.5, 0.5) * size, last.lat + rng.uniform(-0.5, 0.5) * size}));
        }
        return Geometry::line_string(std::move(line));
      },
      Geometry::line_string({snap(c), snap(Point{c.lon + size * 0.5, c.lat})}));
}

Point lattice(const Cluster& c, int ix, int iy) {
  return snap(Point{c.lattice_origin.lon + ix * c.pitch, c.lattice_origin.lat + iy * c.pitch});
}

Geometry tile(Random& rng, const Cluster& c) {
  const int ix = rng.between(-4, 3), iy = rng.between(-4, 3);
  const int w = rng.between(1, 2), h = rng.between(1, 2);
  const Point lo = lattice(c, ix, iy), hi = lattice(c, ix + w, iy + h);
  return Geometry::polygon({{{lo, {hi.lon, lo.lat}, hi, {lo.lon, hi.lat}, lo}}});
}

Geometry lattice_line(Random& rng, const Cluster& c) {
  const int ix = rng.between(-4, 4), iy = rng.between(-4, 4);
  const int len = rng.between(1, 3);
  const bool horizontal = rng.chance(0.5);
  const Point a = lattice(c, ix, iy);
  const Point b = horizontal ? lattice(c, ix + len, iy) : lattice(c, ix, iy + len);
  return Geometry::line_string({a, b});
}

Geometry lattice_point(Random& rng, const Cluster& c) {
  const int ix = rng.between(-4, 4), iy = rng.between(-4, 4);
  if (rng.chance(0.5)) return Geometry::point(lattice(c, ix, iy));
  const Point a = lattice(c, ix, iy), b = lattice(c, ix + 1, iy);
  return Geometry::point(snap(Point{0.5 * (a.lon + b.lon), a.lat}));
}

/// Wraps unwrapped longitudes above 180 back into range.
Point wrap(Point p) {
  if (p.lon > 180.0) p.lon -= 360.0;
  return p;
}

Geometry crosser(Random& rng, double lat, double size) {
  const bool area = rng.chance(0.6);
  return attempt(
      [&] {
        const Point c{180.0 + rng.uniform(-0.2, 0.2) * size, lat + rng.uniform(-1.0, 1.0) * size};
        if (area) {
          Ring ring = snapped(star_ring(rng, c, size * rng.uniform(0.4, 0.8), 0.7, rng.between(4, 9)));
          for (Point& p : ring) p = wrap(p);
          const Geometry g = Geometry::polygon({{ring}});
          if (split_antimeridian(g).size() < 2) throw Error(ErrorCode::invalid_geometry, "does not straddle");
          return g;
        }
        const double half = size * rng.uniform(0.3, 0.7);
        LineString line{snap(Point{c.lon - half, c.lat + rng.uniform(-0.5, 0.5) * size}), snap(c),
                        snap(Point{c.lon + half, c.lat + rng.uniform(-0.5, 0.5) * size})};
        for (Point& p : line) p = wrap(p);
        const Geometry g = Geometry::line_string(std::move(line));
        if (split_antimeridian(g).size() < 2) throw Error(ErrorCode::invalid_geometry, "does not straddle");
        return g;
      },
      Geometry::line_string({snap(Point{179.5, lat}), snap(Point{-179.5, lat})}));
}

Layout make_layout(const SyntheticCorpusSpec& spec) {
  Random rng(spec.layout_seed);
  Layout layout;
  const double margin = spec.spread + spec.feature_size * 3.0;
  const double lon_lo = spec.window.lon_min + margin, lon_hi = std::max(lon_lo, spec.window.lon_max - margin);
  const double lat_lo = spec.window.lat_min + margin, lat_hi = std::max(lat_lo, spec.window.lat_max - margin);
  const double separation = 2.0 * margin;
  for (std::size_t k = 0; k < spec.clusters; ++k) {
    Point best{};
    double best_gap = -1.0;
    for (int tries = 0; tries < 200; ++tries) {
      const Point p{rng.uniform(lon_lo, std::nextafter(lon_hi, lon_hi + 1.0)),
                    rng.uniform(lat_lo, std::nextafter(lat_hi, lat_hi + 1.0))};
      double gap = 1e300;
      for (const Cluster& c : layout.clusters) gap = std::min(gap, std::hypot(p.lon - c.center.lon, p.lat - c.center.lat));
      if (gap > best_gap) {
        best = p;
        best_gap = gap;
      }
      if (gap >= separation) break;
    }
    Cluster c;
    c.center = snap(best);
    c.pitch = std::max(kGrid, snap(spec.feature_size * 0.5));
    c.lattice_origin = Point{std::round(c.center.lon * 8.0) / 8.0, std::round(c.center.lat * 8.0) / 8.0};
    layout.clusters.push_back(c);
  }
  layout.cut_lat = snap(rng.uniform(lat_lo, std::nextafter(lat_hi, lat_hi + 1.0)));

  for (std::size_t k = 0; k < kPoolSize; ++k) {
    const Cluster& c = layout.clusters[k % layout.clusters.size()];
    switch (k % 4) {
      case 0: layout.pool.push_back(star_polygon(rng, around(rng, c, spec.spread), spec.feature_size)); break;
      case 1: layout.pool.push_back(tile(rng, c)); break;
      case 2: layout.pool.push_back(polyline(rng, around(rng, c, spec.spread), spec.feature_size)); break;
      default: layout.pool.push_back(Geometry::point(snap(around(rng, c, spec.spread)))); break;
    }
  }
  return layout;
}

}  // namespace

void SyntheticCorpusSpec::validate() const {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::invalid_config, "synthetic corpus: " + why); };
  if (!(window.lon_min < window.lon_max) || !(window.lat_min < window.lat_max)) bad("empty window");
  if (window.lon_min < -180.0 || window.lon_max > 180.0 || window.lat_min < -90.0 || window.lat_max > 90.0)
    bad("window outside valid coordinates");
  if (clusters == 0) bad("need at least one cluster");
  if (!(spread > 0.0) || !(feature_size > 0.0) || !std::isfinite(spread) || !std::isfinite(feature_size))
    bad("spread and feature size must be positive");
}

SyntheticCorpusSpec SyntheticCorpusSpec::mixed(std::size_t count, std::size_t clusters, double antimeridian_fraction,
                                               std::uint64_t layout_seed, std::uint64_t seed, std::string id_prefix) {
  if (!(antimeridian_fraction >= 0.0 && antimeridian_fraction <= 1.0))
    throw Error(ErrorCode::invalid_config, "antimeridian fraction must lie in [0, 1]");
  SyntheticCorpusSpec spec;
  spec.clusters = clusters;
  spec.layout_seed = layout_seed;
  spec.seed = seed;
  spec.id_prefix = std::move(id_prefix);
  spec.crossers = std::min(count, static_cast<std::size_t>(std::ceil(antimeridian_fraction * static_cast<double>(count))));
  const std::size_t rest = count - spec.crossers;
  spec.polygons = rest * 25 / 100;
  spec.holed = rest * 10 / 100;
  spec.lines = rest * 20 / 100;
  spec.points = rest * 15 / 100;
  spec.tiles = rest * 20 / 100;
  spec.duplicates = rest - spec.polygons - spec.holed - spec.lines - spec.points - spec.tiles;
  return spec;
}

std::vector<std::pair<std::string, Geometry>> generate_corpus(const SyntheticCorpusSpec& spec) {
  spec.validate();
  const Layout layout = make_layout(spec);
  Random rng(spec.seed);
  auto cluster = [&]() -> const Cluster& { return layout.clusters[rng.below(layout.clusters.size())]; };
  const double size = spec.feature_size;

  std::vector<Geometry> shapes;
  shapes.reserve(spec.total());
  for (std::size_t k = 0; k < spec.polygons; ++k) {
    const Cluster& c = cluster();
    shapes.push_back(star_polygon(rng, around(rng, c, spec.spread), size));
  }
  for (std::size_t k = 0; k < spec.holed; ++k) {
    const Cluster& c = cluster();
    shapes.push_back(holed_polygon(rng, around(rng, c, spec.spread), size));
  }
  for (std::size_t k = 0; k < spec.lines; ++k) {
    const Cluster& c = cluster();
    shapes.push_back(rng.chance(0.35) ? lattice_line(rng, c) : polyline(rng, around(rng, c, spec.spread), size));
  }
  for (std::size_t k = 0; k < spec.points; ++k) {
    const Cluster& c = cluster();
    if (spec.crossers > 0 && rng.chance(0.15)) {
      const double lon = rng.chance(0.5) ? 180.0 - rng.uniform(0.0, 0.3) * size : -180.0 + rng.uniform(0.0, 0.3) * size;
      shapes.push_back(Geometry::point(snap(Point{lon, layout.cut_lat + rng.uniform(-0.5, 0.5) * size})));
    } else if (rng.chance(0.4)) {
      shapes.push_back(lattice_point(rng, c));
    } else {
      shapes.push_back(Geometry::point(snap(around(rng, c, spec.spread))));
    }
  }
  for (std::size_t k = 0; k < spec.tiles; ++k) shapes.push_back(tile(rng, cluster()));
  for (std::size_t k = 0; k < spec.duplicates; ++k) shapes.push_back(layout.pool[rng.below(layout.pool.size())]);
  for (std::size_t k = 0; k < spec.crossers; ++k) shapes.push_back(crosser(rng, layout.cut_lat, size));

  std::shuffle(shapes.begin(), shapes.end(), rng.engine());
  std::vector<std::pair<std::string, Geometry>> out;
  out.reserve(shapes.size());
  for (std::size_t k = 0; k < shapes.size(); ++k) out.emplace_back(spec.id_prefix + std::to_string(k), std::move(shapes[k]));
  return out;
}

Dataset generate_dataset(std::string label, const SyntheticCorpusSpec& spec) {
  return Dataset::from_geometries(std::move(label), generate_corpus(spec));
}

}  // namespace radon
