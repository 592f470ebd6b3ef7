#include "radon/tiling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "radon/error.hpp"

namespace radon {

// ---------------------------------------------------------------------------
// Swapping

double eth(const Dataset& d) {
  if (d.empty()) throw Error(ErrorCode::empty_dataset, "eth of empty dataset " + d.label());
  double lon_sum = 0.0;
  double lat_sum = 0.0;
  for (const Feature& f : d) {
    lon_sum += f.lon_extent;
    lat_sum += f.lat_extent;
  }
  const auto n = static_cast<double>(d.size());
  return n * (lon_sum / n) * (lat_sum / n);
}

SwapPlan plan_swap(const Dataset& s, const Dataset& t, Relation r) {
  if (eth(t) < eth(s)) return {&t, &s, reverse(r), true};
  return {&s, &t, r, false};
}

// ---------------------------------------------------------------------------
// Granularity

std::string_view to_string(GranularityHeuristic h) noexcept {
  switch (h) {
    case GranularityHeuristic::min: return "min";
    case GranularityHeuristic::max: return "max";
    case GranularityHeuristic::avg: return "avg";
    case GranularityHeuristic::median: return "median";
    case GranularityHeuristic::fixed: return "fixed";
  }
  return "unknown";
}

std::string_view to_string(DeltaMode m) noexcept { return m == DeltaMode::literal ? "literal" : "reciprocal"; }

DeltaMode parse_delta_mode(std::string_view token) {
  if (token == "literal") return DeltaMode::literal;
  if (token == "reciprocal") return DeltaMode::reciprocal;
  throw Error(ErrorCode::invalid_config, "unknown delta mode '" + std::string(token) + "'");
}

GranularityPolicy GranularityPolicy::parse(std::string_view token) {
  GranularityPolicy p;
  if (token == "min") p.heuristic = GranularityHeuristic::min;
  else if (token == "max") p.heuristic = GranularityHeuristic::max;
  else if (token == "avg") p.heuristic = GranularityHeuristic::avg;
  else if (token == "median") p.heuristic = GranularityHeuristic::median;
  else if (token.starts_with("fixed:")) {
    const std::string_view number = token.substr(6);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(value) || value <= 0.0)
      throw Error(ErrorCode::invalid_config, "fixed granularity needs a positive decimal: '" + std::string(token) + "'");
    p.heuristic = GranularityHeuristic::fixed;
    p.fixed_value = value;
  } else {
    throw Error(ErrorCode::invalid_config, "unknown heuristic '" + std::string(token) + "'");
  }
  return p;
}

std::string GranularityPolicy::token() const {
  if (heuristic != GranularityHeuristic::fixed) return std::string(to_string(heuristic));
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), fixed_value);
  return "fixed:" + std::string(buf.data(), ptr);
}

double extent_statistic(const Dataset& d, GranularityHeuristic h, bool lon_axis) {
  if (d.empty()) throw Error(ErrorCode::empty_dataset, "granularity of empty dataset " + d.label());
  std::vector<double> extents;
  extents.reserve(d.size());
  for (const Feature& f : d) extents.push_back(lon_axis ? f.lon_extent : f.lat_extent);
  switch (h) {
    case GranularityHeuristic::min: return *std::min_element(extents.begin(), extents.end());
    case GranularityHeuristic::max: return *std::max_element(extents.begin(), extents.end());
    case GranularityHeuristic::avg:
      return std::accumulate(extents.begin(), extents.end(), 0.0) / static_cast<double>(extents.size());
    case GranularityHeuristic::median: {
      std::sort(extents.begin(), extents.end());
      const std::size_t n = extents.size();
      return n % 2 == 1 ? extents[n / 2] : 0.5 * (extents[n / 2 - 1] + extents[n / 2]);
    }
    case GranularityHeuristic::fixed: break;
  }
  throw Error(ErrorCode::invalid_config, "fixed heuristic has no extent statistic");
}

Granularity select_granularity(const Dataset& s, const Dataset& t, const GranularityPolicy& policy) {
  Granularity g;
  g.heuristic = policy.heuristic;
  if (policy.heuristic == GranularityHeuristic::fixed) {
    if (!std::isfinite(policy.fixed_value) || policy.fixed_value <= 0.0)
      throw Error(ErrorCode::invalid_config, "fixed granularity must be positive");
    g.delta_lon = g.delta_lat = policy.fixed_value;
    return g;
  }
  auto axis = [&](bool lon_axis, bool& fallback) {
    const double mean = 0.5 * (extent_statistic(s, policy.heuristic, lon_axis) +
                               extent_statistic(t, policy.heuristic, lon_axis));
    const double delta = policy.mode == DeltaMode::literal ? mean : 1.0 / mean;
    if (!(mean > 0.0) || !std::isfinite(delta) || !(delta > 0.0)) {
      fallback = true;
      return 1.0;
    }
    return delta;
  };
  g.delta_lon = axis(true, g.lon_fallback);
  g.delta_lat = axis(false, g.lat_fallback);
  return g;
}

// ---------------------------------------------------------------------------
// Cells

std::uint64_t CellRange::count() const noexcept {
  if (empty()) return 0;
  return static_cast<std::uint64_t>(i_hi - i_lo + 1) * static_cast<std::uint64_t>(j_hi - j_lo + 1);
}

CellRange CellRange::intersect(const CellRange& o) const noexcept {
  return {std::max(i_lo, o.i_lo), std::min(i_hi, o.i_hi), std::max(j_lo, o.j_lo), std::min(j_hi, o.j_hi)};
}

namespace {

std::int64_t to_cell(double scaled) {
  if (!std::isfinite(scaled) || std::abs(scaled) > 1e15)
    throw Error(ErrorCode::invalid_config, "cell index out of range; granularity too fine");
  return static_cast<std::int64_t>(scaled);
}

}  // namespace

CellRange cell_range(const MBB& box, const Granularity& g) {
  return {to_cell(std::floor(box.lon_min * g.delta_lon)), to_cell(std::ceil(box.lon_max * g.delta_lon)),
          to_cell(std::floor(box.lat_min * g.delta_lat)), to_cell(std::ceil(box.lat_max * g.delta_lat))};
}

std::vector<CellIndex> tile_cells(const MBB& box, const Granularity& g) {
  const CellRange r = cell_range(box, g);
  if (r.count() > kMaxCellsPerFeature)
    throw Error(ErrorCode::invalid_config, "box covers too many cells; granularity too fine");
  std::vector<CellIndex> cells;
  cells.reserve(r.count());
  for (std::int64_t i = r.i_lo; i <= r.i_hi; ++i)
    for (std::int64_t j = r.j_lo; j <= r.j_hi; ++j) cells.push_back({i, j});
  return cells;
}

// ---------------------------------------------------------------------------
// Index

const SparseTileIndex::Bucket* SparseTileIndex::source_bucket(CellIndex c) const {
  const auto it = source_.find(c);
  return it == source_.end() ? nullptr : &it->second;
}

const SparseTileIndex::Bucket* SparseTileIndex::target_bucket(CellIndex c) const {
  const auto it = target_.find(c);
  return it == target_.end() ? nullptr : &it->second;
}

std::optional<CellIndex> SparseTileIndex::owner_cell(std::uint32_t source_id, std::uint32_t target_id) const noexcept {
  std::optional<CellIndex> best;
  for (const CellRange& a : source_ranges_[source_id])
    for (const CellRange& b : target_ranges_[target_id]) {
      const CellRange both = a.intersect(b);
      if (both.empty()) continue;
      const CellIndex corner{both.i_lo, both.j_lo};
      if (!best || corner < *best) best = corner;
    }
  return best;
}

namespace {

std::vector<CellRange> ranges_of(const Feature& f, const Granularity& g) {
  std::vector<CellRange> ranges;
  ranges.reserve(f.boxes.size());
  for (const MBB& box : f.boxes) {
    ranges.push_back(cell_range(box, g));
    if (ranges.back().count() > kMaxCellsPerFeature)
      throw Error(ErrorCode::invalid_config,
                  "feature '" + f.id + "' covers too many cells; granularity too fine");
  }
  return ranges;
}

void insert(SparseTileIndex::Bucket& bucket, std::uint32_t id) {
  if (bucket.empty() || bucket.back() != id) bucket.push_back(id);
}

}  // namespace

SparseTileIndex build_index(const Dataset& s, const Dataset& t, const Granularity& g) {
  SparseTileIndex index;
  index.granularity_ = g;
  index.source_ranges_.reserve(s.size());
  index.target_ranges_.reserve(t.size());

  for (std::uint32_t id = 0; id < s.size(); ++id) {
    index.source_ranges_.push_back(ranges_of(s[id], g));
    for (const CellRange& r : index.source_ranges_.back())
      for (std::int64_t i = r.i_lo; i <= r.i_hi; ++i)
        for (std::int64_t j = r.j_lo; j <= r.j_hi; ++j) insert(index.source_[{i, j}], id);
  }

  for (std::uint32_t id = 0; id < t.size(); ++id) {
    index.target_ranges_.push_back(ranges_of(t[id], g));
    for (const CellRange& r : index.target_ranges_.back()) {
      if (r.count() > index.source_.size()) {
        // Cheaper to walk the occupied source cells than the whole range.
        for (const auto& [cell, bucket] : index.source_)
          if (r.contains(cell)) insert(index.target_[cell], id);
        continue;
      }
      for (std::int64_t i = r.i_lo; i <= r.i_hi; ++i)
        for (std::int64_t j = r.j_lo; j <= r.j_hi; ++j)
          if (index.source_.contains({i, j})) insert(index.target_[{i, j}], id);
    }
  }

  index.shared_.reserve(index.target_.size());
  for (const auto& [cell, bucket] : index.target_) index.shared_.push_back(cell);
  std::sort(index.shared_.begin(), index.shared_.end());
  return index;
}

}  // namespace radon
