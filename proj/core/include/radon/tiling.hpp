#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "radon/dataset.hpp"
#include "radon/geometry.hpp"
#include "radon/relation.hpp"

namespace radon {

// ---------------------------------------------------------------------------
// Swapping

/// Dataset size times the product of the mean per-axis extents.
/// Throws Error(empty_dataset).
double eth(const Dataset& d);

struct SwapPlan {
  const Dataset* source = nullptr;
  const Dataset* target = nullptr;
  Relation relation = Relation::intersects;
  bool reversed = false;
};

/// Indexes the dataset with the smaller ETH first; swaps only when eth(t) < eth(s).
SwapPlan plan_swap(const Dataset& s, const Dataset& t, Relation r);

// ---------------------------------------------------------------------------
// Granularity

enum class GranularityHeuristic { min, max, avg, median, fixed };
enum class DeltaMode { literal, reciprocal };

std::string_view to_string(GranularityHeuristic h) noexcept;
std::string_view to_string(DeltaMode m) noexcept;
DeltaMode parse_delta_mode(std::string_view token);

struct GranularityPolicy {
  GranularityHeuristic heuristic = GranularityHeuristic::avg;
  double fixed_value = 1.0;  // used by `fixed` only
  DeltaMode mode = DeltaMode::literal;

  /// "min" | "max" | "avg" | "median" | "fixed:<positive decimal>".
  static GranularityPolicy parse(std::string_view token);
  std::string token() const;
};

/// Cells per degree along each axis.
struct Granularity {
  double delta_lon = 1.0;
  double delta_lat = 1.0;
  GranularityHeuristic heuristic = GranularityHeuristic::avg;
  bool lon_fallback = false;  // statistic was zero, delta forced to 1
  bool lat_fallback = false;
};

/// Per axis: statistic of each dataset's extents, averaged over the two
/// datasets. In reciprocal mode the delta is the inverse of that average.
Granularity select_granularity(const Dataset& s, const Dataset& t, const GranularityPolicy& policy);

/// Extent statistic of one dataset along one axis (exposed for reporting).
double extent_statistic(const Dataset& d, GranularityHeuristic h, bool lon_axis);

// ---------------------------------------------------------------------------
// Cells

/// Grid cell. `i` runs along longitude (the first WKT axis), `j` along latitude.
struct CellIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const noexcept {
    const auto a = static_cast<std::uint64_t>(c.i);
    const auto b = static_cast<std::uint64_t>(c.j);
    return std::hash<std::uint64_t>{}(a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull + (a << 6) + (a >> 2)));
  }
};

/// Inclusive rectangle of cells.
struct CellRange {
  std::int64_t i_lo = 0;
  std::int64_t i_hi = -1;
  std::int64_t j_lo = 0;
  std::int64_t j_hi = -1;

  bool empty() const noexcept { return i_lo > i_hi || j_lo > j_hi; }
  std::uint64_t count() const noexcept;
  bool contains(CellIndex c) const noexcept { return c.i >= i_lo && c.i <= i_hi && c.j >= j_lo && c.j <= j_hi; }
  CellRange intersect(const CellRange& o) const noexcept;
};

/// floor(low * delta) .. ceil(high * delta) on each axis, inclusive.
CellRange cell_range(const MBB& box, const Granularity& g);

/// Every cell covered by `box`, sorted lexicographically.
std::vector<CellIndex> tile_cells(const MBB& box, const Granularity& g);

// ---------------------------------------------------------------------------
// Antimeridian

/// A segment whose longitudes differ by more than 180 degrees is read as
/// taking the short way across lon = +-180. Such geometries come back as two
/// pieces, the eastern-hemisphere side first; anything else is returned as is.
std::vector<Geometry> split_antimeridian(const Geometry& g);

/// Merges pieces of one geometry back into a single (multi-)geometry.
Geometry merge_pieces(std::span<const Geometry> pieces);

// ---------------------------------------------------------------------------
// Index

/// Source features in every cell their boxes cover; target features only in
/// cells that already hold a source feature.
class SparseTileIndex {
 public:
  using Bucket = std::vector<std::uint32_t>;
  using CellMap = std::unordered_map<CellIndex, Bucket, CellIndexHash>;

  const Granularity& granularity() const noexcept { return granularity_; }
  const CellMap& source_cells() const noexcept { return source_; }
  const CellMap& target_cells() const noexcept { return target_; }

  const Bucket* source_bucket(CellIndex c) const;
  const Bucket* target_bucket(CellIndex c) const;

  /// Cells holding both source and target features, lexicographic order.
  std::span<const CellIndex> shared_cells() const noexcept { return shared_; }

  std::span<const CellRange> source_ranges(std::uint32_t id) const noexcept { return source_ranges_[id]; }
  std::span<const CellRange> target_ranges(std::uint32_t id) const noexcept { return target_ranges_[id]; }

  /// Lexicographically smallest cell covered by both features, if any.
  std::optional<CellIndex> owner_cell(std::uint32_t source_id, std::uint32_t target_id) const noexcept;

 private:
  friend SparseTileIndex build_index(const Dataset& s, const Dataset& t, const Granularity& g);

  Granularity granularity_;
  CellMap source_;
  CellMap target_;
  std::vector<CellIndex> shared_;
  std::vector<std::vector<CellRange>> source_ranges_;
  std::vector<std::vector<CellRange>> target_ranges_;
};

/// Upper bound on the number of cells a single feature may occupy.
inline constexpr std::uint64_t kMaxCellsPerFeature = 50'000'000;

/// Two-phase sparse construction. Throws Error(invalid_config) when a feature
/// would occupy more than kMaxCellsPerFeature cells.
SparseTileIndex build_index(const Dataset& s, const Dataset& t, const Granularity& g);

}  // namespace radon
