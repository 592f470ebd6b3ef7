#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "radon/de9im.hpp"
#include "radon/geometry.hpp"

namespace radon {

enum class Relation : std::uint8_t {
  equals,
  intersects,
  touches,
  crosses,
  overlaps,
  within,
  covers,
  contains,
  covered_by,
  disjoint,
};

inline constexpr std::array<Relation, 10> kAllRelations = {
    Relation::equals, Relation::intersects, Relation::touches, Relation::crosses,    Relation::overlaps,
    Relation::within, Relation::covers,     Relation::contains, Relation::covered_by, Relation::disjoint};

/// The seven relations the engine is benchmarked on.
inline constexpr std::array<Relation, 7> kCoreRelations = {Relation::equals,   Relation::intersects,
                                                           Relation::touches,  Relation::crosses,
                                                           Relation::overlaps, Relation::within,
                                                           Relation::covers};

/// Canonical spelling ("coveredBy" for covered_by).
std::string_view to_string(Relation r) noexcept;

/// Case-insensitive; accepts "covered_by" as well. Throws Error(unsupported_relation).
Relation parse_relation(std::string_view name);

/// r' with r'(y, x) <=> r(x, y).
Relation reverse(Relation r) noexcept;

/// Applies the OGC mask set of `r` to a matrix computed for geometries of
/// dimensions `dim1` and `dim2`.
bool holds(Relation r, const De9imMatrix& m, int dim1, int dim2);

bool evaluate(Relation r, const PreparedGeometry& g1, const PreparedGeometry& g2);
bool evaluate(Relation r, const Geometry& g1, const Geometry& g2);

struct FilterVerdict {
  bool proceed = true;
};

/// Bounding-box necessary condition for the containment-like relations
/// (equals, covers, contains, within, coveredBy). Every other relation passes.
FilterVerdict test_mbb(Relation r, const MBB& source, const MBB& target) noexcept;

}  // namespace radon
