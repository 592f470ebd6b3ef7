#include "radon/relation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "radon/error.hpp"

namespace radon {

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::equals: return "equals";
    case Relation::intersects: return "intersects";
    case Relation::touches: return "touches";
    case Relation::crosses: return "crosses";
    case Relation::overlaps: return "overlaps";
    case Relation::within: return "within";
    case Relation::covers: return "covers";
    case Relation::contains: return "contains";
    case Relation::covered_by: return "coveredBy";
    case Relation::disjoint: return "disjoint";
  }
  return "unknown";
}

Relation parse_relation(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '_' && c != '-') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Relation r : kAllRelations) {
    std::string canonical(to_string(r));
    std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (canonical == key) return r;
  }
  throw Error(ErrorCode::unsupported_relation, "unknown relation '" + std::string(name) + "'");
}

Relation reverse(Relation r) noexcept {
  switch (r) {
    case Relation::within: return Relation::contains;
    case Relation::contains: return Relation::within;
    case Relation::covers: return Relation::covered_by;
    case Relation::covered_by: return Relation::covers;
    default: return r;
  }
}

namespace {

bool any_of_masks(const De9imMatrix& m, std::initializer_list<std::string_view> masks) {
  return std::any_of(masks.begin(), masks.end(), [&](std::string_view mask) { return m.matches(mask); });
}

}  // namespace

bool holds(Relation r, const De9imMatrix& m, int dim1, int dim2) {
  switch (r) {
    case Relation::equals: return m.matches("T*F**FFF*");
    case Relation::disjoint: return m.matches("FF*FF****");
    case Relation::intersects: return !m.matches("FF*FF****");
    case Relation::touches: return any_of_masks(m, {"FT*******", "F**T*****", "F***T****"});
    case Relation::crosses:
      if (dim1 < dim2) return m.matches("T*T******");
      if (dim1 > dim2) return m.matches("T*****T**");
      if (dim1 == 1) return m.matches("0********");
      return false;
    case Relation::overlaps:
      if (dim1 != dim2) return false;
      if (dim1 == 1) return m.matches("1*T***T**");
      return m.matches("T*T***T**");
    case Relation::within: return m.matches("T*F**F***");
    case Relation::contains: return m.matches("T*****FF*");
    case Relation::covers: return any_of_masks(m, {"T*****FF*", "*T****FF*", "***T**FF*", "****T*FF*"});
    case Relation::covered_by: return any_of_masks(m, {"T*F**F***", "*TF**F***", "**FT*F***", "**F*TF***"});
  }
  return false;
}

bool evaluate(Relation r, const PreparedGeometry& g1, const PreparedGeometry& g2) {
  return holds(r, de9im(g1, g2), g1.dimension(), g2.dimension());
}

bool evaluate(Relation r, const Geometry& g1, const Geometry& g2) {
  return evaluate(r, PreparedGeometry(g1), PreparedGeometry(g2));
}

FilterVerdict test_mbb(Relation r, const MBB& source, const MBB& target) noexcept {
  auto same = [](double x, double y) { return std::abs(x - y) <= kEpsilon; };
  switch (r) {
    case Relation::equals:
      return {same(source.lon_min, target.lon_min) && same(source.lat_min, target.lat_min) &&
              same(source.lon_max, target.lon_max) && same(source.lat_max, target.lat_max)};
    case Relation::covers:
    case Relation::contains: return {source.contains(target)};
    case Relation::within:
    case Relation::covered_by: return {target.contains(source)};
    default: return {true};
  }
}

}  // namespace radon
