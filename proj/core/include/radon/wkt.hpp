#pragma once

#include <string>
#include <string_view>

#include "radon/geometry.hpp"

namespace radon {

/// Parses OGC Simple Features WKT for the six supported kinds (tags are
/// case-insensitive, coordinates are "lon lat"). Never aborts: malformed text
/// raises Error(syntax), other kinds Error(unsupported_kind), and invariant
/// violations Error(invalid_geometry).
Geometry parse_wkt(std::string_view text);

/// Upper-case tags, shortest round-trip decimal coordinates.
std::string to_wkt(const Geometry& g);

}  // namespace radon
