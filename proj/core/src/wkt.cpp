#include "radon/wkt.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>
#include <system_error>

#include "radon/error.hpp"

namespace radon {
namespace {

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  Geometry read() {
    const std::string tag = word();
    if (tag.empty()) fail("expected a geometry tag");

    skip_space();
    const std::size_t mark = pos_;
    const std::string modifier = word();
    if (modifier == "Z" || modifier == "M" || modifier == "ZM")
      throw Error(ErrorCode::unsupported_kind, tag + " " + modifier + " (only 2-D geometries are supported)");
    if (modifier == "EMPTY") throw Error(ErrorCode::invalid_geometry, "empty " + tag + " is not supported");
    if (!modifier.empty()) fail("unexpected token '" + modifier + "'");
    pos_ = mark;

    Geometry g = read_body(tag);
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return g;
  }

 private:
  Geometry read_body(const std::string& tag) {
    if (tag == "POINT") {
      expect('(');
      const Point p = coordinate();
      expect(')');
      return Geometry::point(p);
    }
    if (tag == "LINESTRING") return Geometry::line_string(coordinate_list());
    if (tag == "POLYGON") return Geometry::polygon(polygon());
    if (tag == "MULTIPOINT") return Geometry::multi_point(multi_point());
    if (tag == "MULTILINESTRING") {
      std::vector<LineString> lines;
      expect('(');
      do lines.push_back(coordinate_list());
      while (accept(','));
      expect(')');
      return Geometry::multi_line_string(std::move(lines));
    }
    if (tag == "MULTIPOLYGON") {
      std::vector<Polygon> polygons;
      expect('(');
      do polygons.push_back(polygon());
      while (accept(','));
      expect(')');
      return Geometry::multi_polygon(std::move(polygons));
    }
    static constexpr std::array<std::string_view, 9> kKnownOther = {
        "GEOMETRYCOLLECTION", "CIRCULARSTRING", "COMPOUNDCURVE", "CURVEPOLYGON", "MULTICURVE",
        "MULTISURFACE",       "TRIANGLE",       "TIN",           "POLYHEDRALSURFACE"};
    for (std::string_view other : kKnownOther)
      if (tag == other) throw Error(ErrorCode::unsupported_kind, tag);
    fail("unknown geometry tag '" + tag + "'");
  }

  Polygon polygon() {
    Polygon poly;
    expect('(');
    do poly.rings.push_back(coordinate_list());
    while (accept(','));
    expect(')');
    return poly;
  }

  // Accepts both "MULTIPOINT ((1 2), (3 4))" and "MULTIPOINT (1 2, 3 4)".
  std::vector<Point> multi_point() {
    std::vector<Point> points;
    expect('(');
    do {
      if (accept('(')) {
        points.push_back(coordinate());
        expect(')');
      } else {
        points.push_back(coordinate());
      }
    } while (accept(','));
    expect(')');
    return points;
  }

  std::vector<Point> coordinate_list() {
    std::vector<Point> points;
    expect('(');
    do points.push_back(coordinate());
    while (accept(','));
    expect(')');
    return points;
  }

  Point coordinate() {
    Point p;
    p.lon = number();
    p.lat = number();
    skip_space();
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == '.' ||
                                std::isdigit(static_cast<unsigned char>(text_[pos_]))))
      throw Error(ErrorCode::unsupported_kind, "coordinates with more than 2 dimensions");
    return p;
  }

  double number() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
      throw Error(ErrorCode::invalid_geometry, "coordinate out of double range");
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::string word() {
    skip_space();
    std::string out;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_++]))));
    return out;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::syntax, why + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ec == std::errc() ? ptr : buf.data());
}

void append_point(std::string& out, Point p) {
  append_number(out, p.lon);
  out.push_back(' ');
  append_number(out, p.lat);
}

void append_sequence(std::string& out, const std::vector<Point>& points) {
  out.push_back('(');
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k) out += ", ";
    append_point(out, points[k]);
  }
  out.push_back(')');
}

void append_polygon(std::string& out, const Polygon& polygon) {
  out.push_back('(');
  for (std::size_t k = 0; k < polygon.rings.size(); ++k) {
    if (k) out += ", ";
    append_sequence(out, polygon.rings[k]);
  }
  out.push_back(')');
}

}  // namespace

Geometry parse_wkt(std::string_view text) { return WktReader(text).read(); }

std::string to_wkt(const Geometry& g) {
  std::string out(to_string(g.kind()));
  out += " ";
  switch (g.kind()) {
    case GeometryKind::point:
      out.push_back('(');
      append_point(out, g.points().front());
      out.push_back(')');
      break;
    case GeometryKind::line_string: append_sequence(out, g.lines().front()); break;
    case GeometryKind::polygon: append_polygon(out, g.polygons().front()); break;
    case GeometryKind::multi_point:
      out.push_back('(');
      for (std::size_t k = 0; k < g.points().size(); ++k) {
        if (k) out += ", ";
        out.push_back('(');
        append_point(out, g.points()[k]);
        out.push_back(')');
      }
      out.push_back(')');
      break;
    case GeometryKind::multi_line_string:
      out.push_back('(');
      for (std::size_t k = 0; k < g.lines().size(); ++k) {
        if (k) out += ", ";
        append_sequence(out, g.lines()[k]);
      }
      out.push_back(')');
      break;
    case GeometryKind::multi_polygon:
      out.push_back('(');
      for (std::size_t k = 0; k < g.polygons().size(); ++k) {
        if (k) out += ", ";
        append_polygon(out, g.polygons()[k]);
      }
      out.push_back(')');
      break;
  }
  return out;
}

}  // namespace radon
