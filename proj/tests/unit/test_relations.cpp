#include <gtest/gtest.h>

#include <string>

#include "exact_oracle.hpp"
#include "generators.hpp"
#include "radon/error.hpp"
#include "radon/relation.hpp"
#include "radon/wkt.hpp"

using namespace radon;
using radon::testing::Gen;

namespace {

constexpr Location I = Location::interior;
constexpr Location B = Location::boundary;
constexpr Location E = Location::exterior;

/// Relation definitions in point-set form, read off a matrix.
bool unfold(Relation r, const De9imMatrix& m, int d1, int d2) {
  auto meets = [&](std::initializer_list<Location> xs, std::initializer_list<Location> ys) {
    for (Location x : xs)
      for (Location y : ys)
        if (m(x, y) >= 0) return true;
    return false;
  };
  const bool common = meets({I, B}, {I, B});
  const bool first_inside = !meets({I, B}, {E});   // g1 is a subset of g2
  const bool second_inside = !meets({E}, {I, B});  // g2 is a subset of g1
  const int ii = m(I, I);
  switch (r) {
    case Relation::equals: return ii >= 0 && first_inside && second_inside;
    case Relation::disjoint: return !common;
    case Relation::intersects: return common;
    case Relation::touches: return common && ii < 0;
    case Relation::within: return ii >= 0 && first_inside;
    case Relation::contains: return ii >= 0 && second_inside;
    case Relation::covers: return common && second_inside;
    case Relation::covered_by: return common && first_inside;
    case Relation::crosses:
      if (d1 == d2) return d1 == 1 && ii == 0;
      return ii >= 0 && ii < std::max(d1, d2) && (d1 < d2 ? m(I, E) >= 0 : m(E, I) >= 0);
    case Relation::overlaps: return d1 == d2 && ii == d1 && m(I, E) >= 0 && m(E, I) >= 0;
  }
  return false;
}

Geometry box(double x0, double y0, double x1, double y1) {
  return Geometry::polygon({{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}}});
}

// A large region near Leipzig, with one patch inside it and another straddling
// its border.
const Geometry kRegion = box(12.20, 51.20, 12.60, 51.45);
const Geometry kInner = Geometry::polygon({{{{12.340703846780286, 51.30},
                                             {12.36, 51.28797110806819},
                                             {12.389192648396918, 51.31},
                                             {12.37, 51.33902633403139},
                                             {12.340703846780286, 51.30}}}});
const Geometry kStraddling = box(12.55, 51.30, 12.70, 51.35);

}  // namespace

TEST(Relations, NamesAndParsing) {
  for (Relation r : kAllRelations) EXPECT_EQ(parse_relation(to_string(r)), r);
  EXPECT_EQ(to_string(Relation::covered_by), "coveredBy");
  EXPECT_EQ(parse_relation("COVEREDBY"), Relation::covered_by);
  EXPECT_EQ(parse_relation("covered_by"), Relation::covered_by);
  try {
    (void)parse_relation("near");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_relation);
  }
}

TEST(Relations, ReverseTable) {
  EXPECT_EQ(reverse(Relation::equals), Relation::equals);
  EXPECT_EQ(reverse(Relation::within), Relation::contains);
  EXPECT_EQ(reverse(Relation::covers), Relation::covered_by);
  EXPECT_EQ(reverse(Relation::intersects), Relation::intersects);
  EXPECT_EQ(reverse(Relation::touches), Relation::touches);
  EXPECT_EQ(reverse(Relation::overlaps), Relation::overlaps);
  EXPECT_EQ(reverse(Relation::crosses), Relation::crosses);
  EXPECT_EQ(reverse(Relation::disjoint), Relation::disjoint);
  for (Relation r : kAllRelations) EXPECT_EQ(reverse(reverse(r)), r);
}

TEST(Relations, NestedAndStraddlingAreas) {
  EXPECT_TRUE(evaluate(Relation::within, kInner, kRegion));
  EXPECT_TRUE(evaluate(Relation::intersects, kInner, kRegion));
  EXPECT_TRUE(evaluate(Relation::disjoint, kStraddling, kInner));
  EXPECT_FALSE(evaluate(Relation::within, kStraddling, kRegion));
  EXPECT_TRUE(evaluate(Relation::overlaps, kStraddling, kRegion));
}

TEST(Relations, EqualsIsReflexive) {
  Gen g(31);
  for (int k = 0; k < 500; ++k) {
    const Geometry a = radon::testing::random_geometry(g, {-50, -50, 50, 50}, 20);
    EXPECT_TRUE(evaluate(Relation::equals, a, a)) << to_wkt(a);
    EXPECT_TRUE(evaluate(Relation::covers, a, a));
    EXPECT_FALSE(evaluate(Relation::disjoint, a, a));
  }
}

TEST(Relations, KnownCases) {
  const Geometry sq = box(0, 0, 2, 2);
  EXPECT_TRUE(evaluate(Relation::touches, sq, box(2, 0, 3, 2)));
  EXPECT_TRUE(evaluate(Relation::touches, sq, parse_wkt("POINT (2 1)")));
  EXPECT_FALSE(evaluate(Relation::within, parse_wkt("POINT (2 1)"), sq));
  EXPECT_TRUE(evaluate(Relation::covered_by, parse_wkt("POINT (2 1)"), sq));
  EXPECT_TRUE(evaluate(Relation::crosses, parse_wkt("LINESTRING (-1 1, 1 1)"), sq));
  EXPECT_TRUE(evaluate(Relation::crosses, parse_wkt("LINESTRING (0 0, 2 2)"), parse_wkt("LINESTRING (0 2, 2 0)")));
  EXPECT_FALSE(evaluate(Relation::crosses, sq, box(1, 1, 3, 3)));
  EXPECT_TRUE(evaluate(Relation::overlaps, sq, box(1, 1, 3, 3)));
  EXPECT_TRUE(evaluate(Relation::contains, sq, box(0.5, 0.5, 1, 1)));
  EXPECT_FALSE(evaluate(Relation::contains, sq, parse_wkt("LINESTRING (0 0, 2 0)")));
  EXPECT_TRUE(evaluate(Relation::covers, sq, parse_wkt("LINESTRING (0 0, 2 0)")));
  EXPECT_FALSE(evaluate(Relation::touches, sq, sq));
}

TEST(RelationsProperty, ReverseOverRandomPairs) {
  Gen g(32);
  const MBB window{0, 0, 10, 10};
  for (int k = 0; k < 1000; ++k) {
    const Geometry a = radon::testing::random_geometry(g, window, 6);
    const Geometry b = radon::testing::random_geometry(g, window, 6);
    for (Relation r : kAllRelations) {
      try {
        EXPECT_EQ(evaluate(r, a, b), evaluate(reverse(r), b, a)) << to_string(r) << " " << to_wkt(a) << " / " << to_wkt(b);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::numerical_degeneracy);
      }
    }
  }
}

TEST(RelationsProperty, DisjointIsNotIntersects) {
  Gen g(33);
  for (int k = 0; k < 1000; ++k) {
    const Geometry a = radon::testing::random_geometry(g, {0, 0, 10, 10}, 6);
    const Geometry b = radon::testing::random_geometry(g, {0, 0, 10, 10}, 6);
    EXPECT_NE(evaluate(Relation::disjoint, a, b), evaluate(Relation::intersects, a, b));
  }
}

TEST(RelationsProperty, AgreesWithDefinitionsOnExactMatrices) {
  Gen g(34);
  for (int k = 0; k < 400; ++k) {
    const auto [ia, ib] = radon::testing::int_pair(g);
    const Geometry a = ia.to_geometry(), b = ib.to_geometry();
    const De9imMatrix exact = radon::testing::oracle_de9im(ia, ib);
    for (Relation r : kAllRelations)
      EXPECT_EQ(evaluate(r, a, b), unfold(r, exact, a.dimension(), b.dimension()))
          << to_string(r) << " " << exact.str() << " " << to_wkt(a) << " / " << to_wkt(b);
  }
}

TEST(TestMbb, StraddlingNotWithinRegion) {
  EXPECT_FALSE(test_mbb(Relation::within, mbb(kStraddling), mbb(kRegion)).proceed);
  EXPECT_TRUE(test_mbb(Relation::within, mbb(kInner), mbb(kRegion)).proceed);
}

TEST(TestMbb, Rules) {
  const MBB a{0, 0, 2, 2}, inner{0.5, 0.5, 1, 1};
  EXPECT_TRUE(test_mbb(Relation::equals, a, a).proceed);
  EXPECT_TRUE(test_mbb(Relation::equals, a, {0, 0, 2, 2 + 1e-13}).proceed);
  EXPECT_FALSE(test_mbb(Relation::equals, a, {0, 0, 2, 2.001}).proceed);
  EXPECT_TRUE(test_mbb(Relation::covers, a, inner).proceed);
  EXPECT_TRUE(test_mbb(Relation::contains, a, inner).proceed);
  EXPECT_FALSE(test_mbb(Relation::contains, inner, a).proceed);
  EXPECT_TRUE(test_mbb(Relation::within, inner, a).proceed);
  EXPECT_TRUE(test_mbb(Relation::covered_by, inner, a).proceed);
  EXPECT_FALSE(test_mbb(Relation::covered_by, a, inner).proceed);
  for (Relation r : {Relation::intersects, Relation::touches, Relation::crosses, Relation::overlaps, Relation::disjoint})
    EXPECT_TRUE(test_mbb(r, a, {10, 10, 11, 11}).proceed);
}

TEST(TestMbbProperty, Soundness) {
  Gen g(35);
  const MBB window{0, 0, 4, 4};
  for (Relation r : kAllRelations) {
    int rejected = 0;
    for (int k = 0; k < 2000; ++k) {
      MBB s = radon::testing::random_box(g, window, 3);
      MBB t = g.chance(0.2) ? s : radon::testing::random_box(g, window, 3);
      if (g.chance(0.2)) t = {s.lon_min, s.lat_min, s.lon_max, t.lat_max < s.lat_min ? s.lat_max : std::max(t.lat_max, s.lat_min)};
      if (test_mbb(r, s, t).proceed) continue;
      ++rejected;
      const Geometry a = radon::testing::inscribed(g, s);
      const Geometry b = radon::testing::inscribed(g, t);
      EXPECT_FALSE(evaluate(r, a, b)) << to_string(r) << " " << to_wkt(a) << " / " << to_wkt(b);
    }
    if (r == Relation::within || r == Relation::equals) EXPECT_GT(rejected, 0);
  }
}
