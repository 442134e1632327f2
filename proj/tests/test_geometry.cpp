#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "subsfc/geometry.hpp"
#include "subsfc/raster.hpp"

using namespace subsfc;

namespace {

constexpr double kPhi = std::numbers::phi;

Polygon rect(double x0, double y0, double x1, double y1) {
  return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

Polygon random_polygon(std::mt19937& rng) {
  // star-shaped around the origin, so always simple
  std::uniform_real_distribution<double> r(0.5, 2.0);
  const int n = 3 + static_cast<int>(rng() % 6);
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * k / n;
    const double s = r(rng);
    pts.push_back({s * std::cos(a), s * std::sin(a)});
  }
  return make_polygon(pts);
}

}  // namespace

TEST(Polygon, RejectsDegenerateInput) {
  EXPECT_THROW(make_polygon({{0, 0}, {1, 0}}), DegeneratePolygon);
  EXPECT_THROW(make_polygon({{0, 0}, {1, 0}, {2, 0}}), DegeneratePolygon);
  EXPECT_THROW(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), DegeneratePolygon);
  EXPECT_THROW(make_polygon({{0, 0}, {1, 0}, {NAN, 1}}), DegeneratePolygon);
}

TEST(Polygon, NormalizesToCounterClockwise) {
  const auto p = make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_GT(signed_area(p), 0);
}

TEST(Area, Examples) {
  EXPECT_DOUBLE_EQ(area(rect(0, 0, 1, 1)), 1.0);
  EXPECT_NEAR(area(rect(0, 0, kPhi, kPhi)), 2.618033988, 1e-9);
  EXPECT_DOUBLE_EQ(area(make_polygon({{0, 0}, {2, 0}, {2, 4}})), 4.0);
}

TEST(Centroid, Examples) {
  const Point c1 = centroid(rect(0, 0, 1, 1));
  EXPECT_NEAR(c1.x, 0.5, 1e-15);
  EXPECT_NEAR(c1.y, 0.5, 1e-15);
  const Point c2 = centroid(make_polygon({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_NEAR(c2.x, 1.0 / 3, 1e-15);
  EXPECT_NEAR(c2.y, 1.0 / 3, 1e-15);
  const Point c3 = centroid(rect(0, 0, kPhi, 1));
  EXPECT_NEAR(c3.x, kPhi / 2, 1e-15);
  EXPECT_NEAR(c3.y, 0.5, 1e-15);
}

TEST(Diameter, Examples) {
  EXPECT_DOUBLE_EQ(diameter(rect(0, 0, 1, 1)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(diameter(rect(0, 0, 1, 2)), std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(diameter(rect(0, 0, kPhi, 1)), std::sqrt(kPhi * kPhi + 1));
}

TEST(SharedEdge, Examples) {
  const auto unit = rect(0, 0, 1, 1);
  auto e = shared_edge(unit, rect(1, 0, 2, 1));
  ASSERT_TRUE(e);
  EXPECT_NEAR(e->length(), 1.0, 1e-12);
  EXPECT_NEAR(e->a.x, 1.0, 1e-12);
  EXPECT_NEAR(e->b.x, 1.0, 1e-12);
  EXPECT_FALSE(shared_edge(unit, rect(1, 1, 2, 2)));
  e = shared_edge(unit, rect(0, 1, 1, 2));
  ASSERT_TRUE(e);
  EXPECT_NEAR(std::min(e->a.y, e->b.y), 1.0, 1e-12);
  EXPECT_NEAR(e->length(), 1.0, 1e-12);
}

TEST(SharedEdge, PartialOverlapOfLongerEdge) {
  const auto e = shared_edge(rect(0, 0, 2, 1), rect(0.5, 1, 1.5, 2));
  ASSERT_TRUE(e);
  EXPECT_NEAR(e->length(), 1.0, 1e-12);
}

TEST(InteriorsDisjoint, Examples) {
  const auto unit = rect(0, 0, 1, 1);
  EXPECT_TRUE(interiors_disjoint(unit, translate(unit, {1, 0})));
  EXPECT_FALSE(interiors_disjoint(unit, rect(0.5, 0, 1.5, 1)));
  EXPECT_FALSE(interiors_disjoint(unit, unit));
  EXPECT_NEAR(intersection_area(unit, rect(0.5, 0, 1.5, 1)), 0.5, 1e-12);
}

TEST(InteriorsDisjoint, NonConvexPolygons) {
  const auto ell = make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(interiors_disjoint(ell, rect(1, 1, 2, 2)));
  EXPECT_NEAR(intersection_area(ell, rect(0.5, 0.5, 1.5, 1.5)), 0.75, 1e-12);
}

TEST(Rotate, QuarterTurnsAreExact) {
  EXPECT_EQ(rotate(Point{1, 2}, 90), (Point{-2, 1}));
  EXPECT_EQ(rotate(Point{1, 2}, -90), (Point{2, -1}));
  EXPECT_EQ(rotate(Point{1, 2}, 540), (Point{-1, -2}));
}

TEST(GeometryProperties, TranslationScaleSymmetry) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-50, 50), s(0.1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_polygon(rng);
    const Point v{u(rng), u(rng)};
    const double lam = s(rng);
    EXPECT_NEAR(area(translate(p, v)), area(p), 1e-12 * area(p) * 100);
    const Point c = centroid(scale(p, lam)), c0 = lam * centroid(p);
    EXPECT_NEAR(c.x, c0.x, 1e-12 * lam * 10);
    EXPECT_NEAR(c.y, c0.y, 1e-12 * lam * 10);
    EXPECT_NEAR(diameter(scale(p, lam)), lam * diameter(p), 1e-12 * lam * 10);
  }
}

TEST(GeometryProperties, SharedEdgeIsSymmetric) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double w = 0.5 + (rng() % 4), h = 0.5 + (rng() % 3), dy = static_cast<double>(rng() % 5) - 2;
    const auto a = rect(0, 0, w, h), b = rect(w, dy, w + 1, dy + h);
    const auto ab = shared_edge(a, b), ba = shared_edge(b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value());
    if (ab) {
      EXPECT_NEAR(ab->length(), ba->length(), 1e-12);
    }
  }
}

TEST(Raster, SquareCoverageAndComponents) {
  const auto sq = rect(0, 0, 1, 1);
  const auto g = make_grid(bounding_box(sq), 32);
  const auto bm = rasterize_loop(sq.vertices, g);
  EXPECT_EQ(bm.count(), 32u * 32u);
  EXPECT_EQ(count_components(bm, true), 1);
  EXPECT_EQ(count_components(bm, false), 1);
  const std::vector<Polygon> two{rect(0, 0, 1, 1), rect(2, 0, 3, 1)};
  BoundingBox box = bounding_box(two[0]);
  box.expand(bounding_box(two[1]));
  EXPECT_EQ(count_components(rasterize_union(two, make_grid(box, 60)), true), 2);
}

TEST(Raster, FrameHasTwoClearComponents) {
  const std::vector<Polygon> frame{make_polygon({{0, 0}, {3, 0}, {3, 1}, {0, 1}}), make_polygon({{0, 2}, {3, 2}, {3, 3}, {0, 3}}),
                                   make_polygon({{0, 1}, {1, 1}, {1, 2}, {0, 2}}), make_polygon({{2, 1}, {3, 1}, {3, 2}, {2, 2}})};
  BoundingBox box;
  for (const auto& p : frame) box.expand(bounding_box(p));
  const auto bm = rasterize_union(frame, make_grid(box, 60));
  EXPECT_EQ(count_components(bm, true), 1);
  EXPECT_EQ(count_components(bm, false), 2);
}
