#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace subsfc;
using namespace fixtures;

namespace {

struct EquithirdsSetup {
  CurveSpec cs;
  std::vector<FixedPlacement> all;
  FixedPlacement fp;
};

const EquithirdsSetup& eq_setup() {
  static const EquithirdsSetup s = [] {
    const auto& e = equithirds();
    const auto b = e.rule.index_of("B+");
    EquithirdsSetup out{make_curve(e.rule, e.spec, b), find_fixed_placements(b, 4, e.rule), {}};
    out.fp = interior_placements(out.all, e.rule).at(0);
    return out;
  }();
  return s;
}

/// Square window of side `side` centred on the supertile of the placement.
BoundingBox window_around(const FixedPlacement& fp, const SubstitutionRule& rule, double side) {
  const Point c = centroid(supertile_support(fp, rule));
  BoundingBox w;
  w.expand(c - Point{side / 2, side / 2});
  w.expand(c + Point{side / 2, side / 2});
  return w;
}

}  // namespace

TEST(FixedPlacements, ThueMorseAndNu) {
  const auto& t = tm_lebesgue();
  const auto fps = find_fixed_placements(t.rule.index_of("A"), 1, t.rule);
  ASSERT_EQ(fps.size(), 2u);
  EXPECT_EQ(fps[0].x, (Point{0, 0}));
  EXPECT_EQ(fps[1].x, (Point{-1, -1}));
  const auto& s = nu();
  const auto nfp = find_fixed_placements(s.rule.index_of("a"), 1, s.rule);
  ASSERT_EQ(nfp.size(), 1u);
  EXPECT_EQ(nfp[0].x, (Point{0, 0}));
  EXPECT_THROW(find_fixed_placements(0, 0, t.rule), OutOfRange);
}

TEST(FixedPlacements, EquithirdsDepthFour) {
  const auto& e = equithirds();
  const auto& s = eq_setup();
  EXPECT_EQ(s.all.size(), 5u);
  EXPECT_EQ(interior_placements(s.all, e.rule).size(), 2u);
  for (const auto& fp : s.all) {
    EXPECT_TRUE(check_fixed(fp, e.rule));
    // re-expanding p + x puts a copy of p at x again
    bool found = false;
    const double l4 = 9.0;
    for (const auto& t : supertile(fp.p, 4, e.rule).tiles)
      if (t.proto == fp.p && distance(t.offset + l4 * fp.x, fp.x) < 1e-9) found = true;
    EXPECT_TRUE(found);
  }
  FixedPlacement wrong = s.fp;
  wrong.x = wrong.x + Point{0.25, 0};
  EXPECT_FALSE(check_fixed(wrong, e.rule));
}

TEST(Interior, Examples) {
  const auto& t = tm_lebesgue();
  EXPECT_FALSE(check_interior(find_fixed_placements(0, 1, t.rule)[0], t.rule));
  const auto& s = nu();
  EXPECT_FALSE(check_interior(find_fixed_placements(s.rule.index_of("a"), 1, s.rule)[0], s.rule));
  EXPECT_TRUE(check_interior(eq_setup().fp, equithirds().rule));
}

TEST(Nesting, Examples) {
  const auto& s = eq_setup();
  EXPECT_TRUE(check_nesting(s.fp, s.cs, 512));
  const Region r = placed_region(s.fp, s.cs, 0);
  EXPECT_TRUE(region_contains(r, r, 128));
  FixedPlacement moved = s.fp;
  moved.x = moved.x + Point{1, 0};  // F_1 + x moves by 1, the big region by 9
  EXPECT_FALSE(check_nesting(moved, s.cs, 512));
  EXPECT_THROW(check_nesting(s.fp, s.cs, 8), ResolutionTooCoarse);
}

TEST(Nesting, NeedsTheCurveThroughThePlacedPrototile) {
  const auto& e = equithirds();
  const auto other = make_curve(e.rule, e.spec, e.rule.index_of("A+"));
  EXPECT_THROW(check_nesting(eq_setup().fp, other, 512), SchemaError);
}

TEST(Adjacency, Examples) {
  const auto& t = tm_lebesgue();
  const auto tm1 = approximant_with_tiles(make_curve(t.rule, t.spec, 0), 1);
  EXPECT_FALSE(check_adjacency(tm1));
  EXPECT_EQ(first_non_adjacent(tm1.tiles), std::optional<std::size_t>(1));
  const auto& s = eq_setup();
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_TRUE(check_adjacency(approximant_with_tiles(s.cs, n))) << n;
  OrderedScaledTiles single;
  single.approximant.vertices = {{0.5, 0.5}};
  single.tiles = {unit_square()};
  EXPECT_TRUE(check_adjacency(single));
}

TEST(Conditions, EquithirdsPassNuFails) {
  const auto& s = eq_setup();
  const auto r = check_conditions(s.fp, s.cs, 512, 4);
  EXPECT_TRUE(r.ok()) << r.detail;
  const auto& n = nu();
  const auto a = n.rule.index_of("a");
  const auto fp = find_fixed_placements(a, 1, n.rule)[0];
  const auto rn = check_conditions(fp, make_curve(n.rule, n.spec, a), 512, 2);
  EXPECT_FALSE(rn.ok());
  EXPECT_FALSE(rn.closed);
  EXPECT_FALSE(rn.interior);
  EXPECT_THROW(build_dense_set(fp, make_curve(n.rule, n.spec, a), 2), ConditionsUnmet);
}

TEST(DenseSet, TwoNestedRegions) {
  const auto& s = eq_setup();
  const auto build = build_dense_set(s.fp, s.cs, 2);
  ASSERT_EQ(build.regions.size(), 2u);
  ASSERT_EQ(build.nested.size(), 1u);
  EXPECT_TRUE(build.nested[0]);
  EXPECT_GT(build.class_count, 0u);
  EXPECT_LE(build.class_count, build.pieces.size());
  // classes are refinements of prototile type
  std::map<std::size_t, ProtoIndex> type;
  for (const auto& piece : build.pieces) {
    const auto [it, fresh] = type.emplace(piece.class_id, piece.tile.proto);
    EXPECT_EQ(it->second, piece.tile.proto);
  }
}

TEST(DenseSet, ZeroIterationsIsTheFirstRegion) {
  const auto& s = eq_setup();
  const auto build = build_dense_set(s.fp, s.cs, 0);
  ASSERT_EQ(build.regions.size(), 1u);
  EXPECT_TRUE(build.nested.empty());
  const auto want = translate(closed_region(approximant(s.cs, 1)), s.fp.x);
  EXPECT_EQ(build.regions[0].loop, want.loop);
}

TEST(DenseSet, PiecesAreDisjointAndCoverTheSet) {
  const auto& s = eq_setup();
  const auto build = build_dense_set(s.fp, s.cs, 2);
  for (std::size_t i = 0; i < build.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < build.pieces.size(); ++j)
      ASSERT_LE(intersection_area(build.pieces[i].support, build.pieces[j].support), 1e-9);
  const auto& loop = build.regions.back().loop;
  const auto g = make_grid(build.window, 200);
  const auto bm = rasterize_loop(loop, g);
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      if (!bm.get(i, j)) continue;
      const Point c = g.center(i, j);
      const bool covered = std::any_of(build.pieces.begin(), build.pieces.end(),
                                       [&](const Piece& p) { return contains(p.support, c, {1e-9}); });
      ASSERT_TRUE(covered) << c.x << "," << c.y;
    }
}

TEST(DenseSet, TranslatesShareAClass) {
  const auto& s = eq_setup();
  const auto build = build_dense_set(s.fp, s.cs, 2);
  // re-running on a shifted window reuses the same class ids for the same pieces
  const auto again = build_dense_set(s.fp, s.cs, 2, build.window);
  ASSERT_EQ(again.pieces.size(), build.pieces.size());
  for (std::size_t k = 0; k < build.pieces.size(); ++k) EXPECT_EQ(again.pieces[k].class_id, build.pieces[k].class_id);
}

TEST(DenseSet, NestingChainAndRelativeDensity) {
  const auto& e = equithirds();
  const auto& s = eq_setup();
  double side = 0;
  for (const auto& p : e.rule.prototiles()) side = std::max(side, diameter(p.support));
  const auto window = window_around(s.fp, e.rule, 10 * e.rule.diameter_of(s.fp.p));
  const auto build = build_dense_set(s.fp, s.cs, 4, window);
  ASSERT_EQ(build.nested.size(), 3u);
  for (bool link : build.nested) EXPECT_TRUE(link);
  // every disc of radius R = max prototile diameter centred in the window meets F
  const auto g = make_grid(window, 400);
  const auto bm = rasterize_loop(build.regions.back().loop, g);
  std::vector<Point> filled;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      if (bm.get(i, j)) filled.push_back(g.center(i, j));
  ASSERT_FALSE(filled.empty());
  EXPECT_LE(coverage_radius(filled, window, 40), side);
  EXPECT_GT(build.pieces.size(), 0u);
  EXPECT_LT(build.class_count, build.pieces.size());
}
