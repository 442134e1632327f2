#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace subsfc;
using namespace fixtures;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n) / d; }

CurveSpec curve(const LoadedSubstitution& s, const std::string& id) {
  return make_curve(s.rule, s.spec, s.rule.index_of(id));
}

/// Cell centres of the 2^n x 2^n grid in Z-order, x taking the more
/// significant bit of each pair.
std::vector<Point> morton_centres(std::size_t n) {
  const std::uint64_t cells = std::uint64_t{1} << (2 * n);
  std::vector<Point> out;
  out.reserve(cells);
  for (std::uint64_t k = 0; k < cells; ++k) {
    std::uint32_t x = 0, y = 0;
    for (std::size_t b = 0; b < n; ++b) {
      y |= static_cast<std::uint32_t>((k >> (2 * b)) & 1u) << b;
      x |= static_cast<std::uint32_t>((k >> (2 * b + 1)) & 1u) << b;
    }
    Point c{0.5 + x, 0.5 + y};
    for (std::size_t i = 0; i < n; ++i) c = {c.x / 2, c.y / 2};
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(CurveSpecs, RejectUnjoinedSeeds) {
  const auto& s = tm_lebesgue();
  // the Lebesgue curve runs (0,0) -> (1,1); a second square at (1,0) starts at (1,0)
  EXPECT_THROW(make_curve(s.rule, s.spec, {{0, {0, 0}, false}, {0, {1, 0}, false}}), GeometryError);
  EXPECT_NO_THROW(make_curve(s.rule, s.spec, {{0, {0, 0}, false}, {0, {1, 1}, false}}));
  EXPECT_NO_THROW(make_curve(s.rule, s.spec, {{0, {0, 0}, false}, {0, {0, 0}, true}}));
  EXPECT_THROW(make_curve(s.rule, s.spec, std::vector<SeedTile>{}), SchemaError);
}

TEST(Endpoints, ThueMorseAndNu) {
  const auto& t = tm_lebesgue();
  EXPECT_NEAR(distance(curve_start(0, t.rule, t.spec), {0, 0}), 0, 1e-15);
  EXPECT_NEAR(distance(curve_end(0, t.rule, t.spec), {1, 1}), 0, 1e-15);
  const auto& s = nu();
  const auto a = s.rule.index_of("a");
  EXPECT_NEAR(distance(curve_start(a, s.rule, s.spec), {0, 0}), 0, 1e-15);
  // last child of a is d, whose only child is a: the corner (phi, phi)
  EXPECT_NEAR(distance(curve_end(a, s.rule, s.spec), {kPhi, kPhi}), 0, 1e-12);
}

TEST(Endpoints, EquithirdsB) {
  const auto& s = equithirds();
  const auto b = s.rule.index_of("B+");
  const Point p0 = curve_start(b, s.rule, s.spec), p1 = curve_end(b, s.rule, s.spec);
  EXPECT_NEAR(distance(p0, p1), 0, 1e-12);
  EXPECT_NEAR(p0.x, 0.5, 1e-12);
  EXPECT_NEAR(p0.y, std::sqrt(3.0) / 2, 1e-12);
}

TEST(Eval, ThueMorseOrigin) {
  const auto cs = curve(tm_lebesgue(), "A");
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto r = eval(0, n, cs);
    const double c = std::ldexp(0.5, -static_cast<int>(n));
    EXPECT_EQ(r.point, (Point{c, c}));
    EXPECT_DOUBLE_EQ(r.error_bound, std::sqrt(2.0) * std::ldexp(1.0, -static_cast<int>(n)));
  }
}

TEST(Eval, ThueMorseRightEndOfFirstInterval) {
  const auto cs = curve(tm_lebesgue(), "A");
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto r = eval(q(1, 7), n, cs);
    EXPECT_LE(distance(r.point, {0.5, 0.5}), r.error_bound);
  }
  EXPECT_NEAR(distance(eval(q(1, 7), 30, cs).point, {0.5, 0.5}), 0, 1e-8);
}

TEST(Eval, ThueMorseBaseSevenOracle) {
  // hi endpoints of level-n intervals: base-7 digits 2*idx then 666...
  const auto cs = curve(tm_lebesgue(), "A");
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    Rational t{0}, w{1};
    Point f{0, 0};
    double pw = 1;
    for (std::size_t k = 0; k < n; ++k) {
      const unsigned idx = rng() % 4;
      w /= 7;
      pw /= 2;
      t += w * (2 * idx);
      f += pw * Point{static_cast<double>(idx >> 1), static_cast<double>(idx & 1)};
    }
    t += w;
    f += Point{pw, pw};
    const auto r = eval(t, 40, cs);
    EXPECT_NEAR(distance(r.point, f), 0, 1e-10) << to_string(t);
  }
}

TEST(Eval, NuAtOneIsTheLastTileCentroid) {
  const auto& s = nu();
  const auto cs = curve(s, "a");
  const auto tiles = ordered_supertile(s.rule.index_of("a"), 3, s.rule, s.spec);
  const Point want = scaled_centroid(tiles.back().tile, 3, s.rule);
  const auto r = eval(1, 3, cs);
  EXPECT_NEAR(distance(r.point, want), 0, 1e-12);
  EXPECT_DOUBLE_EQ(r.error_bound, moduli(cs, 3).h);
}

TEST(Eval, GapsAreAffine) {
  const auto& s = nu();
  const auto cs = curve(s, "a");
  // gap (1/7, 2/7) at level 1: both ends are Cantor points, the middle is their mean
  const std::size_t n = 25;
  const Point fa = eval(q(1, 7), n, cs).point, fb = eval(q(2, 7), n, cs).point;
  const Point mid = eval(q(3, 14), n, cs).point;
  EXPECT_NEAR(distance(mid, 0.5 * (fa + fb)), 0, 1e-9);
  const Point quarter = eval(q(1, 7) + q(1, 28), n, cs).point;
  EXPECT_NEAR(distance(quarter, fa + 0.25 * (fb - fa)), 0, 1e-9);
}

TEST(Eval, OutOfRangeArguments) {
  const auto cs = curve(nu(), "a");
  EXPECT_THROW(eval(q(3, 2), 3, cs), OutOfRange);
  EXPECT_THROW(eval(q(-1, 2), 3, cs), OutOfRange);
  EXPECT_THROW(eval(0, 0, cs), OutOfRange);
}

TEST(Eval, DepthLipschitz) {
  std::mt19937 rng(23);
  for (const auto* s : all_builtins())
    for (ProtoIndex p : main_prototiles(*s)) {
      const auto cs = make_curve(s->rule, s->spec, p);
      for (int trial = 0; trial < 60; ++trial) {
        const Rational t = q(static_cast<long long>(rng() % 100000), 99991);
        if (t > 1) continue;
        for (std::size_t n = 1; n <= 6; ++n) {
          const auto a = eval(t, n, cs), b = eval(t, n + 1, cs);
          ASSERT_LE(distance(a.point, b.point), a.error_bound + 1e-12) << s->name << " t=" << to_string(t) << " n=" << n;
        }
      }
    }
}

TEST(Eval, RefinementConsistency) {
  // level-n endpoints in the Cantor set evaluate at depth n+1 inside their depth-n tile
  for (const auto* s : all_builtins())
    for (ProtoIndex p : main_prototiles(*s)) {
      const auto cs = make_curve(s->rule, s->spec, p);
      for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& node : cantor_level(p, n, s->rule, s->spec)) {
          const auto tile = scaled_support(tile_at(p, node.addr, s->rule, s->spec), n, s->rule);
          const double eps = 1e-9 * s->rule.diameter_of(p);
          EXPECT_TRUE(contains(tile, eval(node.hi, n + 1, cs).point, {eps}));
          if (detail::left_end_kept(node.label, s->rule, s->spec)) {
            EXPECT_TRUE(contains(tile, eval(node.lo, n + 1, cs).point, {eps}));
          }
        }
    }
}

TEST(Approximant, NuFirstLevel) {
  const auto& s = nu();
  const auto appr = approximant(curve(s, "a"), 1);
  ASSERT_EQ(appr.size(), 4u);
  const auto kids = ordered_children(s.rule.index_of("a"), s.rule, s.spec);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(distance(appr.vertices[k], (1 / kPhi) * (kids[k].offset + s.rule.centroid_of(kids[k].proto))), 0, 1e-15);
  EXPECT_FALSE(appr.closed);
}

TEST(Approximant, VertexIsTheRankedTileCentroid) {
  for (const auto* s : all_builtins())
    for (ProtoIndex p : main_prototiles(*s)) {
      const auto cs = make_curve(s->rule, s->spec, p);
      for (std::size_t n = 1; n <= 5; ++n) {
        const auto appr = approximant(cs, n);
        ASSERT_EQ(appr.size(), s->rule.tile_counts(n)[p]);
        for (std::size_t k = 0; k < appr.size(); k += 1 + appr.size() / 97) {
          const auto addr = rank_to_address(k + 1, p, n, s->rule, s->spec);
          const Point c = centroid(scaled_support(tile_at(p, addr, s->rule, s->spec), n, s->rule));
          ASSERT_NEAR(distance(appr.vertices[k], c), 0, 1e-9);
          ASSERT_EQ(appr.addresses[k], addr);
        }
      }
    }
}

TEST(Approximant, LebesgueIsMortonExactly) {
  const auto cs = curve(tm_lebesgue(), "A");
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto appr = approximant(cs, n);
    const auto want = morton_centres(n);
    ASSERT_EQ(appr.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) ASSERT_EQ(appr.vertices[k], want[k]) << "n=" << n << " k=" << k;
  }
}

TEST(Approximant, EquithirdsPairSeedIsClosed) {
  const auto& s = equithirds();
  const auto cs = make_curve(s.rule, s.spec, s.seeds.at("pair"));
  const auto appr = approximant(cs, 1);
  EXPECT_EQ(appr.size(), 6u);
  EXPECT_TRUE(appr.closed);
  EXPECT_NEAR(distance(curve_start(cs), curve_end(cs)), 0, 1e-12);
  EXPECT_EQ(appr.seed_index.front(), 0u);
  EXPECT_EQ(appr.seed_index.back(), 1u);
}

TEST(Approximant, ReversedSeedRunsBackwards) {
  const auto& s = tm_lebesgue();
  const auto fwd = approximant(make_curve(s.rule, s.spec, {{0, {0, 0}, false}}), 2);
  const auto rev = approximant(make_curve(s.rule, s.spec, {{0, {0, 0}, true}}), 2);
  for (std::size_t k = 0; k < fwd.size(); ++k) EXPECT_EQ(fwd.vertices[k], rev.vertices[fwd.size() - 1 - k]);
  const auto cs = make_curve(s.rule, s.spec, {{0, {0, 0}, true}});
  EXPECT_NEAR(distance(eval(0, 10, cs).point, {1, 1}), 0, 1e-2);
}

TEST(Moduli, ThueMorseClosedForm) {
  const auto cs = curve(tm_lebesgue(), "A");
  Rational g{1};
  for (std::size_t n = 1; n <= 6; ++n) {
    g /= 7;
    const auto m = moduli(cs, n);
    EXPECT_EQ(m.g, g);
    EXPECT_DOUBLE_EQ(m.h, std::sqrt(2.0) * std::ldexp(1.0, -static_cast<int>(n)));
  }
}

TEST(Moduli, MatchCantorLevelsAndShrink) {
  for (const auto* s : all_builtins())
    for (ProtoIndex p : main_prototiles(*s)) {
      const auto cs = make_curve(s->rule, s->spec, p);
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto m = moduli(cs, n);
        EXPECT_EQ(m.g, max_length(cantor_level(p, n, s->rule, s->spec)));
        EXPECT_LT(moduli(cs, n + 1).h, m.h);
      }
    }
  EXPECT_EQ(moduli(curve(nu(), "a"), 1).g, q(1, 7));
}

TEST(Continuity, ThueMorseAndEquithirdsPass) {
  const auto& t = tm_lebesgue();
  const auto r = continuity_check(0, 3, t.rule, t.spec);
  EXPECT_TRUE(r.ok) << r.worst;
  EXPECT_DOUBLE_EQ(r.bound, std::sqrt(2.0) / 8);
  EXPECT_EQ(r.pairs, 0u);  // every level-3 gap is at least g_3 long
  const auto refined = continuity_check(0, 3, t.rule, t.spec, {}, kDefaultTileCap, 2);
  EXPECT_TRUE(refined.ok) << refined.worst;
  EXPECT_GT(refined.pairs, 0u);
  EXPECT_EQ(refined.delta, r.delta);
  const auto& e = equithirds();
  for (const char* id : {"A+", "B+"}) {
    const auto re = continuity_check(e.rule.index_of(id), 3, e.rule, e.spec);
    EXPECT_TRUE(re.ok) << id << " " << re.worst << " > " << re.bound;
    const auto fine = continuity_check(e.rule.index_of(id), 3, e.rule, e.spec, {}, kDefaultTileCap, 2);
    EXPECT_TRUE(fine.ok) << id << " " << fine.worst << " > " << fine.bound;
  }
}

TEST(Continuity, NuShortGapPairExceedsTheModulus) {
  // The pair 3/49, 4/49 sits across a gap of length 1/49 < g_2 / 2 and maps
  // to points one unit apart, more than h_2.
  const auto& s = nu();
  const auto a = s.rule.index_of("a");
  const auto r2 = continuity_check(a, 2, s.rule, s.spec);
  EXPECT_FALSE(r2.ok);
  EXPECT_EQ(r2.delta, q(1, 28));
  EXPECT_NEAR(r2.worst, 1.0, 1e-12);
  EXPECT_EQ(r2.worst_x, q(3, 49));
  EXPECT_EQ(r2.worst_y, q(4, 49));
  const auto r3 = continuity_check(a, 3, s.rule, s.spec);
  EXPECT_FALSE(r3.ok);
  EXPECT_NEAR(r3.worst, 1 / kPhi, 1e-12);
  EXPECT_EQ(r3.worst_x, q(3, 343));
  EXPECT_EQ(r3.worst_y, q(4, 343));
}

TEST(Continuity, RandomOrdersOnThueMorse) {
  std::mt19937 rng(29);
  const auto& r = tm_lebesgue().rule;
  for (int trial = 0; trial < 25; ++trial) {
    OrderSpec spec = identity_order(r);
    for (auto& v : spec.visit) std::shuffle(v.begin(), v.end(), rng);
    for (std::size_t N = 2; N <= 3; ++N) {
      const auto rep = continuity_check(0, N, r, spec, {}, kDefaultTileCap, 2);
      EXPECT_TRUE(rep.ok) << "trial " << trial << " N=" << N << " worst " << rep.worst;
    }
  }
}

TEST(Cover, Examples) {
  const auto tm = curve(tm_lebesgue(), "A");
  const auto r1 = cover_check(tm, 4, 32);
  EXPECT_TRUE(r1.ok);
  EXPECT_DOUBLE_EQ(r1.bound, std::sqrt(2.0) / 16 + 1.0 / 32);
  EXPECT_EQ(r1.probes, 32u * 32u);
  const auto nu_a = curve(nu(), "a");
  EXPECT_TRUE(cover_check(nu_a, 3, 32).ok);
  EXPECT_TRUE(cover_check(nu_a, 5, 64).ok);
  // one probe at the centre of the box
  const auto single = cover_check(tm, 2, 1);
  EXPECT_EQ(single.probes, 1u);
  double best = 1e9;
  for (auto v : approximant(tm, 2).vertices) best = std::min(best, distance(v, {0.5, 0.5}));
  EXPECT_DOUBLE_EQ(single.max_distance, best);
}

TEST(Cover, BruteForceAgreement) {
  const auto cs = curve(equithirds(), "B+");
  const auto appr = approximant(cs, 4);
  const auto r = cover_check(cs, 4, 40);
  EXPECT_TRUE(r.ok);
  const auto box = bounding_box(seed_supports(cs)[0]);
  double worst = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      const Point p{box.lo.x + (i + 0.5) * box.width() / 40, box.lo.y + (j + 0.5) * box.height() / 40};
      if (!contains(seed_supports(cs)[0], p)) continue;
      double best = 1e9;
      for (auto v : appr.vertices) best = std::min(best, distance(p, v));
      worst = std::max(worst, best);
    }
  EXPECT_NEAR(r.max_distance, worst, 1e-12);
}

TEST(ClosedRegion, Examples) {
  Approximant tri;
  tri.vertices = {{0, 0}, {1, 0}, {0, 1}};
  EXPECT_EQ(closed_region(tri).loop, tri.vertices);
  Approximant line;
  line.vertices = {{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}};
  EXPECT_THROW(closed_region(line), DegenerateRegion);
  Approximant two;
  two.vertices = {{0, 0}, {1, 1}};
  EXPECT_THROW(closed_region(two), DegenerateRegion);
  const auto appr = approximant(curve(equithirds(), "B+"), 1);
  const auto region = closed_region(appr);
  EXPECT_EQ(region.loop.size(), 3u);
  EXPECT_GT(std::abs(signed_area(region.loop)), 0.01);
}
