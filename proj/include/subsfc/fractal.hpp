#pragma once

// Fixed placements p + x in omega^n(p + x), the four hypotheses of the
// dense-set construction, and the nested regions lambda^{in}(F_{in+1} + x)
// with their decomposition into tile pieces up to translation.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "subsfc/curve.hpp"
#include "subsfc/raster.hpp"

namespace subsfc {

struct FixedPlacement {
  ProtoIndex p = 0;
  std::size_t n = 1;
  Point x;
  Point child_offset;  // offset d of the self-copy inside omega^n(p)
};

/// Every child of omega^n(p) of type p at d gives x = d / (1 - lambda^n).
inline std::vector<FixedPlacement> find_fixed_placements(ProtoIndex p, std::size_t n, const SubstitutionRule& rule,
                                                         std::uint64_t cap = kDefaultTileCap) {
  if (n < 1) throw OutOfRange("fixed placements need n >= 1");
  const double ln = 1.0 / inverse_power(rule.lambda(), n);
  std::vector<FixedPlacement> out;
  for (const auto& t : supertile(p, n, rule, cap).tiles)
    if (t.proto == p) out.push_back({p, n, (1.0 / (1.0 - ln)) * t.offset, t.offset});
  return out;
}

inline double expansion(const SubstitutionRule& rule, std::size_t n) { return 1.0 / inverse_power(rule.lambda(), n); }

/// supp omega^n(p + x) = lambda^n (supp p + x).
inline Polygon supertile_support(const FixedPlacement& fp, const SubstitutionRule& rule) {
  return scale(translate(rule.prototile(fp.p).support, fp.x), expansion(rule, fp.n));
}

inline bool check_interior(const FixedPlacement& fp, const SubstitutionRule& rule, Tolerance tol = {}) {
  const Polygon tile = translate(rule.prototile(fp.p).support, fp.x);
  const Polygon outer = supertile_support(fp, rule);
  for (auto v : tile.vertices)
    if (!contains(outer, v, tol)) return false;
  return polygon_boundary_distance(tile, outer) > tol.eps;
}

/// Interior placements, nearest first to the centroid of the supertile.
inline std::vector<FixedPlacement> interior_placements(const std::vector<FixedPlacement>& all,
                                                       const SubstitutionRule& rule, Tolerance tol = {}) {
  std::vector<std::pair<double, FixedPlacement>> ranked;
  for (const auto& fp : all)
    if (check_interior(fp, rule, tol)) {
      const Point c = rule.centroid_of(fp.p) + fp.x;
      ranked.push_back({distance(c, centroid(supertile_support(fp, rule))), fp});
    }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FixedPlacement> out;
  for (auto& r : ranked) out.push_back(r.second);
  return out;
}

inline Region translate(const Region& r, Point v) {
  Region out;
  for (auto q : r.loop) out.loop.push_back(q + v);
  return out;
}

inline Region scale(const Region& r, double s) {
  Region out;
  for (auto q : r.loop) out.loop.push_back(s * q);
  return out;
}

inline BoundingBox bounding_box(const Region& r) { return bounding_box(r.loop); }

/// lambda^{k}(F_{k+1} + x), with F_{k+1} the filled approximant of the curve
/// through fp.p.
inline Region placed_region(const FixedPlacement& fp, const CurveSpec& cs, std::size_t k,
                            std::uint64_t cap = kDefaultTileCap) {
  const double lk = expansion(cs.rule, k);
  return scale(translate(closed_region(approximant(cs, k + 1, cap)), fp.x), lk);
}

/// Every filled pixel of `small` is filled in `big` dilated by one pixel.
/// Both are rasterized on one grid with `resolution` pixels across the
/// larger bounding box.
inline bool region_contains(const Region& big, const Region& small, int resolution) {
  BoundingBox box = bounding_box(big);
  box.expand(bounding_box(small));
  const PixelGrid g = make_grid(box, resolution);
  const Bitmap s = rasterize_loop(small.loop, g);
  if (s.count() < 16)
    throw ResolutionTooCoarse("smaller region covers " + std::to_string(s.count()) + " pixels at resolution " +
                              std::to_string(resolution));
  const Bitmap b = dilate(rasterize_loop(big.loop, g), 1);
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      if (s.get(i, j) && !b.get(i, j)) return false;
  return true;
}

inline void require_single_seed(const CurveSpec& cs, ProtoIndex p) {
  if (cs.seed.size() != 1 || cs.seed.front().proto != p || cs.seed.front().reversed ||
      cs.seed.front().offset != Point{0, 0})
    throw SchemaError("dense-set checks need the curve through the placed prototile itself");
}

/// F_1 + x inside lambda^n (F_{n+1} + x).
inline bool check_nesting(const FixedPlacement& fp, const CurveSpec& cs, int resolution = 512,
                          std::uint64_t cap = kDefaultTileCap) {
  require_single_seed(cs, fp.p);
  return region_contains(placed_region(fp, cs, fp.n, cap), placed_region(fp, cs, 0, cap), resolution);
}

/// Index of the first consecutive pair of tiles without a common edge.
inline std::optional<std::size_t> first_non_adjacent(const std::vector<Polygon>& tiles, Tolerance tol = {}) {
  for (std::size_t i = 0; i + 1 < tiles.size(); ++i)
    if (!shared_edge(tiles[i], tiles[i + 1], tol)) return i;
  return std::nullopt;
}

inline bool check_adjacency(const OrderedScaledTiles& visited, Tolerance tol = {}) {
  if (visited.tiles.size() != visited.approximant.size())
    throw SchemaError("tile list does not match the approximant");
  return !first_non_adjacent(visited.tiles, tol);
}

struct ConditionReport {
  bool closed = false;     // F(0) = F(1)
  bool fixed = false;      // (1)
  bool interior = false;   // (2)
  bool nesting = false;    // (3)
  bool adjacency = false;  // (4), checked for depths 1..adjacency_depth
  std::size_t adjacency_depth = 0;
  std::string detail;

  bool ok() const { return closed && fixed && interior && nesting && adjacency; }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!closed) out.emplace_back("F(0) != F(1)");
    if (!fixed) out.emplace_back("(1) p + x not in omega^n(p + x)");
    if (!interior) out.emplace_back("(2) supp(p + x) meets the supertile boundary");
    if (!nesting) out.emplace_back("(3) F_1 + x not inside lambda^n(F_{n+1} + x)");
    if (!adjacency) out.emplace_back("(4) consecutive tiles without a common edge");
    return out;
  }
};

inline bool check_fixed(const FixedPlacement& fp, const SubstitutionRule& rule, Tolerance tol = {},
                        std::uint64_t cap = kDefaultTileCap) {
  const double ln = expansion(rule, fp.n);
  const Point want = (1.0 - ln) * fp.x;
  for (const auto& t : supertile(fp.p, fp.n, rule, cap).tiles)
    if (t.proto == fp.p && distance(t.offset, want) <= tol.eps * std::max(1.0, ln * norm(fp.x))) return true;
  return false;
}

inline ConditionReport check_conditions(const FixedPlacement& fp, const CurveSpec& cs, int resolution = 512,
                                        std::size_t adjacency_depth = 4, Tolerance tol = {},
                                        std::uint64_t cap = kDefaultTileCap) {
  require_single_seed(cs, fp.p);
  ConditionReport r;
  r.adjacency_depth = adjacency_depth;
  std::ostringstream detail;
  r.closed = distance(curve_start(cs), curve_end(cs)) <= tol.eps * std::max(1.0, cs.rule.diameter_of(fp.p));
  r.fixed = check_fixed(fp, cs.rule, tol, cap);
  r.interior = check_interior(fp, cs.rule, tol);
  try {
    r.nesting = check_nesting(fp, cs, resolution, cap);
  } catch (const ResolutionTooCoarse& e) {
    detail << e.what() << "; ";
  }
  r.adjacency = true;
  for (std::size_t k = 1; k <= adjacency_depth && r.adjacency; ++k) {
    const auto visited = approximant_with_tiles(cs, k, cap);
    if (const auto i = first_non_adjacent(visited.tiles, tol)) {
      r.adjacency = false;
      detail << "depth " << k << ": tiles " << *i + 1 << " and " << *i + 2 << " share no edge; ";
    }
  }
  r.detail = detail.str();
  return r;
}

/// A_t = F cap supp t for one covering tile, with its translation class.
struct Piece {
  PlacedTile tile;
  Polygon support;
  std::size_t class_id = 0;
};

struct DenseSetBuild {
  std::size_t iterations = 0;
  std::vector<Region> regions;  // lambda^{in}(F_{in+1} + x), i = 0..
  std::vector<bool> nested;     // link i: regions[i] inside regions[i+1]
  std::vector<Piece> pieces;
  std::size_t class_count = 0;
  BoundingBox window;
};

/// Sub-segments of s inside the closed polygon.
inline std::vector<Segment> clip_segment(Segment s, const Polygon& poly, Tolerance tol = {}) {
  std::vector<double> ts{0.0, 1.0};
  const Point d = s.b - s.a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const Point f = e.b - e.a;
    const double den = cross(d, f);
    if (std::abs(den) > tol.eps * tol.eps) {
      const double t = cross(e.a - s.a, f) / den;
      const double u = cross(e.a - s.a, d) / den;
      if (t > 0 && t < 1 && u >= -tol.eps && u <= 1 + tol.eps) ts.push_back(t);
    } else if (dot(d, d) > 0) {
      for (auto q : {e.a, e.b}) {
        const double t = dot(q - s.a, d) / dot(d, d);
        if (t > 0 && t < 1) ts.push_back(t);
      }
    }
  }
  std::sort(ts.begin(), ts.end());
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-12) continue;
    const Point a = s.a + ts[i] * d, b = s.a + ts[i + 1] * d;
    if (!contains(poly, 0.5 * (a + b), tol)) continue;
    if (!out.empty() && distance(out.back().b, a) <= tol.eps)
      out.back().b = b;
    else
      out.push_back({a, b});
  }
  return out;
}

namespace detail {

struct PieceSignature {
  ProtoIndex proto = 0;
  std::vector<std::array<double, 4>> segments;  // relative to the tile offset
  bool probe_filled = false;
};

inline bool same_shape(const PieceSignature& a, const PieceSignature& b, double eps) {
  if (a.proto != b.proto || a.probe_filled != b.probe_filled || a.segments.size() != b.segments.size()) return false;
  for (std::size_t i = 0; i < a.segments.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k)
      if (std::abs(a.segments[i][k] - b.segments[i][k]) > eps) return false;
  return true;
}

/// A point of the prototile away from every clipped segment, chosen from the
/// prototile alone so translates of one piece probe the same spot.
inline Point probe_point(const Polygon& proto_support, const std::vector<std::array<double, 4>>& segs) {
  const Point c = centroid(proto_support);
  std::vector<Point> candidates{c};
  for (int k = 1; k <= 8; ++k)
    for (auto v : proto_support.vertices) candidates.push_back(c + (k / 18.0) * (v - c));
  Point best = c;
  double best_gap = -1;
  for (auto q : candidates) {
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& s : segs) gap = std::min(gap, point_segment_distance(q, {{s[0], s[1]}, {s[2], s[3]}}));
    if (gap > best_gap) {
      best_gap = gap;
      best = q;
    }
  }
  return best;
}

}  // namespace detail

/// Regions lambda^{in}(F_{in+1} + x) for i < max(iterations, 1), checked for
/// nesting link by link, and the pieces of the largest one cut by the tiles
/// of omega^{(k-1)n}(p + x) that meet `window`.
inline DenseSetBuild build_dense_set(const FixedPlacement& fp, const CurveSpec& cs, std::size_t iterations,
                                     std::optional<BoundingBox> window = std::nullopt, int resolution = 512,
                                     Tolerance tol = {}, std::uint64_t cap = kDefaultTileCap) {
  const auto conditions = check_conditions(fp, cs, resolution, 4, tol, cap);
  if (!conditions.ok()) {
    std::string msg = "conditions unmet:";
    for (const auto& f : conditions.failures()) msg += "\n  " + f;
    if (!conditions.detail.empty()) msg += "\n  " + conditions.detail;
    throw ConditionsUnmet(msg);
  }
  DenseSetBuild out;
  out.iterations = iterations;
  const std::size_t count = std::max<std::size_t>(iterations, 1);
  for (std::size_t i = 0; i < count; ++i) out.regions.push_back(placed_region(fp, cs, i * fp.n, cap));
  for (std::size_t i = 0; i + 1 < count; ++i) out.nested.push_back(region_contains(out.regions[i + 1], out.regions[i], resolution));

  const std::size_t depth = (count - 1) * fp.n;
  const double ld = expansion(cs.rule, depth);
  const Point shift = ld * fp.x;
  out.window = window ? *window : bounding_box(scale(translate(cs.rule.prototile(fp.p).support, fp.x), ld));
  const auto& loop = out.regions.back().loop;

  // bucket loop segments (closing segment included) by a coarse grid
  const double cell = std::max(1e-9, 2.0 * [&] {
    double d = 0;
    for (const auto& p : cs.rule.prototiles()) d = std::max(d, diameter(p.support));
    return d;
  }());
  const auto key = [&](double x, double y) {
    return std::pair<long, long>{static_cast<long>(std::floor(x / cell)), static_cast<long>(std::floor(y / cell))};
  };
  std::map<std::pair<long, long>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Segment s{loop[i], loop[(i + 1) % loop.size()]};
    BoundingBox b;
    b.expand(s.a);
    b.expand(s.b);
    const auto [i0, j0] = key(b.lo.x, b.lo.y);
    const auto [i1, j1] = key(b.hi.x, b.hi.y);
    for (long u = i0; u <= i1; ++u)
      for (long v = j0; v <= j1; ++v) buckets[{u, v}].push_back(i);
  }

  std::vector<detail::PieceSignature> representatives;
  const double match_eps = 1e-6 * std::max(1.0, cell);
  for (const auto& t : supertile(fp.p, depth, cs.rule, cap).tiles) {
    const PlacedTile placed{t.proto, t.offset + shift};
    const Polygon support = cs.rule.support(placed);
    const BoundingBox tb = bounding_box(support);
    if (!tb.overlaps(out.window)) continue;

    std::vector<std::size_t> candidates;
    const auto [i0, j0] = key(tb.lo.x, tb.lo.y);
    const auto [i1, j1] = key(tb.hi.x, tb.hi.y);
    for (long u = i0; u <= i1; ++u)
      for (long v = j0; v <= j1; ++v)
        if (auto it = buckets.find({u, v}); it != buckets.end())
          candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    detail::PieceSignature sig;
    sig.proto = t.proto;
    for (auto i : candidates)
      for (const auto& c : clip_segment({loop[i], loop[(i + 1) % loop.size()]}, support, tol)) {
        Point a = c.a - placed.offset, b = c.b - placed.offset;
        if (std::tie(b.x, b.y) < std::tie(a.x, a.y)) std::swap(a, b);
        sig.segments.push_back({a.x, a.y, b.x, b.y});
      }
    std::sort(sig.segments.begin(), sig.segments.end(), [](const auto& a, const auto& b) {
      for (std::size_t k = 0; k < 4; ++k) {
        const double ra = std::round(a[k] * 1e6), rb = std::round(b[k] * 1e6);
        if (ra != rb) return ra < rb;
      }
      return false;
    });
    const Point probe = detail::probe_point(cs.rule.prototile(t.proto).support, sig.segments);
    sig.probe_filled = point_in_loop(probe + placed.offset, loop);
    if (sig.segments.empty() && !sig.probe_filled) continue;  // F misses this tile

    std::size_t id = representatives.size();
    for (std::size_t r = 0; r < representatives.size(); ++r)
      if (detail::same_shape(representatives[r], sig, match_eps)) {
        id = r;
        break;
      }
    if (id == representatives.size()) representatives.push_back(std::move(sig));
    out.pieces.push_back({placed, support, id});
  }
  out.class_count = representatives.size();
  return out;
}

/// Largest distance from a probe in `window` (m x m cell centres) to the
/// nearest of `points`; a disc of that radius around any probe meets them.
inline double coverage_radius(const std::vector<Point>& points, const BoundingBox& window, std::size_t m) {
  double worst = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Point q{window.lo.x + (static_cast<double>(i) + 0.5) * window.width() / static_cast<double>(m),
                    window.lo.y + (static_cast<double>(j) + 0.5) * window.height() / static_cast<double>(m)};
      double best = std::numeric_limits<double>::infinity();
      for (auto p : points) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
  return worst;
}

}  // namespace subsfc
