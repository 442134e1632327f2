#pragma once

// The curve F: f on the Cantor set sends the nested interval chain at an
// address to the nested tile chain at the same address, and F extends f
// affinely across the gaps. Depth-n evaluation replaces each limit point by
// the centroid of its depth-n tile.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "subsfc/cantor.hpp"
#include "subsfc/geometry.hpp"
#include "subsfc/ordering.hpp"
#include "subsfc/substitution.hpp"

namespace subsfc {

struct SeedTile {
  ProtoIndex proto = 0;
  Point offset;
  bool reversed = false;
};

/// Curve through one prototile or through an ordered seed patch. The seed
/// splits [0,1] into equal parts, one per seed tile.
struct CurveSpec {
  SubstitutionRule rule;
  OrderSpec spec;
  std::vector<SeedTile> seed;
};

inline constexpr std::size_t kDecayCheckDepth = 6;

/// Throws GeometryError unless the scaled tile diameters are non-increasing
/// and end below where they start.
inline void require_decay(const SubstitutionRule& rule, std::size_t depth = kDecayCheckDepth) {
  const auto d = diameter_decay(rule, depth);
  if (!d.non_increasing || !(d.values.back() < d.values.front()))
    throw GeometryError("tile diameters of lambda^-n omega^n(p) do not shrink");
}

/// Tile of omega^|addr|(p) at `addr`, offset in the frame of lambda^n supp p.
inline PlacedTile tile_at(ProtoIndex p, const Address& addr, const SubstitutionRule& rule, const OrderSpec& spec) {
  PlacedTile t{p, {0, 0}};
  for (std::size_t i = 0; i < addr.size(); ++i) {
    const auto& v = visit_order(t.proto, rule, spec);
    const auto d = addr.digits[i];
    if (d < 1 || d > v.size()) throw OutOfRange("address " + addr.str() + " out of range");
    const PlacedTile& c = rule.children(t.proto)[v[d - 1]];
    t = {c.proto, c.offset + rule.lambda() * t.offset};
  }
  return t;
}

inline double inverse_power(double lambda, std::size_t n) {
  double s = 1.0;
  for (std::size_t i = 0; i < n; ++i) s /= lambda;
  return s;
}

/// Centroid of the depth-n tile `t`, scaled into supp p.
inline Point scaled_centroid(const PlacedTile& t, std::size_t n, const SubstitutionRule& rule) {
  return (rule.centroid_of(t.proto) + t.offset) * inverse_power(rule.lambda(), n);
}

inline Polygon scaled_support(const PlacedTile& t, std::size_t n, const SubstitutionRule& rule) {
  const double s = inverse_power(rule.lambda(), n);
  Polygon out;
  for (auto v : rule.prototile(t.proto).support.vertices) out.vertices.push_back((v + t.offset) * s);
  return out;
}

namespace detail {

/// A kept interval with the tile carrying the same address.
struct Cursor {
  IntervalNode node;
  PlacedTile tile;
};

inline std::vector<Cursor> children(const Cursor& c, const SubstitutionRule& rule, const OrderSpec& spec) {
  auto nodes = subdivide(c.node, rule, spec);
  const auto& v = visit_order(c.tile.proto, rule, spec);
  std::vector<Cursor> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const PlacedTile& ch = rule.children(c.tile.proto)[v[i]];
    out.push_back({std::move(nodes[i]), {ch.proto, ch.offset + rule.lambda() * c.tile.offset}});
  }
  return out;
}

/// Follows the first (or last) child down to depth n.
inline Cursor descend_edge(Cursor c, std::size_t n, bool first, const SubstitutionRule& rule, const OrderSpec& spec) {
  while (c.node.depth < n) {
    auto kids = children(c, rule, spec);
    c = first ? std::move(kids.front()) : std::move(kids.back());
  }
  return c;
}

/// Sum over k >= 0 of lambda^-(k+1) o_k along the first (or last) child
/// chain from q: the limit point of the nested tiles, in the frame of supp q.
inline Point chain_limit(ProtoIndex q, bool first, const SubstitutionRule& rule, const OrderSpec& spec) {
  std::map<ProtoIndex, std::size_t> seen;
  std::vector<Point> offsets;
  std::vector<ProtoIndex> protos;
  while (!seen.contains(q)) {
    seen[q] = offsets.size();
    protos.push_back(q);
    const auto& v = visit_order(q, rule, spec);
    const PlacedTile& c = rule.children(q)[first ? v.front() : v.back()];
    offsets.push_back(c.offset);
    q = c.proto;
  }
  const std::size_t s = seen[q];
  const double inv = 1.0 / rule.lambda();
  Point prefix{0, 0};
  double w = inv;
  for (std::size_t k = 0; k < s; ++k, w *= inv) prefix += w * offsets[k];
  Point period{0, 0};
  double wp = w;
  for (std::size_t k = s; k < offsets.size(); ++k, wp *= inv) period += wp * offsets[k];
  const double ratio = std::pow(inv, static_cast<double>(offsets.size() - s));
  return prefix + (1.0 / (1.0 - ratio)) * period;
}

/// inf of the Cantor set inside `node`: the limit of lo along the first-child
/// chain. Exact.
inline Rational chain_infimum(const IntervalNode& node, const SubstitutionRule& rule, const OrderSpec& spec) {
  // Along the chain lo_{k+1} = lo_k + a_k len_k and len_{k+1} = r_k len_k.
  std::map<ProtoIndex, std::size_t> seen;
  std::vector<Rational> a, r;
  ProtoIndex q = node.label;
  while (!seen.contains(q)) {
    seen[q] = a.size();
    const auto& v = visit_order(q, rule, spec);
    if (v.size() == 1) {
      a.emplace_back(1, 2);
      r.emplace_back(1, 2);
    } else {
      a.emplace_back(0);
      r.emplace_back(1, static_cast<int>(2 * v.size() - 1));
    }
    q = rule.children(q)[v.front()].proto;
  }
  const std::size_t s = seen[q];
  Rational lo = node.lo, len = node.length();
  for (std::size_t k = 0; k < s; ++k) {
    lo += a[k] * len;
    len *= r[k];
  }
  Rational gain{0}, shrink{1};
  for (std::size_t k = s; k < a.size(); ++k) {
    gain += a[k] * shrink;
    shrink *= r[k];
  }
  return lo + len * gain / (1 - shrink);
}

/// True when the first-child chain below `q` never meets a single-child
/// prototile, i.e. the left end of every interval labelled q stays in the
/// Cantor set.
inline bool left_end_kept(ProtoIndex q, const SubstitutionRule& rule, const OrderSpec& spec) {
  std::vector<bool> seen(rule.size(), false);
  while (!seen[q]) {
    seen[q] = true;
    const auto& v = visit_order(q, rule, spec);
    if (v.size() == 1) return false;
    q = rule.children(q)[v.front()].proto;
  }
  return true;
}

}  // namespace detail

inline CurveSpec make_curve(SubstitutionRule rule, OrderSpec spec, std::vector<SeedTile> seed, Tolerance tol = {},
                            std::size_t decay_depth = kDecayCheckDepth);

inline CurveSpec make_curve(SubstitutionRule rule, OrderSpec spec, ProtoIndex p,
                            std::size_t decay_depth = kDecayCheckDepth) {
  return make_curve(std::move(rule), std::move(spec), {{p, {0, 0}, false}}, {}, decay_depth);
}

/// f(0) and f(1) of the curve through prototile q, in the frame of supp q.
inline Point curve_start(ProtoIndex q, const SubstitutionRule& rule, const OrderSpec& spec) {
  return detail::chain_limit(q, true, rule, spec);
}
inline Point curve_end(ProtoIndex q, const SubstitutionRule& rule, const OrderSpec& spec) {
  return detail::chain_limit(q, false, rule, spec);
}

inline Point seed_start(const SeedTile& s, const CurveSpec& cs) {
  return s.offset + (s.reversed ? curve_end(s.proto, cs.rule, cs.spec) : curve_start(s.proto, cs.rule, cs.spec));
}
inline Point seed_end(const SeedTile& s, const CurveSpec& cs) {
  return s.offset + (s.reversed ? curve_start(s.proto, cs.rule, cs.spec) : curve_end(s.proto, cs.rule, cs.spec));
}

inline CurveSpec make_curve(SubstitutionRule rule, OrderSpec spec, std::vector<SeedTile> seed, Tolerance tol,
                            std::size_t decay_depth) {
  if (seed.empty()) throw SchemaError("seed patch is empty", "/tiles");
  for (const auto& s : seed) {
    if (s.proto >= rule.size()) throw UnknownPrototile("#" + std::to_string(s.proto));
    visit_order(s.proto, rule, spec);
  }
  require_decay(rule, decay_depth);
  CurveSpec cs{std::move(rule), std::move(spec), std::move(seed)};
  for (std::size_t i = 0; i + 1 < cs.seed.size(); ++i) {
    const Point a = seed_end(cs.seed[i], cs), b = seed_start(cs.seed[i + 1], cs);
    const double scale = std::max({1.0, cs.rule.diameter_of(cs.seed[i].proto), cs.rule.diameter_of(cs.seed[i + 1].proto)});
    if (distance(a, b) > tol.eps * scale)
      throw GeometryError("seed tiles " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                          " do not join: curve ends at (" + std::to_string(a.x) + ", " + std::to_string(a.y) +
                          ") but the next starts at (" + std::to_string(b.x) + ", " + std::to_string(b.y) + ")");
  }
  return cs;
}

/// f(0), f(1) of the whole curve.
inline Point curve_start(const CurveSpec& cs) { return seed_start(cs.seed.front(), cs); }
inline Point curve_end(const CurveSpec& cs) { return seed_end(cs.seed.back(), cs); }

/// h_n: the largest tile diameter in lambda^-n omega^n(q) over the seed.
inline double tile_modulus(const CurveSpec& cs, std::size_t n) {
  double h = 0;
  const double s = inverse_power(cs.rule.lambda(), n);
  for (const auto& seed : cs.seed) {
    const auto occ = occurring_prototiles(cs.rule, seed.proto, n);
    for (ProtoIndex q = 0; q < occ.size(); ++q)
      if (occ[q]) h = std::max(h, cs.rule.diameter_of(q) * s);
  }
  return h;
}

/// Longest level-n interval below a node labelled q of unit length.
inline Rational interval_modulus(ProtoIndex q, std::size_t n, const SubstitutionRule& rule, const OrderSpec& spec) {
  std::vector<Rational> cur(rule.size(), Rational{1});
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> next(rule.size(), Rational{0});
    for (ProtoIndex r = 0; r < rule.size(); ++r) {
      if (!spec.covers(r)) continue;
      const auto& v = spec.visit[r];
      const Rational f = v.size() == 1 ? Rational(1, 2) : Rational(1, static_cast<int>(2 * v.size() - 1));
      for (auto c : v) next[r] = std::max(next[r], Rational(f * cur[rule.children(r)[c].proto]));
    }
    cur = std::move(next);
  }
  return cur[q];
}

struct Moduli {
  Rational g;
  double h = 0;
};

/// g_n on the curve's own parameter (seed tiles share [0,1] equally), h_n.
inline Moduli moduli(const CurveSpec& cs, std::size_t n) {
  if (n < 1) throw OutOfRange("moduli need n >= 1");
  Rational g{0};
  for (const auto& s : cs.seed) g = std::max(g, interval_modulus(s.proto, n, cs.rule, cs.spec));
  return {g / static_cast<int>(cs.seed.size()), tile_modulus(cs, n)};
}

struct EvalResult {
  Point point;
  double error_bound = 0;
};

/// Depth-n evaluation of the curve through prototile p at t in [0,1], in the
/// frame of supp p.
inline Point eval_tile_curve(ProtoIndex p, const Rational& t, std::size_t n, const SubstitutionRule& rule,
                             const OrderSpec& spec) {
  using detail::Cursor;
  const auto at_depth = [&](const Cursor& c, bool first) {
    return scaled_centroid(detail::descend_edge(c, n, first, rule, spec).tile, n, rule);
  };
  Cursor cur{cantor_root(p), {p, {0, 0}}};
  std::optional<Cursor> left;
  while (cur.node.depth < n) {
    auto kids = detail::children(cur, rule, spec);
    std::size_t i = 0;
    while (i < kids.size() && kids[i].node.hi < t) ++i;
    // t <= hi of kids[i]; the last child always ends at the parent's hi
    if (kids[i].node.lo <= t) {
      if (i > 0) left = kids[i - 1];
      cur = std::move(kids[i]);
      continue;
    }
    const Cursor& right = kids[i];
    const Point fb = at_depth(right, true);
    const Cursor* lhs = i > 0 ? &kids[i - 1] : (left ? &*left : nullptr);
    if (!lhs) return fb;  // before the first point of the Cantor set
    const Rational a = lhs->node.hi;
    const Rational b = detail::chain_infimum(right.node, rule, spec);
    const Point fa = at_depth(*lhs, false);
    const double w = to_double((t - a) / (b - a));
    return fa + w * (fb - fa);
  }
  return scaled_centroid(cur.tile, n, rule);
}

inline EvalResult eval(const Rational& t, std::size_t n, const CurveSpec& cs) {
  if (n < 1) throw OutOfRange("evaluation depth must be >= 1");
  if (t < 0 || t > 1) throw OutOfRange("parameter " + to_string(t) + " outside [0,1]");
  const int k = static_cast<int>(cs.seed.size());
  Rational scaled = t * k;
  int j = static_cast<int>(static_cast<BigInt>(boost::multiprecision::numerator(scaled) /
                                               boost::multiprecision::denominator(scaled)));
  j = std::min(j, k - 1);
  Rational local = scaled - j;
  const SeedTile& s = cs.seed[static_cast<std::size_t>(j)];
  if (s.reversed) local = 1 - local;
  return {s.offset + eval_tile_curve(s.proto, local, n, cs.rule, cs.spec), tile_modulus(cs, n)};
}

struct Approximant {
  std::vector<Point> vertices;
  std::vector<Address> addresses;
  std::vector<std::size_t> seed_index;  // which seed tile each vertex belongs to
  bool closed = false;                  // F(0) = F(1)

  std::size_t size() const { return vertices.size(); }
};

/// The n-th approximant together with the scaled tiles it visits.
struct OrderedScaledTiles {
  Approximant approximant;
  std::vector<Polygon> tiles;
};

inline OrderedScaledTiles approximant_with_tiles(const CurveSpec& cs, std::size_t n,
                                                 std::uint64_t cap = kDefaultTileCap) {
  if (n < 1) throw OutOfRange("approximant depth must be >= 1");
  std::uint64_t total = 0;
  const auto counts = cs.rule.tile_counts(n);
  for (const auto& s : cs.seed) total += counts[s.proto];
  check_cap(total, cap);
  OrderedScaledTiles out;
  for (std::size_t i = 0; i < cs.seed.size(); ++i) {
    const SeedTile& s = cs.seed[i];
    auto tiles = ordered_supertile(s.proto, n, cs.rule, cs.spec, cap);
    if (s.reversed) std::reverse(tiles.begin(), tiles.end());
    for (const auto& t : tiles) {
      out.approximant.vertices.push_back(s.offset + scaled_centroid(t.tile, n, cs.rule));
      out.approximant.addresses.push_back(t.addr);
      out.approximant.seed_index.push_back(i);
      out.tiles.push_back(translate(scaled_support(t.tile, n, cs.rule), s.offset));
    }
  }
  double diam = 0;
  for (const auto& s : cs.seed) diam = std::max(diam, cs.rule.diameter_of(s.proto));
  out.approximant.closed = distance(curve_start(cs), curve_end(cs)) <= Tolerance{}.eps * std::max(1.0, diam);
  return out;
}

inline Approximant approximant(const CurveSpec& cs, std::size_t n, std::uint64_t cap = kDefaultTileCap) {
  return approximant_with_tiles(cs, n, cap).approximant;
}

/// Supports of the seed tiles.
inline std::vector<Polygon> seed_supports(const CurveSpec& cs) {
  std::vector<Polygon> out;
  for (const auto& s : cs.seed) out.push_back(translate(cs.rule.prototile(s.proto).support, s.offset));
  return out;
}

struct ContinuityReport {
  std::size_t level = 0;
  Rational delta;  // pairs closer than this are compared
  double bound = 0;
  double worst = 0;
  Rational worst_x, worst_y;
  std::size_t samples = 0;
  std::size_t pairs = 0;
  bool ok = true;
};

/// Exact f at the Cantor-set points among the level-(N + refine) endpoints of
/// the curve through p; pairs closer than g_N / 2 are compared against h_N.
inline ContinuityReport continuity_check(ProtoIndex p, std::size_t N, const SubstitutionRule& rule,
                                         const OrderSpec& spec, Tolerance tol = {},
                                         std::uint64_t cap = kDefaultTileCap, std::size_t refine = 0) {
  if (N < 1) throw OutOfRange("continuity level must be >= 1");
  const auto level = cantor_level(p, N + refine, rule, spec, cap);
  struct Sample {
    Rational t;
    Point f;
  };
  std::vector<Sample> samples;
  for (const auto& node : level) {
    const PlacedTile tile = tile_at(p, node.addr, rule, spec);
    const double s = inverse_power(rule.lambda(), N + refine);
    if (detail::left_end_kept(node.label, rule, spec))
      samples.push_back({node.lo, (tile.offset + curve_start(tile.proto, rule, spec)) * s});
    samples.push_back({node.hi, (tile.offset + curve_end(tile.proto, rule, spec)) * s});
  }
  ContinuityReport r;
  r.level = N;
  r.delta = refine == 0 ? max_length(level) / 2 : max_length(cantor_level(p, N, rule, spec, cap)) / 2;
  r.bound = inverse_power(rule.lambda(), N) * [&] {
    double d = 0;
    const auto occ = occurring_prototiles(rule, p, N);
    for (ProtoIndex q = 0; q < occ.size(); ++q)
      if (occ[q]) d = std::max(d, rule.diameter_of(q));
    return d;
  }();
  r.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size() && samples[j].t - samples[i].t < r.delta; ++j) {
      ++r.pairs;
      const double d = distance(samples[i].f, samples[j].f);
      if (d > r.worst) {
        r.worst = d;
        r.worst_x = samples[i].t;
        r.worst_y = samples[j].t;
      }
    }
  r.ok = r.worst <= r.bound + tol.eps;
  return r;
}

struct CoverReport {
  double max_distance = 0;
  double bound = 0;  // h_n + grid pitch
  double pitch = 0;
  std::size_t probes = 0;
  bool ok = true;
};

/// Probes the centres of an m x m grid over the seed's bounding box; every
/// probe inside the seed support must lie within h_n + pitch of a vertex.
inline CoverReport cover_check(const CurveSpec& cs, std::size_t n, std::size_t m, std::uint64_t cap = kDefaultTileCap) {
  if (m < 1) throw OutOfRange("grid size must be >= 1");
  const auto appr = approximant(cs, n, cap);
  const auto supports = seed_supports(cs);
  BoundingBox box;
  for (const auto& s : supports) box.expand(bounding_box(s));
  const double dx = box.width() / static_cast<double>(m), dy = box.height() / static_cast<double>(m);

  // bucket the vertices on a coarse grid for nearest-neighbour queries
  const double h = tile_modulus(cs, n);
  const double cell = std::max(h, std::max(box.width(), box.height()) / 256.0);
  const auto key = [&](Point q) {
    return std::pair<long, long>{static_cast<long>(std::floor((q.x - box.lo.x) / cell)),
                                 static_cast<long>(std::floor((q.y - box.lo.y) / cell))};
  };
  std::map<std::pair<long, long>, std::vector<Point>> buckets;
  for (auto v : appr.vertices) buckets[key(v)].push_back(v);
  const long max_ring = static_cast<long>(std::ceil(std::max(box.width(), box.height()) / cell)) + 2;
  const auto nearest = [&](Point q) {
    const auto [ci, cj] = key(q);
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0;; ++r) {
      for (long i = ci - r; i <= ci + r; ++i)
        for (long j = cj - r; j <= cj + r; ++j) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
          const auto it = buckets.find({i, j});
          if (it == buckets.end()) continue;
          for (auto v : it->second) best = std::min(best, distance(q, v));
        }
      // anything in ring r+1 or beyond is at least r * cell away
      if (best <= static_cast<double>(r) * cell || r > max_ring) return best;
    }
  };

  CoverReport r;
  r.pitch = std::max(dx, dy);
  r.bound = h + r.pitch;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Point q{box.lo.x + (static_cast<double>(i) + 0.5) * dx, box.lo.y + (static_cast<double>(j) + 0.5) * dy};
      const bool inside = std::any_of(supports.begin(), supports.end(), [&](const Polygon& s) { return contains(s, q); });
      if (!inside) continue;
      ++r.probes;
      r.max_distance = std::max(r.max_distance, nearest(q));
    }
  r.ok = r.max_distance <= r.bound;
  return r;
}

/// Approximant polyline closed by a straight segment, filled even-odd.
struct Region {
  std::vector<Point> loop;
};

inline Region closed_region(const Approximant& appr, Tolerance tol = {}) {
  if (appr.size() < 3) throw DegenerateRegion("a closed region needs at least 3 vertices");
  const auto& v = appr.vertices;
  std::size_t far = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (distance(v[i], v[0]) > distance(v[far], v[0])) far = i;
  const Point dir = v[far] - v[0];
  const bool collinear = std::all_of(v.begin(), v.end(), [&](Point q) {
    return std::abs(cross(dir, q - v[0])) <= tol.eps * std::max(1.0, dot(dir, dir));
  });
  if (collinear) throw DegenerateRegion("approximant vertices are collinear");
  return {v};
}

}  // namespace subsfc
