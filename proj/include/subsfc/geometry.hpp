#pragma once

// Planar polygon primitives shared by every other part of the library.
//
// Coordinates are doubles; predicates take a Tolerance whose eps is a length
// in plane units. Combinatorial results elsewhere (orders, addresses, Cantor
// intervals) never depend on these floats.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "subsfc/error.hpp"

namespace subsfc {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
  Point& operator+=(Point o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Rotation about the origin by `degrees` (counter-clockwise). Multiples of
/// 90 degrees are snapped so axis-aligned inputs stay exact.
inline Point rotate(Point p, double degrees) {
  double a = std::fmod(degrees, 360.0);
  if (a < 0) a += 360.0;
  double c = 0, s = 0;
  if (a == 0.0) {
    c = 1;
  } else if (a == 90.0) {
    s = 1;
  } else if (a == 180.0) {
    c = -1;
  } else if (a == 270.0) {
    s = -1;
  } else {
    const double r = a * std::numbers::pi / 180.0;
    c = std::cos(r);
    s = std::sin(r);
  }
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

struct Tolerance {
  double eps = 1e-9;
};

struct Segment {
  Point a;
  Point b;
  double length() const { return distance(a, b); }
};

/// Simple polygon, counter-clockwise, closed implicitly.
struct Polygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  Segment edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
};

struct BoundingBox {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void expand(Point p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  void expand(const BoundingBox& b) {
    expand(b.lo);
    expand(b.hi);
  }
  bool empty() const { return lo.x > hi.x; }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  Point center() const { return 0.5 * (lo + hi); }
  bool overlaps(const BoundingBox& o, double pad = 0) const {
    return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
           o.lo.y <= hi.y + pad;
  }
};

inline BoundingBox bounding_box(std::span<const Point> pts) {
  BoundingBox b;
  for (auto p : pts) b.expand(p);
  return b;
}
inline BoundingBox bounding_box(const Polygon& p) { return bounding_box(p.vertices); }

inline double signed_area(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}
inline double signed_area(const Polygon& p) { return signed_area(p.vertices); }

inline double perimeter(const Polygon& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p.edge(i).length();
  return s;
}

inline Polygon translate(const Polygon& p, Point v) {
  Polygon out = p;
  for (auto& q : out.vertices) q += v;
  return out;
}

/// Scale about the origin. Negative factors would flip orientation and are
/// not used anywhere.
inline Polygon scale(const Polygon& p, double s) {
  Polygon out = p;
  for (auto& q : out.vertices) q = s * q;
  return out;
}

inline Polygon rotate(const Polygon& p, double degrees) {
  Polygon out = p;
  for (auto& q : out.vertices) q = rotate(q, degrees);
  return out;
}

inline double point_segment_distance(Point p, Segment s) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

/// True if the closed segments cross or touch.
inline bool segments_intersect(Segment s, Segment t, double eps) {
  const auto orient = [](Point a, Point b, Point c) { return cross(b - a, c - a); };
  const double d1 = orient(t.a, t.b, s.a);
  const double d2 = orient(t.a, t.b, s.b);
  const double d3 = orient(s.a, s.b, t.a);
  const double d4 = orient(s.a, s.b, t.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return point_segment_distance(s.a, t) <= eps || point_segment_distance(s.b, t) <= eps ||
         point_segment_distance(t.a, s) <= eps || point_segment_distance(t.b, s) <= eps;
}

inline double segment_distance(Segment s, Segment t) {
  if (segments_intersect(s, t, 0.0)) return 0.0;
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                   point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

/// Even-odd membership; works for self-intersecting loops too.
inline bool point_in_loop(Point p, std::span<const Point> loop) {
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = loop[i], b = loop[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

inline double boundary_distance(Point p, const Polygon& poly) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) d = std::min(d, point_segment_distance(p, poly.edge(i)));
  return d;
}

/// Closed-set membership with boundary slack eps.
inline bool contains(const Polygon& poly, Point p, Tolerance tol = {}) {
  return point_in_loop(p, poly.vertices) || boundary_distance(p, poly) <= tol.eps;
}

/// No two non-adjacent edges meet, adjacent edges share only their vertex.
inline bool is_simple(const Polygon& p, Tolerance tol = {}) {
  const std::size_t n = p.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Segment a = p.edge(i), b = p.edge(j);
      if (adjacent) {
        // Only a folded-back edge (collinear overlap) is a problem here.
        const Point shared = (j == i + 1) ? a.b : a.a;
        const Point other_a = (j == i + 1) ? a.a : a.b;
        const Point other_b = (j == i + 1) ? b.b : b.a;
        if (std::abs(cross(other_a - shared, other_b - shared)) <= tol.eps * tol.eps &&
            dot(other_a - shared, other_b - shared) > 0)
          return false;
        continue;
      }
      if (segments_intersect(a, b, tol.eps)) return false;
    }
  }
  return true;
}

/// Validates and normalizes to counter-clockwise order.
inline Polygon make_polygon(std::vector<Point> pts, Tolerance tol = {}) {
  if (pts.size() < 3) throw DegeneratePolygon("fewer than 3 vertices");
  for (auto p : pts)
    if (!is_finite(p)) throw DegeneratePolygon("non-finite coordinate");
  Polygon poly{std::move(pts)};
  const double a = signed_area(poly);
  if (std::abs(a) <= tol.eps * tol.eps) throw DegeneratePolygon("zero area");
  if (a < 0) std::reverse(poly.vertices.begin(), poly.vertices.end());
  if (!is_simple(poly, tol)) throw DegeneratePolygon("self-intersecting");
  return poly;
}

inline double area(const Polygon& poly, Tolerance tol = {}) {
  const double a = signed_area(poly);
  if (poly.size() < 3 || std::abs(a) <= tol.eps * tol.eps)
    throw DegeneratePolygon("zero area");
  return std::abs(a);
}

inline Point centroid(const Polygon& poly, Tolerance tol = {}) {
  const double a = signed_area(poly);
  if (poly.size() < 3 || std::abs(a) <= tol.eps * tol.eps)
    throw DegeneratePolygon("zero area");
  double cx = 0, cy = 0;
  const std::size_t n = poly.size();
  // Shift to the first vertex to keep cancellation small for offset polygons.
  const Point o = poly[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = poly[i] - o, q = poly[(i + 1) % n] - o;
    const double c = cross(p, q);
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return o + Point{cx / (6 * a), cy / (6 * a)};
}

/// Diameter of the vertex set. Equals the set diameter for any polygon since
/// the farthest pair of points of a polygon is always a pair of vertices.
inline double diameter(const Polygon& poly) {
  double d = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, distance(poly[i], poly[j]));
  return d;
}

/// Longest common boundary segment of length > eps, if any.
inline std::optional<Segment> shared_edge(const Polygon& a, const Polygon& b, Tolerance tol = {}) {
  struct Piece {
    Point dir;
    Point origin;
    double t0, t1;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Segment ea = a.edge(i);
    const double len = ea.length();
    if (len <= tol.eps) continue;
    const Point u = (1.0 / len) * (ea.b - ea.a);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Segment eb = b.edge(j);
      if (std::abs(cross(u, eb.a - ea.a)) > tol.eps || std::abs(cross(u, eb.b - ea.a)) > tol.eps)
        continue;
      double s0 = dot(eb.a - ea.a, u), s1 = dot(eb.b - ea.a, u);
      if (s0 > s1) std::swap(s0, s1);
      const double lo = std::max(0.0, s0), hi = std::min(len, s1);
      if (hi - lo > tol.eps) pieces.push_back({u, ea.a, lo, hi});
    }
  }
  if (pieces.empty()) return std::nullopt;
  // Merge collinear touching pieces so split edges report one maximal segment.
  std::vector<Segment> merged;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Point p0 = pieces[i].origin + pieces[i].t0 * pieces[i].dir;
    Point p1 = pieces[i].origin + pieces[i].t1 * pieces[i].dir;
    bool grew = true;
    while (grew) {
      grew = false;
      const double len = distance(p0, p1);
      const Point u = (1.0 / len) * (p1 - p0);
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        if (used[j]) continue;
        const Point q0 = pieces[j].origin + pieces[j].t0 * pieces[j].dir;
        const Point q1 = pieces[j].origin + pieces[j].t1 * pieces[j].dir;
        if (std::abs(cross(u, q0 - p0)) > tol.eps || std::abs(cross(u, q1 - p0)) > tol.eps) continue;
        double s0 = dot(q0 - p0, u), s1 = dot(q1 - p0, u);
        if (s0 > s1) std::swap(s0, s1);
        if (s1 < -tol.eps || s0 > len + tol.eps) continue;
        const double lo = std::min(0.0, s0), hi = std::max(len, s1);
        const Point base = p0;
        p0 = base + lo * u;
        p1 = base + hi * u;
        used[j] = true;
        grew = true;
        break;
      }
    }
    merged.push_back({p0, p1});
  }
  auto best = std::max_element(merged.begin(), merged.end(),
                               [](const Segment& x, const Segment& y) { return x.length() < y.length(); });
  Segment s = *best;
  // Canonical direction keeps the result symmetric in (a, b).
  if (std::tie(s.b.x, s.b.y) < std::tie(s.a.x, s.a.y)) std::swap(s.a, s.b);
  return s;
}

namespace detail {

inline bool is_convex(const Polygon& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(p[(i + 1) % n] - p[i], p[(i + 2) % n] - p[(i + 1) % n]) < -1e-15) return false;
  }
  return true;
}

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
inline std::vector<Polygon> triangulate(const Polygon& poly) {
  std::vector<Polygon> tris;
  std::vector<Point> v = poly.vertices;
  std::size_t guard = 0;
  while (v.size() > 3 && guard++ < 10 * poly.size() * poly.size()) {
    const std::size_t n = v.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
      if (cross(b - a, c - b) <= 0) continue;
      bool ear = true;
      for (std::size_t k = 0; k < n && ear; ++k) {
        const Point q = v[k];
        if (q == a || q == b || q == c) continue;
        if (cross(b - a, q - a) >= 0 && cross(c - b, q - b) >= 0 && cross(a - c, q - c) >= 0) ear = false;
      }
      if (!ear) continue;
      tris.push_back(Polygon{{a, b, c}});
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) break;
  }
  if (v.size() == 3) tris.push_back(Polygon{v});
  return tris;
}

/// Sutherland-Hodgman: any simple subject against a convex CCW clipper.
inline std::vector<Point> clip_convex(const std::vector<Point>& subject, const Polygon& clipper) {
  std::vector<Point> out = subject;
  for (std::size_t i = 0; i < clipper.size() && !out.empty(); ++i) {
    const Point a = clipper[i], b = clipper[(i + 1) % clipper.size()];
    const auto side = [&](Point p) { return cross(b - a, p - a); };
    std::vector<Point> in = std::move(out);
    out.clear();
    for (std::size_t k = 0; k < in.size(); ++k) {
      const Point p = in[k], q = in[(k + 1) % in.size()];
      const double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) out.push_back(p + (sp / (sp - sq)) * (q - p));
    }
  }
  return out;
}

}  // namespace detail

inline double intersection_area(const Polygon& a, const Polygon& b) {
  const std::vector<Polygon> pieces =
      detail::is_convex(b) ? std::vector<Polygon>{b} : detail::triangulate(b);
  double total = 0;
  for (const auto& piece : pieces) {
    const auto clipped = detail::clip_convex(a.vertices, piece);
    if (clipped.size() >= 3) total += std::abs(signed_area(clipped));
  }
  return total;
}

/// Interiors are disjoint when the overlap area is at most eps times the
/// larger perimeter.
inline bool interiors_disjoint(const Polygon& a, const Polygon& b, Tolerance tol = {}) {
  if (!bounding_box(a).overlaps(bounding_box(b))) return true;
  return intersection_area(a, b) <= tol.eps * std::max(perimeter(a), perimeter(b));
}

inline double polygon_boundary_distance(const Polygon& a, const Polygon& b) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d = std::min(d, segment_distance(a.edge(i), b.edge(j)));
  return d;
}

}  // namespace subsfc
