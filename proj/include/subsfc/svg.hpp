#pragma once

// Deterministic SVG 1.1 output. Coordinates are written with nine decimals
// and the y axis points up in plane units.

#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "subsfc/error.hpp"
#include "subsfc/geometry.hpp"

namespace subsfc {

struct SvgPolyline {
  std::vector<Point> points;
  std::string stroke = "#1f3b73";
};

/// Closed loop filled under the even-odd rule.
struct SvgRegion {
  std::vector<Point> loop;
  std::string fill = "#8fb3e0";
  std::string stroke = "none";
};

/// Tile outline; `palette_index` picks a fill from the palette, -1 for none.
struct SvgTile {
  std::vector<Point> vertices;
  int palette_index = -1;
};

using SvgObject = std::variant<SvgPolyline, SvgRegion, SvgTile>;

struct RenderOptions {
  double stroke_width = 1.0;  // pixels
  bool fill = false;          // fill polylines as even-odd regions
  double scale = 400.0;       // pixels across the longer side of the drawing
  double margin = 10.0;       // pixels
  std::vector<std::string> palette{"#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
                                   "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff"};
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace detail

inline std::string emit_svg(const std::vector<SvgObject>& objects, const RenderOptions& opts = {}) {
  if (objects.empty()) throw OutOfRange("nothing to draw");
  if (!(opts.scale > 0) || opts.margin < 0 || !(opts.stroke_width > 0))
    throw OutOfRange("render sizes must be positive");
  BoundingBox box;
  const auto points_of = [](const SvgObject& o) -> const std::vector<Point>& {
    if (const auto* p = std::get_if<SvgPolyline>(&o)) return p->points;
    if (const auto* r = std::get_if<SvgRegion>(&o)) return r->loop;
    return std::get<SvgTile>(o).vertices;
  };
  for (const auto& o : objects) {
    if (points_of(o).empty()) throw OutOfRange("empty path in drawing");
    box.expand(bounding_box(points_of(o)));
  }
  const double extent = std::max(box.width(), box.height());
  const double k = extent > 0 ? opts.scale / extent : 1.0;
  const double w = box.width() * k + 2 * opts.margin, h = box.height() * k + 2 * opts.margin;
  const auto path = [&](const std::vector<Point>& pts, bool close) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d += i ? " L " : "M ";
      d += detail::fmt((pts[i].x - box.lo.x) * k + opts.margin) + " " +
           detail::fmt((box.hi.y - pts[i].y) * k + opts.margin);
    }
    if (close) d += " Z";
    return d;
  };
  const std::string sw = detail::fmt(opts.stroke_width);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt(w) + "\" height=\"" +
         detail::fmt(h) + "\" viewBox=\"0 0 " + detail::fmt(w) + " " + detail::fmt(h) + "\">\n";
  for (const auto& o : objects) {
    if (const auto* p = std::get_if<SvgPolyline>(&o)) {
      if (opts.fill)
        out += "  <path d=\"" + path(p->points, true) + "\" style=\"fill:" + opts.palette.front() +
               ";fill-rule:evenodd;stroke:" + p->stroke + ";stroke-width:" + sw + "\"/>\n";
      else
        out += "  <path d=\"" + path(p->points, false) + "\" style=\"fill:none;stroke:" + p->stroke +
               ";stroke-width:" + sw + "\"/>\n";
    } else if (const auto* r = std::get_if<SvgRegion>(&o)) {
      out += "  <path d=\"" + path(r->loop, true) + "\" style=\"fill:" + r->fill + ";fill-rule:evenodd;stroke:" +
             r->stroke + ";stroke-width:" + sw + "\"/>\n";
    } else {
      const auto& t = std::get<SvgTile>(o);
      const std::string fill =
          t.palette_index < 0 || opts.palette.empty()
              ? "none"
              : opts.palette[static_cast<std::size_t>(t.palette_index) % opts.palette.size()];
      out += "  <path d=\"" + path(t.vertices, true) + "\" style=\"fill:" + fill + ";stroke:#555555;stroke-width:" +
             detail::fmt(opts.stroke_width / 2) + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace subsfc
