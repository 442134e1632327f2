#pragma once

// Even-odd scanline rasterization on a square pixel grid. Used for the
// approximate containment and connectivity checks, never for exact results.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "subsfc/geometry.hpp"

namespace subsfc {

struct PixelGrid {
  Point origin;  // lower-left corner of pixel (0, 0)
  double pixel = 1.0;
  int width = 0;
  int height = 0;

  Point center(int i, int j) const { return {origin.x + (i + 0.5) * pixel, origin.y + (j + 0.5) * pixel}; }
};

/// `resolution` pixels across the longer side of `box`, one pixel of margin.
inline PixelGrid make_grid(const BoundingBox& box, int resolution) {
  PixelGrid g;
  const double extent = std::max(box.width(), box.height());
  g.pixel = extent > 0 ? extent / resolution : 1.0;
  g.origin = box.lo - Point{g.pixel, g.pixel};
  g.width = static_cast<int>(std::ceil(box.width() / g.pixel)) + 2;
  g.height = static_cast<int>(std::ceil(box.height() / g.pixel)) + 2;
  return g;
}

class Bitmap {
 public:
  Bitmap() = default;
  Bitmap(int w, int h) : w_(w), h_(h), bits_(static_cast<std::size_t>(w) * h, 0) {}

  int width() const { return w_; }
  int height() const { return h_; }
  bool get(int i, int j) const {
    if (i < 0 || j < 0 || i >= w_ || j >= h_) return false;
    return bits_[index(i, j)] != 0;
  }
  void set(int i, int j, bool v = true) { bits_[index(i, j)] = v ? 1 : 0; }
  std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

  Bitmap& operator|=(const Bitmap& o) {
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
    return *this;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * w_ + i; }
  int w_ = 0;
  int h_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Pixels whose centers lie inside the loop under the even-odd rule.
inline Bitmap rasterize_loop(std::span<const Point> loop, const PixelGrid& g) {
  Bitmap bm(g.width, g.height);
  if (loop.size() < 3) return bm;
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.height));
  const std::size_t n = loop.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = loop[k], b = loop[(k + 1) % n];
    if (a.y == b.y) continue;
    const double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
    // Rows whose center y satisfies ylo < y <= yhi, matching point_in_loop.
    int j0 = static_cast<int>(std::floor((ylo - g.origin.y) / g.pixel - 0.5)) - 1;
    int j1 = static_cast<int>(std::ceil((yhi - g.origin.y) / g.pixel - 0.5)) + 1;
    j0 = std::max(j0, 0);
    j1 = std::min(j1, g.height - 1);
    for (int j = j0; j <= j1; ++j) {
      const double y = g.center(0, j).y;
      if ((a.y > y) != (b.y > y)) rows[static_cast<std::size_t>(j)].push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
  }
  for (int j = 0; j < g.height; ++j) {
    auto& xs = rows[static_cast<std::size_t>(j)];
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // centers with xs[k] <= x < xs[k+1]
      int i0 = static_cast<int>(std::ceil((xs[k] - g.origin.x) / g.pixel - 0.5));
      int i1 = static_cast<int>(std::ceil((xs[k + 1] - g.origin.x) / g.pixel - 0.5)) - 1;
      i0 = std::max(i0, 0);
      i1 = std::min(i1, g.width - 1);
      for (int i = i0; i <= i1; ++i) bm.set(i, j);
    }
  }
  return bm;
}

inline Bitmap rasterize_union(std::span<const Polygon> polys, const PixelGrid& g) {
  Bitmap bm(g.width, g.height);
  for (const auto& p : polys) bm |= rasterize_loop(p.vertices, g);
  return bm;
}

/// 8-neighbourhood dilation by `radius` pixels.
inline Bitmap dilate(const Bitmap& src, int radius = 1) {
  Bitmap out(src.width(), src.height());
  for (int j = 0; j < src.height(); ++j)
    for (int i = 0; i < src.width(); ++i) {
      if (!src.get(i, j)) continue;
      for (int dj = -radius; dj <= radius; ++dj)
        for (int di = -radius; di <= radius; ++di) {
          const int x = i + di, y = j + dj;
          if (x >= 0 && y >= 0 && x < src.width() && y < src.height()) out.set(x, y);
        }
    }
  return out;
}

/// Connected components of pixels equal to `value`: 8-connected for set
/// pixels, 4-connected for clear ones so the two notions stay dual.
inline int count_components(const Bitmap& bm, bool value) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(bm.width()) * bm.height(), 0);
  int components = 0;
  for (int j = 0; j < bm.height(); ++j)
    for (int i = 0; i < bm.width(); ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * bm.width() + i;
      if (seen[idx] || bm.get(i, j) != value) continue;
      ++components;
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      seen[idx] = 1;
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (!value && dx != 0 && dy != 0) continue;
            const int u = x + dx, v = y + dy;
            if (u < 0 || v < 0 || u >= bm.width() || v >= bm.height()) continue;
            const std::size_t k = static_cast<std::size_t>(v) * bm.width() + u;
            if (seen[k] || bm.get(u, v) != value) continue;
            seen[k] = 1;
            q.push({u, v});
          }
      }
    }
  return components;
}

}  // namespace subsfc
