#pragma once

// The labelled Cantor hierarchy: every kept interval with label q is cut
// into 2m-1 equal parts (m = |omega(q)|) and the odd parts are kept,
// labelled by the children in visit order. A single child keeps the right
// half instead.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "subsfc/ordering.hpp"
#include "subsfc/rational.hpp"

namespace subsfc {

struct IntervalNode {
  Rational lo{0};
  Rational hi{1};
  ProtoIndex label = 0;
  std::size_t depth = 0;
  Address addr;

  Rational length() const { return hi - lo; }
};

using CantorLevel = std::vector<IntervalNode>;

inline std::vector<IntervalNode> subdivide(const IntervalNode& node, const SubstitutionRule& rule,
                                           const OrderSpec& spec) {
  const auto& v = visit_order(node.label, rule, spec);
  const auto& kids = rule.children(node.label);
  std::vector<IntervalNode> out;
  if (v.size() == 1) {
    IntervalNode c{(node.lo + node.hi) / 2, node.hi, kids[v[0]].proto, node.depth + 1, node.addr};
    c.addr.digits.push_back(1);
    out.push_back(std::move(c));
    return out;
  }
  const Rational step = node.length() / static_cast<int>(2 * v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    IntervalNode c{node.lo + step * static_cast<int>(2 * i), node.lo + step * static_cast<int>(2 * i + 1),
                   kids[v[i]].proto, node.depth + 1, node.addr};
    if (i + 1 == v.size()) c.hi = node.hi;
    c.addr.digits.push_back(static_cast<std::uint32_t>(i + 1));
    out.push_back(std::move(c));
  }
  return out;
}

inline IntervalNode cantor_root(ProtoIndex p) { return IntervalNode{0, 1, p, 0, {}}; }

/// Kept intervals of level n, left to right.
inline CantorLevel cantor_level(ProtoIndex p, std::size_t n, const SubstitutionRule& rule, const OrderSpec& spec,
                                std::uint64_t cap = kDefaultTileCap) {
  check_cap(rule.tile_counts(n).at(p), cap);
  CantorLevel level{cantor_root(p)};
  for (std::size_t k = 0; k < n; ++k) {
    CantorLevel next;
    for (const auto& node : level) {
      auto kids = subdivide(node, rule, spec);
      std::move(kids.begin(), kids.end(), std::back_inserter(next));
    }
    level = std::move(next);
  }
  return level;
}

/// The node at `addr`, built by descending from [0,1] without enumerating
/// the level.
inline IntervalNode interval_at(ProtoIndex p, const Address& addr, const SubstitutionRule& rule,
                                const OrderSpec& spec) {
  IntervalNode node = cantor_root(p);
  for (auto d : addr.digits) {
    auto kids = subdivide(node, rule, spec);
    if (d < 1 || d > kids.size()) throw OutOfRange("address " + addr.str() + " out of range");
    node = std::move(kids[d - 1]);
  }
  return node;
}

/// Inside(k): t in [lo_k, hi_k]. Gap(k, k+1): hi_k < t < lo_{k+1}. Indices
/// are 1-based; 0 on either side of a gap means there is no interval there.
struct Location {
  enum class Kind { Inside, Gap } kind = Kind::Inside;
  std::size_t left = 0;
  std::size_t right = 0;

  bool inside() const { return kind == Kind::Inside; }
  static Location in(std::size_t k) { return {Kind::Inside, k, k}; }
  static Location gap(std::size_t l, std::size_t r) { return {Kind::Gap, l, r}; }
  friend bool operator==(const Location&, const Location&) = default;
};

inline Location locate(const Rational& t, const CantorLevel& level) {
  if (t < 0 || t > 1) throw OutOfRange("parameter " + to_string(t) + " outside [0,1]");
  // first node with hi >= t
  const auto it = std::lower_bound(level.begin(), level.end(), t,
                                   [](const IntervalNode& n, const Rational& x) { return n.hi < x; });
  const std::size_t k = static_cast<std::size_t>(it - level.begin());
  if (it != level.end() && it->lo <= t) return Location::in(k + 1);
  return Location::gap(k, it == level.end() ? 0 : k + 1);
}

/// g_n: the longest kept interval at level n.
inline Rational max_length(const CantorLevel& level) {
  Rational g{0};
  for (const auto& n : level) g = std::max(g, n.length());
  return g;
}

}  // namespace subsfc
