#pragma once

// Visit orders on 1-supertiles and the induced order on n-supertiles, which
// is lexicographic order on addresses.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subsfc/error.hpp"
#include "subsfc/substitution.hpp"

namespace subsfc {

/// For every prototile, its child indices (0-based) in visit order. An empty
/// entry means no order was supplied for that prototile.
struct OrderSpec {
  std::vector<std::vector<std::size_t>> visit;

  bool covers(ProtoIndex q) const { return q < visit.size() && !visit[q].empty(); }
};

/// Checks that every supplied entry is a permutation of the children.
inline void check_order(const SubstitutionRule& rule, const OrderSpec& spec) {
  if (spec.visit.size() != rule.size()) throw SchemaError("order table size does not match prototile count", "/order");
  for (ProtoIndex q = 0; q < rule.size(); ++q) {
    const auto& v = spec.visit[q];
    if (v.empty()) continue;
    const std::string ptr = "/order/" + rule.prototile(q).id;
    const std::size_t m = rule.children(q).size();
    if (v.size() != m)
      throw SchemaError("order lists " + std::to_string(v.size()) + " entries for " + std::to_string(m) + " children",
                        ptr);
    std::vector<bool> seen(m, false);
    for (auto c : v) {
      if (c >= m || seen[c]) throw SchemaError("order is not a permutation of the child indices", ptr);
      seen[c] = true;
    }
  }
}

/// Builds a spec from 1-based child indices keyed by prototile id.
inline OrderSpec make_order(const SubstitutionRule& rule, const std::map<std::string, std::vector<std::size_t>>& one_based) {
  OrderSpec spec;
  spec.visit.resize(rule.size());
  for (const auto& [id, list] : one_based) {
    const auto q = rule.find(id);
    if (!q) throw SchemaError("order given for unknown prototile '" + id + "'", "/order/" + id);
    for (auto k : list) {
      if (k == 0) throw SchemaError("child indices are 1-based", "/order/" + id);
      spec.visit[*q].push_back(k - 1);
    }
  }
  check_order(rule, spec);
  return spec;
}

/// Children visited in stored order.
inline OrderSpec identity_order(const SubstitutionRule& rule) {
  OrderSpec spec;
  for (ProtoIndex q = 0; q < rule.size(); ++q) {
    std::vector<std::size_t> v(rule.children(q).size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = k;
    spec.visit.push_back(std::move(v));
  }
  return spec;
}

inline const std::vector<std::size_t>& visit_order(ProtoIndex q, const SubstitutionRule& rule, const OrderSpec& spec) {
  if (!spec.covers(q)) throw MissingOrder("no order for prototile '" + rule.prototile(q).id + "'");
  return spec.visit[q];
}

inline std::vector<PlacedTile> ordered_children(ProtoIndex q, const SubstitutionRule& rule, const OrderSpec& spec) {
  std::vector<PlacedTile> out;
  for (auto c : visit_order(q, rule, spec)) out.push_back(rule.children(q)[c]);
  return out;
}

/// Digits are 1-based g-ranks, one per level.
struct Address {
  std::vector<std::uint32_t> digits;

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address& a, const Address& b) { return a.digits <=> b.digits; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + std::to_string(digits[i]);
    return s + ")";
  }
};

/// A tile of omega^n(p), offset in the frame of lambda^n * supp p.
struct OrderedTile {
  PlacedTile tile;
  Address addr;
};

/// Prototile reached by following `addr` from p.
inline ProtoIndex prototile_at(ProtoIndex p, const Address& addr, const SubstitutionRule& rule, const OrderSpec& spec) {
  ProtoIndex q = p;
  for (std::size_t i = 0; i < addr.size(); ++i) {
    const auto& v = visit_order(q, rule, spec);
    const auto d = addr.digits[i];
    if (d < 1 || d > v.size())
      throw OutOfRange("digit " + std::to_string(i + 1) + " of " + addr.str() + " out of range for '" +
                       rule.prototile(q).id + "'");
    q = rule.children(q)[v[d - 1]].proto;
  }
  return q;
}

/// All tiles of omega^n(p) in the induced order, with their addresses.
inline std::vector<OrderedTile> ordered_supertile(ProtoIndex p, std::size_t n, const SubstitutionRule& rule,
                                                  const OrderSpec& spec, std::uint64_t cap = kDefaultTileCap) {
  check_cap(rule.tile_counts(n).at(p), cap);
  std::vector<OrderedTile> out;
  out.reserve(static_cast<std::size_t>(rule.tile_counts(n)[p]));
  const double lambda = rule.lambda();
  struct Frame {
    PlacedTile tile;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{{p, {0, 0}}, 0}};
  Address addr;
  while (!stack.empty()) {
    auto& top = stack.back();
    if (stack.size() == n + 1) {
      out.push_back({top.tile, addr});
      stack.pop_back();
      if (!addr.empty()) addr.digits.pop_back();
      continue;
    }
    const auto& v = visit_order(top.tile.proto, rule, spec);
    if (top.next == v.size()) {
      stack.pop_back();
      if (!addr.empty()) addr.digits.pop_back();
      continue;
    }
    const PlacedTile& c = rule.children(top.tile.proto)[v[top.next]];
    const PlacedTile child{c.proto, c.offset + lambda * top.tile.offset};
    addr.digits.push_back(static_cast<std::uint32_t>(++top.next));
    stack.push_back({child, 0});
  }
  return out;
}

/// counts[k][q] = |omega^k(q)|, k = 0..n.
inline std::vector<std::vector<std::uint64_t>> count_table(const SubstitutionRule& rule, std::size_t n) {
  std::vector<std::vector<std::uint64_t>> t;
  for (std::size_t k = 0; k <= n; ++k) t.push_back(rule.tile_counts(k));
  return t;
}

/// 1-based rank of `addr` among the tiles of omega^|addr|(p).
inline std::uint64_t address_to_rank(const Address& addr, ProtoIndex p, const SubstitutionRule& rule,
                                     const OrderSpec& spec) {
  const std::size_t n = addr.size();
  const auto counts = count_table(rule, n);
  std::uint64_t rank = 1;
  ProtoIndex q = p;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = visit_order(q, rule, spec);
    const auto d = addr.digits[i];
    if (d < 1 || d > v.size())
      throw OutOfRange("digit " + std::to_string(i + 1) + " of " + addr.str() + " out of range for '" +
                       rule.prototile(q).id + "'");
    for (std::uint32_t j = 1; j < d; ++j) rank += counts[n - i - 1][rule.children(q)[v[j - 1]].proto];
    q = rule.children(q)[v[d - 1]].proto;
  }
  return rank;
}

inline Address rank_to_address(std::uint64_t r, ProtoIndex p, std::size_t n, const SubstitutionRule& rule,
                               const OrderSpec& spec) {
  const auto counts = count_table(rule, n);
  if (r < 1 || r > counts[n][p])
    throw OutOfRange("rank " + std::to_string(r) + " outside 1.." + std::to_string(counts[n][p]));
  Address addr;
  std::uint64_t rem = r - 1;
  ProtoIndex q = p;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = visit_order(q, rule, spec);
    for (std::uint32_t j = 0; j < v.size(); ++j) {
      const ProtoIndex c = rule.children(q)[v[j]].proto;
      const std::uint64_t size = counts[n - i - 1][c];
      if (rem < size) {
        addr.digits.push_back(j + 1);
        q = c;
        break;
      }
      rem -= size;
    }
  }
  return addr;
}

struct PoweredRule {
  SubstitutionRule rule;
  OrderSpec spec;
};

/// omega^k with the induced order, so that every 1-supertile of the result
/// is a k-supertile of the input.
inline PoweredRule normalize_power(const SubstitutionRule& rule, const OrderSpec& spec, std::size_t k,
                                   std::uint64_t cap = kDefaultTileCap) {
  if (k < 1) throw OutOfRange("power must be >= 1");
  if (k == 1) return {rule, spec};
  double lk = 1;
  for (std::size_t i = 0; i < k; ++i) lk *= rule.lambda();
  std::map<std::string, std::vector<ChildRef>> children;
  for (ProtoIndex q = 0; q < rule.size(); ++q) {
    auto& list = children[rule.prototile(q).id];
    for (const auto& t : ordered_supertile(q, k, rule, spec, cap))
      list.push_back({rule.prototile(t.tile.proto).id, t.tile.offset});
  }
  SubstitutionRule powered(lk, rule.prototiles(), children);
  return {powered, identity_order(powered)};
}

}  // namespace subsfc
