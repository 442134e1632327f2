#pragma once

// Planar substitutions: prototiles, translated placements, the expansion
// map and its extension to placed tiles, supertiles, and the structural
// checks (validity, primitivity, shrinking diameters).

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "subsfc/error.hpp"
#include "subsfc/geometry.hpp"
#include "subsfc/raster.hpp"

namespace subsfc {

/// Index into SubstitutionRule::prototiles().
using ProtoIndex = std::size_t;

struct Prototile {
  std::string id;
  std::string label;
  Polygon support;
};

/// `proto` translated by `offset`.
struct PlacedTile {
  ProtoIndex proto = 0;
  Point offset;
};

struct Patch {
  std::vector<PlacedTile> tiles;
  std::size_t size() const { return tiles.size(); }
};

/// Child reference by prototile id, as it appears in input documents.
struct ChildRef {
  std::string proto;
  Point offset;
};

inline constexpr std::uint64_t kDefaultTileCap = 10'000'000;

/// Expansion factor plus, for every prototile, the patch that dissects its
/// expanded support. Child offsets live in the frame of lambda * supp p.
/// Immutable after construction.
class SubstitutionRule {
 public:
  SubstitutionRule() = default;

  /// Throws SchemaError for duplicate ids, dangling child references or a
  /// prototile without children.
  SubstitutionRule(double lambda, std::vector<Prototile> prototiles,
                   const std::map<std::string, std::vector<ChildRef>>& children)
      : lambda_(lambda), prototiles_(std::move(prototiles)) {
    for (std::size_t i = 0; i < prototiles_.size(); ++i) {
      if (!index_.emplace(prototiles_[i].id, i).second)
        throw SchemaError("duplicate prototile id '" + prototiles_[i].id + "'", "/prototiles/" + std::to_string(i));
    }
    for (const auto& [id, _] : children)
      if (!index_.contains(id)) throw SchemaError("children given for unknown prototile '" + id + "'", "/children/" + id);
    children_.resize(prototiles_.size());
    for (std::size_t i = 0; i < prototiles_.size(); ++i) {
      const auto it = children.find(prototiles_[i].id);
      if (it == children.end() || it->second.empty())
        throw SchemaError("prototile has no children", "/children/" + prototiles_[i].id);
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        const auto& c = it->second[k];
        const auto ref = index_.find(c.proto);
        if (ref == index_.end())
          throw SchemaError("unknown prototile '" + c.proto + "'",
                            "/children/" + prototiles_[i].id + "/" + std::to_string(k) + "/proto");
        children_[i].push_back({ref->second, c.offset});
      }
    }
    init_caches();
  }

  double lambda() const { return lambda_; }
  std::size_t size() const { return prototiles_.size(); }
  const std::vector<Prototile>& prototiles() const { return prototiles_; }
  const Prototile& prototile(ProtoIndex i) const { return prototiles_.at(i); }
  const std::vector<PlacedTile>& children(ProtoIndex i) const { return children_.at(i); }

  std::optional<ProtoIndex> find(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  ProtoIndex index_of(const std::string& id) const {
    if (auto i = find(id)) return *i;
    throw UnknownPrototile(id);
  }

  Point centroid_of(ProtoIndex i) const { return centroids_.at(i); }
  double diameter_of(ProtoIndex i) const { return diameters_.at(i); }

  /// The support of `t` as a polygon.
  Polygon support(const PlacedTile& t) const { return translate(prototile(t.proto).support, t.offset); }

  /// |omega^n(p)| for every p, saturating at uint64 max.
  std::vector<std::uint64_t> tile_counts(std::size_t n) const {
    std::vector<std::uint64_t> cur(size(), 1);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::uint64_t> next(size(), 0);
      for (std::size_t p = 0; p < size(); ++p) {
        std::uint64_t s = 0;
        for (const auto& c : children_[p]) {
          const std::uint64_t add = cur[c.proto];
          s = (s > std::numeric_limits<std::uint64_t>::max() - add) ? std::numeric_limits<std::uint64_t>::max()
                                                                    : s + add;
        }
        next[p] = s;
      }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  void init_caches() {
    for (const auto& p : prototiles_) {
      centroids_.push_back(centroid(p.support));
      diameters_.push_back(diameter(p.support));
    }
  }

  double lambda_ = 2.0;
  std::vector<Prototile> prototiles_;
  std::vector<std::vector<PlacedTile>> children_;
  std::unordered_map<std::string, ProtoIndex> index_;
  std::vector<Point> centroids_;
  std::vector<double> diameters_;
};

struct ValidationEntry {
  std::string prototile;  // empty for rule-wide checks
  std::string check;      // lambda | area | disjoint | coverage | connected
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;

  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
  std::vector<ValidationEntry> failures() const {
    std::vector<ValidationEntry> out;
    for (const auto& e : entries)
      if (!e.ok) out.push_back(e);
    return out;
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& e : entries)
      if (!e.ok) os << (e.prototile.empty() ? "rule" : e.prototile) << ": " << e.check << " failed (" << e.detail << ")\n";
    return os.str();
  }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("substitution failed validation:\n" + report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Pixels across the expanded support for the connectivity check.
inline constexpr int kConnectivityResolution = 64;

/// Checks lambda > 1 and, per prototile: child area sum equals
/// lambda^2 * area(supp p), children pairwise interior-disjoint, every child
/// inside lambda * supp p, and the union connected with connected complement.
/// Failures are reported, not thrown.
inline ValidationReport validate_substitution(const SubstitutionRule& rule, Tolerance tol = {}) {
  ValidationReport report;
  const double lambda = rule.lambda();
  {
    ValidationEntry e{"", "lambda", lambda > 1.0, ""};
    if (!e.ok) e.detail = "lambda = " + std::to_string(lambda) + " is not > 1";
    report.entries.push_back(e);
  }
  for (ProtoIndex p = 0; p < rule.size(); ++p) {
    const auto& proto = rule.prototile(p);
    const Polygon expanded = scale(proto.support, lambda);
    const double target = lambda * lambda * area(proto.support, tol);
    std::vector<Polygon> kids;
    for (const auto& c : rule.children(p)) kids.push_back(rule.support(c));

    double sum = 0;
    for (const auto& k : kids) sum += area(k, tol);
    const double area_tol = tol.eps * std::max(1.0, perimeter(expanded));
    const double deficit = target - sum;
    {
      ValidationEntry e{proto.id, "area", std::abs(deficit) <= area_tol, ""};
      if (!e.ok) {
        std::ostringstream os;
        os.precision(12);
        os << "child area " << sum << " vs expected " << target;
        e.detail = os.str();
      }
      report.entries.push_back(e);
    }
    {
      ValidationEntry e{proto.id, "disjoint", true, ""};
      for (std::size_t i = 0; i < kids.size() && e.ok; ++i)
        for (std::size_t j = i + 1; j < kids.size() && e.ok; ++j)
          if (!interiors_disjoint(kids[i], kids[j], tol)) {
            e.ok = false;
            e.detail = "children " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " overlap";
          }
      report.entries.push_back(e);
    }
    {
      ValidationEntry e{proto.id, "coverage", true, ""};
      for (std::size_t i = 0; i < kids.size() && e.ok; ++i)
        for (auto v : kids[i].vertices)
          if (!contains(expanded, v, tol)) {
            e.ok = false;
            e.detail = "child " + std::to_string(i + 1) + " leaves the expanded support";
            break;
          }
      if (e.ok && std::abs(deficit) > area_tol) {
        std::ostringstream os;
        os.precision(12);
        os << "area deficit " << deficit;
        e.ok = false;
        e.detail = os.str();
      }
      report.entries.push_back(e);
    }
    {
      const PixelGrid g = make_grid(bounding_box(expanded), kConnectivityResolution);
      const Bitmap bm = rasterize_union(kids, g);
      const int fg = count_components(bm, true);
      const int bg = count_components(bm, false);
      ValidationEntry e{proto.id, "connected", fg == 1 && bg == 1, ""};
      if (!e.ok)
        e.detail = std::to_string(fg) + " filled and " + std::to_string(bg) + " empty components at " +
                   std::to_string(kConnectivityResolution) + " px";
      report.entries.push_back(e);
    }
  }
  return report;
}

/// omega'(p + x) = omega(p) + lambda * x.
inline Patch expand_placed(const PlacedTile& t, const SubstitutionRule& rule) {
  if (t.proto >= rule.size()) throw UnknownPrototile("#" + std::to_string(t.proto));
  Patch out;
  const Point shift = rule.lambda() * t.offset;
  for (const auto& c : rule.children(t.proto)) out.tiles.push_back({c.proto, c.offset + shift});
  return out;
}

inline void check_cap(std::uint64_t predicted, std::uint64_t cap) {
  if (predicted > cap)
    throw ResourceLimit("predicted " + std::to_string(predicted) + " tiles exceeds cap " + std::to_string(cap) +
                        " (raise with --cap)");
}

/// The n-supertile omega^n(p); supertile(p, 0) is p at the origin.
inline Patch supertile(ProtoIndex p, std::size_t n, const SubstitutionRule& rule,
                       std::uint64_t cap = kDefaultTileCap) {
  check_cap(rule.tile_counts(n).at(p), cap);
  Patch cur{{{p, {0, 0}}}};
  for (std::size_t k = 0; k < n; ++k) {
    Patch next;
    next.tiles.reserve(cur.size() * 4);
    for (const auto& t : cur.tiles) {
      Patch e = expand_placed(t, rule);
      next.tiles.insert(next.tiles.end(), e.tiles.begin(), e.tiles.end());
    }
    cur = std::move(next);
  }
  return cur;
}

/// Smallest k <= k_max such that omega^k(p) contains every prototile, for
/// every p. Works on the incidence pattern only.
inline std::optional<std::size_t> is_primitive(const SubstitutionRule& rule, std::size_t k_max) {
  const std::size_t n = rule.size();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p)
    for (const auto& c : rule.children(p)) base[p][c.proto] = true;
  auto reach = base;
  for (std::size_t k = 1; k <= k_max; ++k) {
    bool full = true;
    for (std::size_t p = 0; p < n && full; ++p)
      for (std::size_t q = 0; q < n && full; ++q) full = reach[p][q];
    if (full) return k;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t m = 0; m < n; ++m)
        if (reach[p][m])
          for (std::size_t q = 0; q < n; ++q)
            if (base[m][q]) next[p][q] = true;
    reach = std::move(next);
  }
  return std::nullopt;
}

/// Prototiles occurring in omega^n(p), as a membership mask.
inline std::vector<bool> occurring_prototiles(const SubstitutionRule& rule, ProtoIndex p, std::size_t n) {
  std::vector<bool> cur(rule.size(), false);
  cur[p] = true;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<bool> next(rule.size(), false);
    for (std::size_t q = 0; q < rule.size(); ++q)
      if (cur[q])
        for (const auto& c : rule.children(q)) next[c.proto] = true;
    cur = std::move(next);
  }
  return cur;
}

struct DecayReport {
  std::vector<double> values;  // d_1 .. d_nmax
  bool non_increasing = true;

  double ratio() const { return values.empty() ? 1.0 : values.back() / values.front(); }
};

/// d_n = max diameter over tiles of lambda^-n omega^n(p), over all p. Every
/// tile of omega^n(p) is a translate of a prototile, so the maximum is taken
/// over the prototiles that occur at depth n, scaled by lambda^-n.
inline DecayReport diameter_decay(const SubstitutionRule& rule, std::size_t n_max) {
  if (n_max < 1) throw OutOfRange("diameter_decay needs n_max >= 1");
  DecayReport r;
  std::vector<std::vector<bool>> occ;
  for (ProtoIndex p = 0; p < rule.size(); ++p) occ.push_back(occurring_prototiles(rule, p, 0));
  double scale_n = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    scale_n /= rule.lambda();
    double d = 0;
    for (ProtoIndex p = 0; p < rule.size(); ++p) {
      std::vector<bool> next(rule.size(), false);
      for (std::size_t q = 0; q < rule.size(); ++q)
        if (occ[p][q])
          for (const auto& c : rule.children(q)) next[c.proto] = true;
      occ[p] = std::move(next);
      for (std::size_t q = 0; q < rule.size(); ++q)
        if (occ[p][q]) d = std::max(d, rule.diameter_of(q) * scale_n);
    }
    if (!r.values.empty() && d > r.values.back()) r.non_increasing = false;
    r.values.push_back(d);
  }
  return r;
}

}  // namespace subsfc
