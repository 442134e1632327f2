#pragma once

// JSON substitution documents, seed patches and result emitters.
//
// Scalars are JSON numbers or strings holding an arithmetic expression over
// numbers and the constants phi, sqrt2, sqrt3, sqrt5 (also sqrt(...)). The
// original text is kept so documents round-trip unchanged.

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subsfc/cantor.hpp"
#include "subsfc/curve.hpp"
#include "subsfc/error.hpp"
#include "subsfc/ordering.hpp"
#include "subsfc/substitution.hpp"

namespace subsfc {

using Json = nlohmann::ordered_json;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::string pointer) : s_(text), ptr_(std::move(pointer)) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (!std::isfinite(v)) fail("value is not finite");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("bad scalar '" + std::string(s_) + "': " + why, ptr_);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        const double d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      try {
        std::size_t used = 0;
        const std::string tok(s_.substr(start, pos_ - start));
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail("bad number");
        return v;
      } catch (const std::logic_error&) {
        fail("bad number");
      }
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "phi") return std::numbers::phi;
    if (name == "sqrt2") return std::numbers::sqrt2;
    if (name == "sqrt3") return std::numbers::sqrt3;
    if (name == "sqrt5") return std::sqrt(5.0);
    if (name == "sqrt") {
      if (!eat('(')) fail("sqrt needs parentheses");
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      if (v < 0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    fail(name.empty() ? "expected a value" : "unknown constant '" + std::string(name) + "'");
  }

  std::string_view s_;
  std::string ptr_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double scalar_value(const Json& v, const std::string& pointer) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return detail::ExprParser(v.get_ref<const std::string&>(), pointer).parse();
  throw SchemaError("expected a number or an expression string", pointer);
}

inline Point point_value(const Json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 2) throw SchemaError("expected [x, y]", pointer);
  return {scalar_value(v[0], pointer + "/0"), scalar_value(v[1], pointer + "/1")};
}

namespace detail {

inline const Json& member(const Json& obj, const char* key, const std::string& pointer) {
  if (!obj.is_object()) throw SchemaError("expected an object", pointer);
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "'", pointer);
  return *it;
}

inline std::string string_member(const Json& obj, const char* key, const std::string& pointer) {
  const Json& v = member(obj, key, pointer);
  if (!v.is_string()) throw SchemaError("expected a string", pointer + "/" + key);
  return v.get<std::string>();
}

/// Splits "X@30" into ("X", 30); a plain id has angle 0.
inline std::pair<std::string, int> split_rotation(const std::string& id) {
  const auto at = id.rfind('@');
  if (at == std::string::npos) return {id, 0};
  try {
    std::size_t used = 0;
    const int a = std::stoi(id.substr(at + 1), &used);
    if (used != id.size() - at - 1) return {id, 0};
    return {id.substr(0, at), ((a % 360) + 360) % 360};
  } catch (const std::logic_error&) {
    return {id, 0};
  }
}

inline std::string rotated_id(const std::string& base, int angle) {
  angle = ((angle % 360) + 360) % 360;
  return angle == 0 ? base : base + "@" + std::to_string(angle);
}

}  // namespace detail

struct LoadedSubstitution {
  std::string name;
  SubstitutionRule rule;
  OrderSpec spec;
  std::string variant;                                   // selected order variant, empty for the base order
  std::vector<std::string> variants;                     // available order variants
  std::map<std::string, std::vector<SeedTile>> seeds;    // named seed patches shipped with the document
  Json source;                                           // the document as given
};

struct ParseOptions {
  std::string order_variant;  // empty: use the document's `order_variant` or the base order
  bool validate = true;
  Tolerance tol;
};

inline std::vector<SeedTile> parse_seed_tiles(const Json& tiles, const SubstitutionRule& rule, const std::string& ptr) {
  if (!tiles.is_array() || tiles.empty()) throw SchemaError("expected a non-empty array of seed tiles", ptr);
  std::vector<SeedTile> out;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string p = ptr + "/" + std::to_string(i);
    const std::string id = detail::string_member(tiles[i], "proto", p);
    const auto q = rule.find(id);
    if (!q) throw SchemaError("unknown prototile '" + id + "'", p + "/proto");
    SeedTile s{*q, {0, 0}, false};
    if (tiles[i].contains("offset")) s.offset = point_value(tiles[i]["offset"], p + "/offset");
    if (tiles[i].contains("reversed")) {
      if (!tiles[i]["reversed"].is_boolean()) throw SchemaError("expected true or false", p + "/reversed");
      s.reversed = tiles[i]["reversed"].get<bool>();
    }
    out.push_back(s);
  }
  return out;
}

/// Parses a substitution document. Rotation families are expanded into
/// distinct prototiles, the order variant applied, and the rule validated
/// (ValidationError) unless disabled.
inline LoadedSubstitution parse_substitution_json(const Json& doc, const ParseOptions& opts = {}) {
  using detail::member;
  using detail::string_member;
  if (!doc.is_object()) throw SchemaError("document must be an object", "");
  LoadedSubstitution out;
  out.source = doc;
  out.name = doc.contains("name") ? string_member(doc, "name", "") : std::string("unnamed");
  const double lambda = scalar_value(member(doc, "lambda", ""), "/lambda");

  // optional rotation family: every prototile and child list exists at each angle
  std::vector<int> angles{0};
  if (doc.contains("rotations")) {
    const Json& r = doc["rotations"];
    const Json& a = member(r, "angles", "/rotations");
    if (!a.is_array() || a.empty()) throw SchemaError("expected a non-empty angle list", "/rotations/angles");
    angles.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number_integer()) throw SchemaError("angles are whole degrees", "/rotations/angles/" + std::to_string(i));
      angles.push_back(((a[i].get<int>() % 360) + 360) % 360);
    }
  }

  const Json& protos = member(doc, "prototiles", "");
  if (!protos.is_array() || protos.empty()) throw SchemaError("expected a non-empty array", "/prototiles");
  std::vector<Prototile> tiles;
  std::vector<std::string> base_ids;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    const std::string p = "/prototiles/" + std::to_string(i);
    const std::string id = string_member(protos[i], "id", p);
    const std::string label = protos[i].contains("label") ? string_member(protos[i], "label", p) : id;
    const Json& verts = member(protos[i], "vertices", p);
    if (!verts.is_array()) throw SchemaError("expected an array of points", p + "/vertices");
    std::vector<Point> pts;
    for (std::size_t k = 0; k < verts.size(); ++k) pts.push_back(point_value(verts[k], p + "/vertices/" + std::to_string(k)));
    base_ids.push_back(id);
    for (int a : angles) {
      std::vector<Point> rp;
      for (auto q : pts) rp.push_back(rotate(q, a));
      try {
        tiles.push_back({detail::rotated_id(id, a), label, make_polygon(rp, opts.tol)});
      } catch (const GeometryError& e) {
        throw SchemaError(e.what(), p + "/vertices");
      }
    }
  }

  const Json& kids = member(doc, "children", "");
  if (!kids.is_object()) throw SchemaError("expected an object keyed by prototile id", "/children");
  std::map<std::string, std::vector<ChildRef>> children;
  for (const auto& [id, list] : kids.items()) {
    const std::string p = "/children/" + id;
    if (!list.is_array()) throw SchemaError("expected an array of children", p);
    std::vector<ChildRef> base;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string c = p + "/" + std::to_string(k);
      base.push_back({string_member(list[k], "proto", c), point_value(member(list[k], "offset", c), c + "/offset")});
    }
    for (int a : angles) {
      std::vector<ChildRef> rotated;
      for (const auto& c : base) {
        const auto [b, ca] = detail::split_rotation(c.proto);
        rotated.push_back({a == 0 ? c.proto : detail::rotated_id(b, ca + a), rotate(c.offset, a)});
      }
      children[detail::rotated_id(id, a)] = std::move(rotated);
    }
  }
  out.rule = SubstitutionRule(lambda, std::move(tiles), children);

  const auto read_order = [&](const Json& o, const std::string& ptr, std::map<std::string, std::vector<std::size_t>>& dst) {
    if (!o.is_object()) throw SchemaError("expected an object keyed by prototile id", ptr);
    for (const auto& [id, list] : o.items()) {
      if (!list.is_array()) throw SchemaError("expected a list of child indices", ptr + "/" + id);
      std::vector<std::size_t> v;
      for (std::size_t k = 0; k < list.size(); ++k) {
        if (!list[k].is_number_integer() || list[k].get<long long>() < 1)
          throw SchemaError("child indices are positive integers", ptr + "/" + id + "/" + std::to_string(k));
        v.push_back(list[k].get<std::size_t>());
      }
      for (int a : angles) dst[detail::rotated_id(id, a)] = v;
    }
  };
  std::map<std::string, std::vector<std::size_t>> order;
  if (doc.contains("order")) read_order(doc["order"], "/order", order);

  if (doc.contains("order_variants")) {
    const Json& ov = doc["order_variants"];
    if (!ov.is_object()) throw SchemaError("expected an object keyed by variant name", "/order_variants");
    for (const auto& [name, _] : ov.items()) out.variants.push_back(name);
  }
  out.variant = opts.order_variant;
  if (out.variant.empty() && doc.contains("order_variant")) out.variant = string_member(doc, "order_variant", "");
  if (!out.variant.empty()) {
    if (!doc.contains("order_variants") || !doc["order_variants"].contains(out.variant))
      throw SchemaError("unknown order variant '" + out.variant + "'", "/order_variants");
    read_order(doc["order_variants"][out.variant], "/order_variants/" + out.variant, order);
  }
  if (order.empty())
    out.spec = identity_order(out.rule);
  else
    out.spec = make_order(out.rule, order);

  if (doc.contains("seeds")) {
    const Json& seeds = doc["seeds"];
    if (!seeds.is_object()) throw SchemaError("expected an object keyed by seed name", "/seeds");
    for (const auto& [name, tiles_json] : seeds.items())
      out.seeds[name] = parse_seed_tiles(tiles_json, out.rule, "/seeds/" + name);
  }

  if (opts.validate) {
    auto report = validate_substitution(out.rule, opts.tol);
    if (!report.ok()) throw ValidationError(std::move(report));
  }
  return out;
}

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

inline LoadedSubstitution parse_substitution(std::string_view text, const ParseOptions& opts = {}) {
  return parse_substitution_json(parse_json_text(text), opts);
}

/// A seed document: {"tiles": [{"proto", "offset", "reversed"}, ...]}.
inline std::vector<SeedTile> parse_seed(std::string_view text, const SubstitutionRule& rule) {
  const Json doc = parse_json_text(text);
  return parse_seed_tiles(detail::member(doc, "tiles", ""), rule, "/tiles");
}

/// The document a rule was loaded from, unchanged.
inline std::string emit_json(const LoadedSubstitution& s) { return s.source.dump(2) + "\n"; }

/// A document for an in-memory rule (numbers written as doubles).
inline Json rule_to_json(const SubstitutionRule& rule, const OrderSpec& spec, const std::string& name = "rule") {
  Json doc;
  doc["name"] = name;
  doc["lambda"] = rule.lambda();
  doc["prototiles"] = Json::array();
  for (const auto& p : rule.prototiles()) {
    Json verts = Json::array();
    for (auto v : p.support.vertices) verts.push_back({v.x, v.y});
    doc["prototiles"].push_back({{"id", p.id}, {"label", p.label}, {"vertices", verts}});
  }
  doc["children"] = Json::object();
  doc["order"] = Json::object();
  for (ProtoIndex q = 0; q < rule.size(); ++q) {
    Json list = Json::array();
    for (const auto& c : rule.children(q))
      list.push_back({{"proto", rule.prototile(c.proto).id}, {"offset", {c.offset.x, c.offset.y}}});
    doc["children"][rule.prototile(q).id] = list;
    if (spec.covers(q)) {
      Json ord = Json::array();
      for (auto k : spec.visit[q]) ord.push_back(k + 1);
      doc["order"][rule.prototile(q).id] = ord;
    }
  }
  return doc;
}

inline Json address_json(const Address& a) {
  Json out = Json::array();
  for (auto d : a.digits) out.push_back(d);
  return out;
}

inline Json cantor_json(const CantorLevel& level, const SubstitutionRule& rule) {
  Json out = Json::array();
  for (const auto& n : level)
    out.push_back({{"lo", to_string(n.lo)}, {"hi", to_string(n.hi)}, {"label", rule.prototile(n.label).id},
                   {"address", address_json(n.addr)}});
  return out;
}

inline CantorLevel cantor_from_json(const Json& arr, const SubstitutionRule& rule) {
  CantorLevel out;
  for (const auto& j : arr) {
    IntervalNode n;
    n.lo = parse_rational(j.at("lo").get<std::string>());
    n.hi = parse_rational(j.at("hi").get<std::string>());
    n.label = rule.index_of(j.at("label").get<std::string>());
    for (const auto& d : j.at("address")) n.addr.digits.push_back(d.get<std::uint32_t>());
    n.depth = n.addr.size();
    out.push_back(std::move(n));
  }
  return out;
}

inline Json approximant_json(const Approximant& a) {
  Json verts = Json::array(), addrs = Json::array();
  for (auto v : a.vertices) verts.push_back({v.x, v.y});
  for (const auto& ad : a.addresses) addrs.push_back(address_json(ad));
  return {{"closed", a.closed}, {"vertices", verts}, {"addresses", addrs}};
}

inline Json patch_json(const std::vector<OrderedTile>& tiles, const SubstitutionRule& rule) {
  Json out = Json::array();
  for (const auto& t : tiles)
    out.push_back({{"proto", rule.prototile(t.tile.proto).id},
                   {"offset", {t.tile.offset.x, t.tile.offset.y}},
                   {"address", address_json(t.addr)}});
  return out;
}

inline Json report_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& e : r.entries)
    out.push_back({{"prototile", e.prototile}, {"check", e.check}, {"ok", e.ok}, {"detail", e.detail}});
  return out;
}

}  // namespace subsfc
