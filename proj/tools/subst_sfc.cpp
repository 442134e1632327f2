// subst-sfc: command-line front end for the subsfc library.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subsfc/subsfc.hpp"

namespace {

using namespace subsfc;

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitConditions = 3;

struct Globals {
  std::uint64_t cap = kDefaultTileCap;
  std::size_t power = 1;
  std::string variant;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

LoadedSubstitution load(const std::string& source, const Globals& g, bool validate = true) {
  ParseOptions opts;
  opts.order_variant = g.variant;
  opts.validate = validate;
  LoadedSubstitution s = source.rfind("builtin:", 0) == 0 ? load_builtin(source.substr(8), opts)
                                                          : parse_substitution(read_file(source), opts);
  if (g.power > 1) {
    auto powered = normalize_power(s.rule, s.spec, g.power, g.cap);
    s.rule = std::move(powered.rule);
    s.spec = std::move(powered.spec);
  }
  return s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

RenderOptions render_options(bool fill) {
  RenderOptions o;
  o.fill = fill;
  return o;
}

int cmd_validate(const std::string& source, const Globals& g, bool as_json) {
  const auto s = load(source, g, false);
  const auto report = validate_substitution(s.rule);
  if (as_json) {
    std::cout << Json{{"name", s.name}, {"ok", report.ok()}, {"checks", report_json(report)}}.dump(2) << "\n";
  } else {
    std::cout << s.name << ": " << s.rule.size() << " prototiles, lambda = " << fmt(s.rule.lambda()) << "\n";
    for (const auto& e : report.entries)
      std::cout << "  " << (e.ok ? "ok  " : "FAIL") << " " << (e.prototile.empty() ? "-" : e.prototile) << " "
                << e.check << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
  }
  return report.ok() ? 0 : kExitInvalid;
}

int cmd_supertile(const std::string& source, const Globals& g, const std::string& proto, std::size_t n,
                  const std::string& json_out, const std::string& svg_out) {
  const auto s = load(source, g);
  const ProtoIndex p = s.rule.index_of(proto);
  const auto tiles = ordered_supertile(p, n, s.rule, s.spec, g.cap);
  if (!json_out.empty()) write_output(json_out, patch_json(tiles, s.rule).dump(2) + "\n");
  if (!svg_out.empty()) {
    std::vector<SvgObject> objs;
    for (const auto& t : tiles) {
      SvgTile tile;
      tile.vertices = s.rule.support(t.tile).vertices;
      tile.palette_index = static_cast<int>(t.tile.proto);
      objs.emplace_back(std::move(tile));
    }
    write_output(svg_out, emit_svg(objs, render_options(false)));
  }
  if (json_out.empty() && svg_out.empty()) std::cout << tiles.size() << " tiles\n";
  return 0;
}

int cmd_cantor(const std::string& source, const Globals& g, const std::string& proto, std::size_t n,
               const std::string& json_out) {
  const auto s = load(source, g);
  const auto level = cantor_level(s.rule.index_of(proto), n, s.rule, s.spec, g.cap);
  write_output(json_out.empty() ? "-" : json_out, cantor_json(level, s.rule).dump(2) + "\n");
  return 0;
}

CurveSpec curve_for(const LoadedSubstitution& s, const std::string& proto, const std::string& seed_file,
                    const std::string& seed_name) {
  if (!seed_file.empty()) return make_curve(s.rule, s.spec, parse_seed(read_file(seed_file), s.rule));
  if (!seed_name.empty()) {
    const auto it = s.seeds.find(seed_name);
    if (it == s.seeds.end()) throw SchemaError("no seed named '" + seed_name + "'", "/seeds");
    return make_curve(s.rule, s.spec, it->second);
  }
  if (proto.empty()) throw SchemaError("give -p or a seed patch");
  return make_curve(s.rule, s.spec, s.rule.index_of(proto));
}

int cmd_approximant(const std::string& source, const Globals& g, const std::string& proto, std::size_t n,
                    const std::string& svg_out, const std::string& json_out, bool fill, const std::string& seed_file,
                    const std::string& seed_name) {
  const auto s = load(source, g);
  const auto cs = curve_for(s, proto, seed_file, seed_name);
  const auto appr = approximant(cs, n, g.cap);
  if (!svg_out.empty()) {
    std::vector<SvgObject> objs;
    if (fill)
      objs.emplace_back(SvgRegion{closed_region(appr).loop});
    else
      objs.emplace_back(SvgPolyline{appr.vertices});
    write_output(svg_out, emit_svg(objs, render_options(false)));
  }
  if (!json_out.empty()) write_output(json_out, approximant_json(appr).dump(2) + "\n");
  if (svg_out.empty() && json_out.empty()) std::cout << appr.size() << " vertices\n";
  return 0;
}

int cmd_eval(const std::string& source, const Globals& g, const std::string& proto, const std::string& t,
             std::size_t n, const std::string& seed_file, const std::string& seed_name) {
  const auto s = load(source, g);
  const auto cs = curve_for(s, proto, seed_file, seed_name);
  const auto r = eval(parse_rational(t), n, cs);
  std::cout << Json{{"t", to_string(parse_rational(t))},
                    {"depth", n},
                    {"point", {r.point.x, r.point.y}},
                    {"error_bound", r.error_bound}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_check(const std::string& source, const Globals& g, const std::string& proto, std::size_t continuity, std::size_t refine,
              const std::vector<std::size_t>& cover, std::size_t decay) {
  const auto s = load(source, g);
  bool ok = true;
  std::vector<ProtoIndex> protos;
  if (!proto.empty())
    protos.push_back(s.rule.index_of(proto));
  else
    for (ProtoIndex q = 0; q < s.rule.size(); ++q) protos.push_back(q);
  if (decay > 0) {
    const auto d = diameter_decay(s.rule, decay);
    std::cout << "decay:";
    for (double v : d.values) std::cout << " " << fmt(v);
    const bool pass = d.non_increasing;
    std::cout << (pass ? "  non-increasing" : "  INCREASES") << ", ratio " << fmt(d.ratio()) << "\n";
    ok = ok && pass;
  }
  if (continuity > 0) {
    for (auto q : protos) {
      const auto r = continuity_check(q, continuity, s.rule, s.spec, {}, g.cap, refine);
      std::cout << "continuity " << s.rule.prototile(q).id << " N=" << continuity << ": "
                << (r.ok ? "ok" : "FAIL") << ", worst " << fmt(r.worst) << " at (" << to_string(r.worst_x) << ", "
                << to_string(r.worst_y) << "), bound h_N = " << fmt(r.bound) << ", " << r.pairs << " pairs\n";
      ok = ok && r.ok;
    }
  }
  if (!cover.empty()) {
    if (cover.size() != 2) throw SchemaError("--cover takes n and m");
    for (auto q : protos) {
      const auto cs = make_curve(s.rule, s.spec, q);
      const auto r = cover_check(cs, cover[0], cover[1], g.cap);
      std::cout << "cover " << s.rule.prototile(q).id << " n=" << cover[0] << " m=" << cover[1] << ": "
                << (r.ok ? "ok" : "FAIL") << ", max distance " << fmt(r.max_distance) << ", bound " << fmt(r.bound)
                << "\n";
      ok = ok && r.ok;
    }
  }
  return ok ? 0 : kExitCheckFailed;
}

int cmd_fractal(const std::string& source, const Globals& g, const std::string& proto, std::size_t n,
                std::size_t iterations, int resolution, const std::string& svg_out, const std::string& json_out) {
  const auto s = load(source, g);
  const ProtoIndex p = s.rule.index_of(proto);
  const auto cs = make_curve(s.rule, s.spec, p);
  const auto all = find_fixed_placements(p, n, s.rule, g.cap);
  const auto interior = interior_placements(all, s.rule);
  std::cout << all.size() << " fixed placements, " << interior.size() << " interior\n";
  if (interior.empty()) {
    std::cerr << "conditions unmet: no placement satisfies (1) and (2)\n";
    return kExitConditions;
  }
  const FixedPlacement fp = interior.front();
  std::cout << "x = (" << fmt(fp.x.x) << ", " << fmt(fp.x.y) << ")\n";
  DenseSetBuild build;
  try {
    build = build_dense_set(fp, cs, iterations, std::nullopt, resolution, {}, g.cap);
  } catch (const ConditionsUnmet& e) {
    std::cerr << e.what() << "\n";
    return kExitConditions;
  }
  std::cout << build.regions.size() << " regions, " << build.pieces.size() << " pieces, " << build.class_count
            << " translation classes\n";
  for (std::size_t i = 0; i < build.nested.size(); ++i)
    std::cout << "  region " << i << " inside region " << i + 1 << ": " << (build.nested[i] ? "yes" : "no") << "\n";
  if (!svg_out.empty()) {
    static const char* strokes[] = {"#d62728", "#1f3b73", "#2ca02c", "#9467bd"};
    std::vector<SvgObject> objs;
    for (const auto& piece : build.pieces) {
      SvgTile t;
      t.vertices = piece.support.vertices;
      t.palette_index = static_cast<int>(piece.class_id);
      objs.emplace_back(std::move(t));
    }
    for (std::size_t i = build.regions.size(); i-- > 0;)
      objs.emplace_back(SvgRegion{build.regions[i].loop, "none", strokes[i % 4]});
    write_output(svg_out, emit_svg(objs, render_options(false)));
  }
  if (!json_out.empty()) {
    Json classes = Json::array();
    std::vector<std::size_t> census(build.class_count, 0);
    for (const auto& piece : build.pieces) ++census[piece.class_id];
    for (auto c : census) classes.push_back(c);
    Json nested = Json::array();
    for (bool b : build.nested) nested.push_back(b);
    write_output(json_out, Json{{"prototile", proto},
                                {"n", n},
                                {"x", {fp.x.x, fp.x.y}},
                                {"regions", build.regions.size()},
                                {"nested", nested},
                                {"pieces", build.pieces.size()},
                                {"class_census", classes}}
                                   .dump(2) +
                               "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-filling curves from planar substitutions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--cap", g.cap, "Refuse work predicted to exceed this many tiles")->capture_default_str();
  app.add_option("--power", g.power, "Replace the substitution by its k-th power first")->check(CLI::PositiveNumber);
  app.add_option("--order-variant", g.variant, "Order variant named in the document");

  std::string source, proto, json_out, svg_out, t = "0", seed_file, seed_name;
  std::size_t n = 1, continuity = 0, refine = 0, decay = 0, iterations = 2;
  std::vector<std::size_t> cover;
  int resolution = 512;
  bool fill = false, as_json = false;

  const auto source_opt = [&](CLI::App* c) {
    c->add_option("file", source, "Substitution document or builtin:<name>[#variant]")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a substitution document");
  source_opt(validate);
  validate->add_flag("--json", as_json, "Print the report as JSON");

  auto* supertile_cmd = app.add_subcommand("supertile", "Ordered n-supertile");
  source_opt(supertile_cmd);
  supertile_cmd->add_option("-p", proto, "Prototile id")->required();
  supertile_cmd->add_option("-n", n, "Depth")->required();
  supertile_cmd->add_option("--json", json_out, "Write tiles as JSON ('-' for stdout)");
  supertile_cmd->add_option("--svg", svg_out, "Write tiles as SVG");

  auto* cantor = app.add_subcommand("cantor", "Cantor intervals of one level");
  source_opt(cantor);
  cantor->add_option("-p", proto, "Prototile id")->required();
  cantor->add_option("-n", n, "Level")->required();
  cantor->add_option("--json", json_out, "Output file ('-' for stdout)");

  auto* appr = app.add_subcommand("approximant", "n-th approximant");
  source_opt(appr);
  appr->add_option("-p", proto, "Prototile id");
  appr->add_option("-n", n, "Depth")->required();
  appr->add_option("--svg", svg_out, "Write SVG");
  appr->add_option("--json", json_out, "Write vertices as JSON");
  appr->add_flag("--fill", fill, "Close the polyline and fill it even-odd");
  appr->add_option("--seed-patch", seed_file, "Seed patch document");
  appr->add_option("--seed", seed_name, "Seed patch named in the substitution document");

  auto* ev = app.add_subcommand("eval", "Evaluate the curve at a rational parameter");
  source_opt(ev);
  ev->add_option("-p", proto, "Prototile id");
  ev->add_option("-t", t, "Parameter, e.g. 1/7")->required();
  ev->add_option("-n", n, "Depth")->required();
  ev->add_option("--seed-patch", seed_file, "Seed patch document");
  ev->add_option("--seed", seed_name, "Seed patch named in the substitution document");

  auto* check = app.add_subcommand("check", "Check curve hypotheses and moduli");
  source_opt(check);
  check->add_option("-p", proto, "Restrict to one prototile");
  check->add_option("--continuity", continuity, "Continuity modulus at level N");
  check->add_option("--refine", refine, "Sample the continuity check at level N + refine");
  check->add_option("--cover", cover, "Cover check: depth n and grid size m")->expected(2);
  check->add_option("--decay", decay, "Diameter decay up to depth N");

  auto* fractal = app.add_subcommand("fractal", "Fixed placement, conditions and dense set");
  source_opt(fractal);
  fractal->add_option("-p", proto, "Prototile id")->required();
  fractal->add_option("-n", n, "Power of the self-copy")->required();
  fractal->add_option("--iterations", iterations, "Number of nested regions")->capture_default_str();
  fractal->add_option("--resolution", resolution, "Raster resolution for containment")->capture_default_str();
  fractal->add_option("--svg", svg_out, "Write SVG");
  fractal->add_option("--json", json_out, "Write the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(source, g, as_json);
    if (*supertile_cmd) return cmd_supertile(source, g, proto, n, json_out, svg_out);
    if (*cantor) return cmd_cantor(source, g, proto, n, json_out);
    if (*appr) return cmd_approximant(source, g, proto, n, svg_out, json_out, fill, seed_file, seed_name);
    if (*ev) return cmd_eval(source, g, proto, t, n, seed_file, seed_name);
    if (*check) return cmd_check(source, g, proto, continuity, refine, cover, decay);
    if (*fractal) return cmd_fractal(source, g, proto, n, iterations, resolution, svg_out, json_out);
  } catch (const ValidationError& e) {
    std::cerr << e.what();
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return 0;
}
