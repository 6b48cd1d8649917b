#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "konvex/extremal.hpp"
#include "konvex/geometry.hpp"
#include "konvex/projections.hpp"
#include "konvex/report_json.hpp"
#include "konvex/stabbing.hpp"
#include "konvex/svg.hpp"
#include "konvex/text_format.hpp"
#include "konvex/theorem.hpp"

namespace {

using nlohmann::json;
using namespace konvex;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitVerification = 2;

std::string fmt(double v, int digits = 10) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KONVEX_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw GeometryError("KONVEX_SEED is not an unsigned integer");
  }
  return 1;
}

// Key/value rows with the keys padded to a common width.
void print_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  for (const auto& [k, v] : rows) {
    std::cout << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  }
}

std::string describe(const Line& line) {
  const Direction n = line.normal();
  return "nx=" + fmt(n.x) + " ny=" + fmt(n.y) + " c=" + fmt(line.offset());
}

void print_multiplicity(const MultiplicityReport& report) {
  std::cout << "count=" << report.count << " method=" << to_string(report.method) << '\n'
            << "witness: " << describe(report.witness) << '\n';
  for (const Component& c : report.components) {
    std::cout << "  segments " << c.first_segment << ".." << c.last_segment << ": ";
    if (c.is_point()) {
      std::cout << "point (" << fmt(c.start.x) << ", " << fmt(c.start.y) << ")\n";
    } else {
      std::cout << "subsegment (" << fmt(c.start.x) << ", " << fmt(c.start.y) << ")-("
                << fmt(c.end.x) << ", " << fmt(c.end.y) << ")\n";
    }
  }
}

void print_bound_report(const BoundReport& report) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"side", to_string(report.side)},
      {"perimeter", fmt(report.perimeter)},
      {"diameter", fmt(report.diameter)},
      {"r", std::to_string(report.r)},
      {"s", fmt(report.s)}};
  if (report.side != BoundSide::falsification) {
    rows.emplace_back("length", fmt(report.length));
    rows.emplace_back("within_bound", report.within_bound ? "yes" : "no");
  }
  if (report.construction) {
    const ConstructionResult& c = *report.construction;
    rows.emplace_back("target", fmt(c.target));
    rows.emplace_back("epsilon", fmt(c.params.epsilon));
    rows.emplace_back("vertices", std::to_string(c.curve.vertex_count()));
    rows.emplace_back("loops", std::to_string(c.loops.size()));
    rows.emplace_back("multiplicity", std::to_string(c.multiplicity.count));
    rows.emplace_back("retries_used", std::to_string(c.retries_used));
    rows.emplace_back("seed", std::to_string(c.params.seed));
  }
  if (report.falsification) {
    const FalsificationStats& f = *report.falsification;
    rows.emplace_back("trials", std::to_string(f.trials));
    rows.emplace_back("admissible", std::to_string(f.admissible));
    rows.emplace_back("max_ratio", fmt(f.max_ratio));
    rows.emplace_back("violations", std::to_string(f.violations.size()));
    rows.emplace_back("seed", std::to_string(f.seed));
    for (const auto& [name, count] : f.generators) {
      rows.emplace_back("generator." + name, std::to_string(count));
    }
  }
  print_table(rows);
  if (report.stabbing) {
    std::cout << "stabbing line:\n";
    print_multiplicity(*report.stabbing);
  }
}

void check_r(int r) {
  if (r < 2) throw GeometryError("r must be an integer >= 2");
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<Point> points_from_json(const json& arr) {
  std::vector<Point> pts;
  for (const json& p : arr) {
    auto text = [](const json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    pts.push_back(Point::from_decimal(text(p.at(0)), text(p.at(1))));
  }
  return pts;
}

// Scene spec:
//   {"body": "square.txt" | [[x, y], ...],
//    "curves": [{"label": "a", "file": "curve.txt"} |
//               {"label": "a", "closed": false, "points": [[x, y], ...]}],
//    "lines": [{"label": "l", "nx": ..., "ny": ..., "c": ...}],
//    "annotations": [{"x": ..., "y": ..., "text": "..."}]}
// Relative file names resolve against the scene file's directory.
SceneDocument load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open '" + path + "'");
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::exception& e) {
    throw GeometryError(std::string("scene spec: ") + e.what());
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  SceneDocument scene;
  try {
    if (spec.contains("body")) {
      const json& b = spec.at("body");
      scene.body = b.is_string() ? read_polygon_file(resolve_path(base, b.get<std::string>()))
                                 : ConvexPolygon(points_from_json(b));
    }
    for (const json& c : spec.value("curves", json::array())) {
      const std::string label = c.at("label").get<std::string>();
      if (c.contains("file")) {
        scene.curves.push_back(
            {label, read_polyline_file(resolve_path(base, c.at("file").get<std::string>()))});
      } else {
        scene.curves.push_back(
            {label, Polyline(points_from_json(c.at("points")), c.value("closed", false))});
      }
    }
    for (const json& l : spec.value("lines", json::array())) {
      scene.lines.push_back({l.at("label").get<std::string>(), line_from_json(l)});
    }
    for (const json& a : spec.value("annotations", json::array())) {
      scene.annotations.push_back(
          {Vec2{a.at("x").get<double>(), a.at("y").get<double>()}, a.at("text").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw GeometryError(std::string("scene spec: ") + e.what());
  }
  return scene;
}

struct Options {
  bool json = false;
};

int run_bound(const Options& o, const std::string& body_path, int r) {
  const ConvexPolygon body = read_polygon_file(body_path);
  const double s = s_bound(body, r);
  const double p = perimeter(body);
  const double d = diameter(body).length;
  if (o.json) {
    std::cout << json{{"r", r}, {"s", s}, {"perimeter", p}, {"diameter", d}}.dump(2) << '\n';
  } else {
    std::cout << "s = " << fmt(s) << " (p=" << fmt(p) << ", d=" << fmt(d) << ")\n";
  }
  return kExitOk;
}

int run_analyze(const Options& o, const std::string& poly_path) {
  const Polyline poly = read_polyline_file(poly_path);
  const MultiplicityReport report = max_line_multiplicity(poly);
  if (o.json) {
    json j = to_json(report);
    j["length"] = polyline_length(poly);
    j["vertices"] = poly.vertex_count();
    j["closed"] = poly.closed();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "length=" << fmt(polyline_length(poly)) << " vertices=" << poly.vertex_count()
              << '\n';
    print_multiplicity(report);
  }
  return kExitOk;
}

int run_stab(const Options& o, const std::string& poly_path, int r, const std::string& body_path) {
  check_r(r);
  const Polyline poly = read_polyline_file(poly_path);
  const ConvexPolygon body = read_polygon_file(body_path);
  const MultiplicityReport report = find_stabbing_line(poly, r, body);
  if (o.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_multiplicity(report);
  }
  return kExitOk;
}

int run_construct(const Options& o, const std::string& body_path, int r, double eps,
                  std::uint64_t seed, std::size_t samples, const std::string& out,
                  const std::string& svg_out) {
  check_r(r);
  const ConvexPolygon body = read_polygon_file(body_path);
  ConstructionParams params;
  params.r = r;
  params.epsilon = eps;
  params.seed = seed;
  params.samples_per_loop = samples;
  const BoundReport report = realize_lower_bound(body, params);
  const ConstructionResult& result = *report.construction;
  if (!out.empty()) {
    write_text_file(out, serialize(result.curve));
    write_text_file(out + ".json", to_json(result).dump(2) + "\n");
  }
  if (!svg_out.empty()) {
    SceneDocument scene;
    scene.body = body;
    scene.curves.push_back({"curve", result.curve});
    emit_svg(scene, svg_out);
  }
  if (o.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_bound_report(report);
    if (!out.empty()) std::cout << "wrote " << out << " and " << out << ".json\n";
  }
  return kExitOk;
}

int run_verify(const Options& o, const std::string& poly_path, const std::string& body_path,
               int r) {
  check_r(r);
  const Polyline poly = read_polyline_file(poly_path);
  const ConvexPolygon body = read_polygon_file(body_path);
  const BoundReport report = check_upper_bound(poly, body, r);
  if (o.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_bound_report(report);
  }
  return kExitOk;
}

int run_falsify(const Options& o, const std::string& body_path, int r, std::size_t trials,
                std::uint64_t seed) {
  check_r(r);
  if (trials < 1) throw GeometryError("trials must be at least 1");
  const ConvexPolygon body = read_polygon_file(body_path);
  const BoundReport report = falsify(body, r, trials, seed);
  if (o.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_bound_report(report);
  }
  return report.falsification->violations.empty() ? kExitOk : kExitVerification;
}

int run_prop1(const Options& o, const std::string& poly_path) {
  const Polyline ring = read_polyline_file(poly_path);
  const Prop1Result result = prop1_check(ring);
  if (o.json) {
    std::cout << to_json(result).dump(2) << '\n';
  } else {
    print_table({{"convex", result.convex ? "yes" : "no"},
                 {"max_mult", std::to_string(result.max_mult)},
                 {"consistent", result.consistent ? "yes" : "no"},
                 {"witness", describe(result.witness.witness)}});
  }
  return result.consistent ? kExitOk : kExitVerification;
}

int run_profile(const Options& o, const std::string& path, bool as_body, std::size_t samples) {
  if (samples < 1) throw GeometryError("samples must be at least 1");
  const ProjectionProfile profile = as_body ? width_profile(read_polygon_file(path), samples)
                                            : polyline_profile(read_polyline_file(path), samples);
  if (o.json) {
    json rows = json::array();
    for (const auto& [a, v] : profile.evaluations) rows.push_back({a, v});
    std::cout << json{{"closed_form_integral", profile.closed_form_integral},
                      {"evaluations", rows}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "alpha,value\n";
    for (const auto& [a, v] : profile.evaluations) {
      std::cout << fmt(a, 17) << ',' << fmt(v, 17) << '\n';
    }
  }
  return kExitOk;
}

int run_svg(const std::string& scene_path, const std::string& out) {
  const SceneDocument scene = load_scene(scene_path);
  if (out.empty()) {
    std::cout << render_svg(scene);
  } else {
    emit_svg(scene, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curves in convex bodies that no line meets more than r times"};
  app.require_subcommand(1);
  Options opts;
  app.add_flag("--json", opts.json, "Machine-readable JSON output");

  std::string poly_path, body_path, out, svg_out;
  int r = 2;
  double eps = 0.1;
  std::size_t trials = 10000;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  bool as_body = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", opts.json, "JSON output"); };

  CLI::App* bound = app.add_subcommand("bound", "Print s(K, r), perimeter and diameter");
  bound->add_option("K", body_path, "Convex polygon file")->required();
  bound->add_option("r", r, "Multiplicity bound r >= 2")->required();
  add_json(bound);

  CLI::App* analyze = app.add_subcommand("analyze", "Maximal line multiplicity and witness");
  analyze->add_option("poly", poly_path, "Polyline file")->required();
  add_json(analyze);

  CLI::App* stab = app.add_subcommand("stab", "Line meeting the polyline at least r+1 times");
  stab->add_option("poly", poly_path, "Polyline file")->required();
  stab->add_option("r", r, "Multiplicity bound r >= 2")->required();
  stab->add_option("K", body_path, "Convex polygon file")->required();
  add_json(stab);

  CLI::App* construct = app.add_subcommand("construct", "Build a verified extremal curve");
  construct->add_option("K", body_path, "Convex polygon file")->required();
  construct->add_option("r", r, "Multiplicity bound r >= 2")->required();
  construct->add_option("--eps", eps, "Allowed length shortfall")->default_val(0.1);
  construct->add_option("--seed", seed, "Random seed (default: KONVEX_SEED or 1)");
  construct->add_option("--samples", samples, "Samples per loop")->default_val(256);
  construct->add_option("--out", out, "Curve file; the sidecar goes to <out>.json");
  construct->add_option("--svg", svg_out, "Also render body and curve to this SVG");
  add_json(construct);

  CLI::App* verify = app.add_subcommand("verify", "Check a polyline against s(K, r)");
  verify->add_option("poly", poly_path, "Polyline file")->required();
  verify->add_option("K", body_path, "Convex polygon file")->required();
  verify->add_option("r", r, "Multiplicity bound r >= 2")->required();
  add_json(verify);

  CLI::App* fals = app.add_subcommand("falsify", "Random search for counterexamples");
  fals->add_option("K", body_path, "Convex polygon file")->required();
  fals->add_option("r", r, "Multiplicity bound r >= 2")->required();
  fals->add_option("--trials", trials, "Number of random polylines")->default_val(10000);
  fals->add_option("--seed", seed, "Random seed (default: KONVEX_SEED or 1)");
  add_json(fals);

  CLI::App* prop1 = app.add_subcommand("prop1", "Convexity versus three-point multiplicity");
  prop1->add_option("poly", poly_path, "Closed simple polyline file")->required();
  add_json(prop1);

  CLI::App* profile = app.add_subcommand("profile", "Projection profile as alpha,value CSV");
  profile->add_option("file", poly_path, "Polyline file (or polygon with --body)")->required();
  profile->add_flag("--body", as_body, "Treat the file as a convex polygon; emit width");
  profile->add_option("--samples", samples, "Angles in [0, 2pi)")->default_val(360);
  add_json(profile);

  CLI::App* svg = app.add_subcommand("svg", "Render a scene spec to SVG");
  svg->add_option("scene", poly_path, "Scene spec JSON file")->required();
  svg->add_option("--out", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    auto seed_or_default = [&](CLI::App* sub) {
      return sub->count("--seed") > 0 ? seed : default_seed();
    };
    if (*bound) return run_bound(opts, body_path, r);
    if (*analyze) return run_analyze(opts, poly_path);
    if (*stab) return run_stab(opts, poly_path, r, body_path);
    if (*construct) {
      return run_construct(opts, body_path, r, eps, seed_or_default(construct), samples, out,
                           svg_out);
    }
    if (*verify) return run_verify(opts, poly_path, body_path, r);
    if (*fals) return run_falsify(opts, body_path, r, trials, seed_or_default(fals));
    if (*prop1) return run_prop1(opts, poly_path);
    if (*profile) return run_profile(opts, poly_path, as_body, samples);
    if (*svg) return run_svg(poly_path, out);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitPrecondition;
}
