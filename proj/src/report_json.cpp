#include "konvex/report_json.hpp"

#include <cstdio>

namespace konvex {

using nlohmann::json;

std::string exact_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json to_json(const Line& line) {
  const Direction n = line.normal();
  return json{{"nx", exact_decimal(n.x)},
              {"ny", exact_decimal(n.y)},
              {"c", exact_decimal(line.offset())},
              {"exact",
               {{"a", std::to_string(line.a())},
                {"b", std::to_string(line.b())},
                {"c", int128_to_string(line.c())}}}};
}

Line line_from_json(const json& j) {
  if (j.contains("exact")) {
    const json& e = j.at("exact");
    const int128 a = parse_int128(e.at("a").get<std::string>());
    const int128 b = parse_int128(e.at("b").get<std::string>());
    const int128 limit = int128{1} << 62;
    if (a > limit || a < -limit || b > limit || b < -limit) {
      throw GeometryError("line coefficient out of range");
    }
    return Line::exact(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                       parse_int128(e.at("c").get<std::string>()));
  }
  auto number = [&](const char* key) {
    const json& v = j.at(key);
    return v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>();
  };
  return Line::from_normal(number("nx"), number("ny"), number("c"));
}

json to_json(const MultiplicityReport& report) {
  json components = json::array();
  for (const Component& c : report.components) {
    components.push_back({{"segments", {c.first_segment, c.last_segment}},
                          {"start", {c.start.x, c.start.y}},
                          {"end", {c.end.x, c.end.y}},
                          {"kind", c.is_point() ? "point" : "subsegment"}});
  }
  return json{{"count", report.count},
              {"witness", to_json(report.witness)},
              {"method", to_string(report.method)},
              {"components", components}};
}

json to_json(const ResolvedParams& params) {
  return json{{"r", params.r},
              {"epsilon", params.epsilon},
              {"samples_per_loop", params.samples_per_loop},
              {"inset", params.inset},
              {"gap", params.gap},
              {"seed", params.seed},
              {"max_retries", params.max_retries}};
}

json to_json(const ConstructionResult& result) {
  return json{{"achieved_length", result.achieved_length},
              {"target", result.target},
              {"epsilon", result.params.epsilon},
              {"vertices", result.curve.vertex_count()},
              {"loops", result.loops.size()},
              {"retries_used", result.retries_used},
              {"multiplicity", to_json(result.multiplicity)},
              {"params", to_json(result.params)},
              {"seed", result.params.seed}};
}

json to_json(const FalsificationStats& stats) {
  json violations = json::array();
  for (const auto& v : stats.violations) {
    violations.push_back({{"trial", v.trial},
                          {"seed", v.seed},
                          {"generator", v.generator},
                          {"length", v.length},
                          {"multiplicity", v.multiplicity}});
  }
  return json{{"trials", stats.trials},
              {"admissible", stats.admissible},
              {"max_ratio", stats.max_ratio},
              {"seed", stats.seed},
              {"generators", stats.generators},
              {"violations", violations}};
}

json to_json(const BoundReport& report) {
  json j{{"perimeter", report.perimeter},
         {"diameter", report.diameter},
         {"r", report.r},
         {"s", report.s},
         {"side", to_string(report.side)}};
  switch (report.side) {
    case BoundSide::upper_checked:
    case BoundSide::lower_realized:
      j["length"] = report.length;
      j["within_bound"] = report.within_bound;
      break;
    case BoundSide::falsification:
      break;
  }
  if (report.stabbing) j["stabbing"] = to_json(*report.stabbing);
  if (report.construction) j["construction"] = to_json(*report.construction);
  if (report.falsification) j["falsification"] = to_json(*report.falsification);
  return j;
}

json to_json(const Prop1Result& result) {
  return json{{"convex", result.convex},
              {"max_mult", result.max_mult},
              {"consistent", result.consistent},
              {"witness", to_json(result.witness)}};
}

}  // namespace konvex
