#pragma once

#include <json.hpp>

#include "konvex/extremal.hpp"
#include "konvex/line.hpp"
#include "konvex/stabbing.hpp"
#include "konvex/theorem.hpp"

namespace konvex {

// Lines carry the unit-normal view (nx, ny, c as decimal strings) for
// readers, plus the integer coefficients under "exact" for bit-exact replay.
nlohmann::json to_json(const Line& line);
Line line_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MultiplicityReport& report);
nlohmann::json to_json(const ResolvedParams& params);
// Sidecar for a constructed curve; the curve itself goes to the text format.
nlohmann::json to_json(const ConstructionResult& result);
nlohmann::json to_json(const FalsificationStats& stats);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const Prop1Result& result);

// Decimal rendering with 17 significant digits (round-trips a double).
std::string exact_decimal(double value);

}  // namespace konvex
