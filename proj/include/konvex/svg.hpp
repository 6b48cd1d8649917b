#pragma once

#include <optional>
#include <string>
#include <vector>

#include "konvex/geometry.hpp"
#include "konvex/line.hpp"

namespace konvex {

struct LabeledCurve {
  std::string label;
  Polyline curve;
};

struct LabeledLine {
  std::string label;
  Line line;
};

struct Annotation {
  Vec2 position;
  std::string text;
};

struct SceneDocument {
  std::optional<ConvexPolygon> body;
  std::vector<LabeledCurve> curves;
  std::vector<LabeledLine> lines;
  std::vector<Annotation> annotations;

  bool empty() const {
    return !body && curves.empty() && lines.empty() && annotations.empty();
  }
};

// Standalone SVG. Lines are clipped to the scene bounding box padded by 10%.
// Numbers use 9 significant digits, so identical scenes give identical bytes.
// Throws GeometryError for an empty scene or duplicate labels.
std::string render_svg(const SceneDocument& scene);
void emit_svg(const SceneDocument& scene, const std::string& path);

}  // namespace konvex
