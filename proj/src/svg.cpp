#include "konvex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "konvex/text_format.hpp"

namespace konvex {

namespace {

constexpr double kCanvas = 800.0;
constexpr const char* kPalette[] = {"#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98",
                                    "#117a65"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

struct Frame {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  bool empty() const { return !(min_x <= max_x); }
  double scale() const { return kCanvas / std::max(max_x - min_x, max_y - min_y); }
  double px(double x) const { return (x - min_x) * scale(); }
  double py(double y) const { return (max_y - y) * scale(); }
};

Frame padded_frame(const SceneDocument& scene) {
  Frame f;
  if (scene.body) {
    for (const Point& p : scene.body->ring()) f.add(p.xd(), p.yd());
  }
  for (const auto& c : scene.curves) {
    for (const Point& p : c.curve.vertices()) f.add(p.xd(), p.yd());
  }
  for (const auto& a : scene.annotations) f.add(a.position.x, a.position.y);
  if (f.empty()) {
    // Lines only: frame the foot of the first line.
    const Line& line = scene.lines.front().line;
    const Direction n = line.normal();
    const double c = line.offset();
    f.add(n.x * c - 1.0, n.y * c - 1.0);
    f.add(n.x * c + 1.0, n.y * c + 1.0);
  }
  const double size = std::max({f.max_x - f.min_x, f.max_y - f.min_y, 1e-9});
  const double cx = 0.5 * (f.min_x + f.max_x);
  const double cy = 0.5 * (f.min_y + f.max_y);
  const double half = 0.5 * size * 1.2;
  Frame padded;
  padded.add(cx - half, cy - half);
  padded.add(cx + half, cy + half);
  return padded;
}

// Liang-Barsky clip of the infinite line to the frame.
std::optional<std::pair<Vec2, Vec2>> clip(const Line& line, const Frame& f) {
  const Direction n = line.normal();
  const double c = line.offset();
  const Vec2 foot{n.x * c, n.y * c};
  const Vec2 dir{-n.y, n.x};
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  auto bound = [&](double p, double lo, double hi, double d) {
    if (d == 0.0) return lo <= p && p <= hi;
    double a = (lo - p) / d;
    double b = (hi - p) / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return t0 <= t1;
  };
  if (!bound(foot.x, f.min_x, f.max_x, dir.x) || !bound(foot.y, f.min_y, f.max_y, dir.y)) {
    return std::nullopt;
  }
  return std::pair{Vec2{foot.x + t0 * dir.x, foot.y + t0 * dir.y},
                   Vec2{foot.x + t1 * dir.x, foot.y + t1 * dir.y}};
}

std::string point_list(const std::vector<Point>& pts, const Frame& f) {
  std::string out;
  for (const Point& p : pts) {
    if (!out.empty()) out += ' ';
    out += num(f.px(p.xd())) + ',' + num(f.py(p.yd()));
  }
  return out;
}

}  // namespace

std::string render_svg(const SceneDocument& scene) {
  if (scene.empty()) throw GeometryError("cannot render an empty scene");
  std::set<std::string> labels;
  for (const auto& c : scene.curves) {
    if (!labels.insert(c.label).second) throw GeometryError("duplicate label '" + c.label + "'");
  }
  for (const auto& l : scene.lines) {
    if (!labels.insert(l.label).second) throw GeometryError("duplicate label '" + l.label + "'");
  }

  const Frame f = padded_frame(scene);
  const double size = f.px(f.max_x);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\""
      << num(size) << "\" viewBox=\"0 0 " << num(size) << ' ' << num(size) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" fill=\"#ffffff\"/>\n";

  if (scene.body) {
    svg << "<polygon class=\"body\" points=\"" << point_list(scene.body->ring(), f)
        << "\" fill=\"#e8eef6\" stroke=\"#34495e\" stroke-width=\"1.5\"/>\n";
  }
  std::size_t color = 0;
  for (const auto& c : scene.curves) {
    const char* stroke = kPalette[color++ % std::size(kPalette)];
    svg << "<" << (c.curve.closed() ? "polygon" : "polyline") << " class=\"curve\" id=\""
        << escape(c.label) << "\" points=\"" << point_list(c.curve.vertices(), f)
        << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1\" stroke-linejoin=\"round\"><title>" << escape(c.label)
        << "</title></" << (c.curve.closed() ? "polygon" : "polyline") << ">\n";
  }
  for (const auto& l : scene.lines) {
    const auto seg = clip(l.line, f);
    if (!seg) continue;
    svg << "<line class=\"line\" id=\"" << escape(l.label) << "\" x1=\"" << num(f.px(seg->first.x))
        << "\" y1=\"" << num(f.py(seg->first.y)) << "\" x2=\"" << num(f.px(seg->second.x))
        << "\" y2=\"" << num(f.py(seg->second.y))
        << "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"><title>"
        << escape(l.label) << "</title></line>\n";
  }
  for (const auto& a : scene.annotations) {
    svg << "<text x=\"" << num(f.px(a.position.x)) << "\" y=\"" << num(f.py(a.position.y))
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << escape(a.text) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const SceneDocument& scene, const std::string& path) {
  write_text_file(path, render_svg(scene));
}

}  // namespace konvex
