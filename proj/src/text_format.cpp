#include "konvex/text_format.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace konvex {

namespace {

struct ParsedText {
  std::optional<bool> closed;
  std::vector<Point> points;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

ParsedText parse_lines(std::string_view text) {
  ParsedText out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line == "open" || line == "closed") {
      if (out.closed.has_value() || !out.points.empty()) {
        throw ParseError(line_no, "header must come once, before any coordinates");
      }
      out.closed = line == "closed";
      continue;
    }

    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) throw ParseError(line_no, "expected 'x y'");
    const std::string_view xs = line.substr(0, split);
    const std::string_view ys = trim(line.substr(split));
    if (ys.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two coordinates");
    }
    try {
      out.points.push_back(Point::from_decimal(xs, ys));
    } catch (const GeometryError& e) {
      throw ParseError(line_no, e.what());
    }
    if (pos > text.size()) break;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeometryError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string body_lines(const std::vector<Point>& points) {
  std::string out;
  for (const Point& p : points) {
    out += format_coordinate(p.x);
    out += ' ';
    out += format_coordinate(p.y);
    out += '\n';
  }
  return out;
}

}  // namespace

Polyline parse_polyline(std::string_view text) {
  ParsedText parsed = parse_lines(text);
  if (!parsed.closed.has_value()) throw ParseError(0, "missing 'open' or 'closed' header");
  try {
    return Polyline(std::move(parsed.points), *parsed.closed);
  } catch (const ParseError&) {
    throw;
  } catch (const GeometryError& e) {
    throw ParseError(0, e.what());
  }
}

ConvexPolygon parse_polygon(std::string_view text) {
  ParsedText parsed = parse_lines(text);
  if (parsed.closed.has_value() && !*parsed.closed) {
    throw ParseError(0, "a convex polygon must be 'closed'");
  }
  return ConvexPolygon(std::move(parsed.points));
}

std::string serialize(const Polyline& poly) {
  return std::string(poly.closed() ? "closed\n" : "open\n") + body_lines(poly.vertices());
}

std::string serialize(const ConvexPolygon& body) {
  return "closed\n" + body_lines(body.ring());
}

Polyline read_polyline_file(const std::string& path) { return parse_polyline(read_file(path)); }

ConvexPolygon read_polygon_file(const std::string& path) {
  return parse_polygon(read_file(path));
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw GeometryError("write to '" + path + "' failed");
}

}  // namespace konvex
