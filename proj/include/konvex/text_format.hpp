#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "konvex/geometry.hpp"

namespace konvex {

// Malformed geometry text; line() is 1-based, 0 when not tied to a line.
class ParseError : public GeometryError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : GeometryError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-based geometry text:
//
//   # comment
//   closed            (or: open)
//   0 0
//   1 0.5
//
// Blank lines and everything after '#' are ignored. Coordinates are exact
// decimals on the 1e-9 grid.
Polyline parse_polyline(std::string_view text);
// The header is optional for polygons; `open` is rejected. The ring must be
// counterclockwise and strictly convex.
ConvexPolygon parse_polygon(std::string_view text);

std::string serialize(const Polyline& poly);
std::string serialize(const ConvexPolygon& body);

Polyline read_polyline_file(const std::string& path);
ConvexPolygon read_polygon_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace konvex
