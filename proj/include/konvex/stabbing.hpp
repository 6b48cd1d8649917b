#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "konvex/geometry.hpp"
#include "konvex/line.hpp"

namespace konvex {

enum class Method { enumeration, oracle, witness_sweep };
std::string to_string(Method method);

// One connected piece of (line ∩ polyline): a point or a sub-segment of the line.
struct Component {
  std::size_t first_segment = 0;  // smallest contributing segment index
  std::size_t last_segment = 0;   // largest contributing segment index
  Vec2 start;
  Vec2 end;
  bool is_point() const { return start.x == end.x && start.y == end.y; }
};

struct MultiplicityReport {
  std::size_t count = 0;
  Line witness = Line::exact(1, 0, 0);
  Method method = Method::enumeration;
  std::vector<Component> components;
};

class BoundNotExceeded : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of connected components of line ∩ image(poly), decided exactly.
MultiplicityReport line_multiplicity(const Line& line, const Polyline& poly);

// Segments whose endpoints lie strictly on opposite sides of the line.
std::size_t proper_crossings(const Line& line, const Polyline& poly);

// Best line over the candidate family: vertex-pair lines, their small
// translations and rotations, and 360-direction fans through every vertex.
MultiplicityReport max_line_multiplicity(const Polyline& poly);

// Best of `trials` random lines (direction uniform on a half turn, offset
// uniform over the bounding-box projection). Deterministic per seed.
MultiplicityReport random_line_oracle(const Polyline& poly, std::size_t trials,
                                      std::uint64_t seed);

// Slack of the averaging inequality at `angle`:
//   even r: l(a) - r k(a)
//   odd r:  l(a) - (r - 1) k(a) - l0 |cos(a - a0)|
double projection_margin(const Polyline& poly, int r, const ConvexPolygon& body, double angle);

// An angle with strictly positive margin, if one is found. Throws
// GeometryError when a vertex of poly lies outside body, or r < 2.
std::optional<double> projection_witness(const Polyline& poly, int r, const ConvexPolygon& body);

// Line perpendicular to `angle` through the midpoint of the leftmost cell of
// maximal coverage depth among the projected segments.
struct SweepResult {
  Line line;
  std::size_t depth = 0;
};
std::optional<SweepResult> deepest_perpendicular_line(const Polyline& poly, double angle);

// A line meeting poly in at least r + 1 components. Throws BoundNotExceeded
// when polyline_length(poly) <= s_bound(body, r) and VerificationFailure if
// no such line can be produced.
MultiplicityReport find_stabbing_line(const Polyline& poly, int r, const ConvexPolygon& body);

}  // namespace konvex
