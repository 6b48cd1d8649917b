#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace konvex {

__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

// Coordinates live on a fixed decimal grid: one unit is 1e-9 of a length unit.
inline constexpr std::int64_t kScale = 1'000'000'000;
inline constexpr int kScaleDigits = 9;
// Largest admissible |coordinate|, in scaled units (1e6 length units).
inline constexpr std::int64_t kMaxScaled = 1'000'000 * kScale;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input is valid syntactically but geometrically degenerate
// (all-collinear hull, collinear triple in a convex ring, ...).
class DegenerateError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Parses a decimal literal ("-0.25", "3", "1e-9") into grid units.
// Throws GeometryError if the value is not exactly representable on the grid
// or is out of range.
std::int64_t parse_coordinate(std::string_view text);

// Canonical decimal rendering of a grid value: no exponent, no trailing zeros.
std::string format_coordinate(std::int64_t scaled);

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  static Point from_scaled(std::int64_t x, std::int64_t y);
  static Point from_decimal(std::string_view x, std::string_view y);
  // Rounds to the nearest grid point.
  static Point from_double(double x, double y);

  double xd() const { return static_cast<double>(x) / static_cast<double>(kScale); }
  double yd() const { return static_cast<double>(y) / static_cast<double>(kScale); }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Exact squared distance in grid units squared.
int128 squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

struct Segment {
  Point a;
  Point b;

  bool degenerate() const { return a == b; }
  double length() const { return distance(a, b); }
};

// Broken line. Closed polylines store each vertex once; the closing segment
// runs from the last vertex back to the first.
class Polyline {
 public:
  Polyline(std::vector<Point> vertices, bool closed);

  const std::vector<Point>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t segment_count() const {
    return closed_ ? vertices_.size() : vertices_.size() - 1;
  }
  Segment segment(std::size_t i) const;

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point> vertices_;
  bool closed_;
};

enum class Orientation { right = -1, collinear = 0, left = 1 };

// (q - p) x (r - p), exact.
int128 cross(const Point& p, const Point& q, const Point& r);
Orientation orientation(const Point& p, const Point& q, const Point& r);

// Counterclockwise ring in which every consecutive triple turns strictly left
// and the ring winds exactly once.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> ring);

  const std::vector<Point>& ring() const { return ring_; }
  std::size_t size() const { return ring_.size(); }
  const Point& vertex(std::size_t i) const { return ring_[i % ring_.size()]; }
  Polyline boundary() const { return Polyline(ring_, true); }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  std::vector<Point> ring_;
};

// Unit vector standing in for an angle.
struct Direction {
  double x = 1.0;
  double y = 0.0;

  static Direction from_angle(double radians);
  double angle() const;
};

double polyline_length(const Polyline& poly);
double perimeter(const ConvexPolygon& body);

struct Diameter {
  double length = 0.0;
  int128 squared = 0;
  Point a;
  Point b;
};

// Rotating calipers over the antipodal vertex pairs.
Diameter diameter(const ConvexPolygon& body);

double width(const ConvexPolygon& body, double angle);
double width(const ConvexPolygon& body, Direction dir);

enum class Location { interior, boundary, exterior };
Location contains(const ConvexPolygon& body, const Point& p);

// Andrew's monotone chain; collinear points on hull edges are dropped.
// Throws DegenerateError when fewer than three non-collinear points exist.
ConvexPolygon convex_hull(std::span<const Point> points);

// Area centroid, in length units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};
Vec2 centroid(const ConvexPolygon& body);

}  // namespace konvex
