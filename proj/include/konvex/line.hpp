#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "konvex/geometry.hpp"

namespace konvex {

std::string int128_to_string(int128 value);
int128 parse_int128(std::string_view text);

// Straight line a*X + b*Y = c over grid coordinates (X = x * kScale).
// Coefficients are integers, so incidence and side tests are exact; the
// unit-normal form (nx, ny, offset) is a derived floating-point view.
class Line {
 public:
  // Throws GeometryError for a zero normal or out-of-range coefficients.
  static Line exact(std::int64_t a, std::int64_t b, int128 c);
  // Line through two distinct points; the left side of p->q is positive.
  static Line through(const Point& p, const Point& q);
  // Locus nx*x + ny*y = offset in length units. The normal is normalized and
  // quantized to 2^-40 before use, so the stored line is exactly representable.
  static Line from_normal(double nx, double ny, double offset);
  static Line from_normal(Direction normal, double offset) {
    return from_normal(normal.x, normal.y, offset);
  }
  // Line through p with the given (quantized) normal direction.
  static Line through_with_normal(const Point& p, Direction normal);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  int128 c() const { return c_; }

  // Signed value a*X + b*Y - c; zero exactly on the line.
  int128 evaluate(const Point& p) const {
    return static_cast<int128>(a_) * p.x + static_cast<int128>(b_) * p.y - c_;
  }
  int side(const Point& p) const {
    const int128 v = evaluate(p);
    return (v > 0) - (v < 0);
  }
  // Position of the orthogonal projection of p along the line direction (-b, a),
  // scaled by |(a, b)|.
  int128 along(const Point& p) const {
    return -static_cast<int128>(b_) * p.x + static_cast<int128>(a_) * p.y;
  }

  Direction normal() const;
  double normal_x() const { return normal().x; }
  double normal_y() const { return normal().y; }
  // Signed distance of the line from the origin along normal(), length units.
  double offset() const;

  // Parallel copy shifted by `distance` (length units) along normal().
  Line translated(double distance) const;
  // Copy rotated by `radians` about the midpoint of p and q.
  Line rotated_about_midpoint(double radians, const Point& p, const Point& q) const;

  friend bool operator==(const Line&, const Line&) = default;

 private:
  Line(std::int64_t a, std::int64_t b, int128 c) : a_(a), b_(b), c_(c) {}

  std::int64_t a_;
  std::int64_t b_;
  int128 c_;
};

}  // namespace konvex
