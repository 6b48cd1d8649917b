#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "konvex/geometry.hpp"
#include "konvex/line.hpp"
#include "konvex/text_format.hpp"

namespace konvex::testing {

inline ConvexPolygon unit_square() { return parse_polygon("0 0\n1 0\n1 1\n0 1\n"); }

inline Polyline square_ring() { return parse_polyline("closed\n0 0\n1 0\n1 1\n0 1\n"); }

inline Point pt(double x, double y) { return Point::from_double(x, y); }

// Convex polygon with exactly n vertices on an ellipse of random shape.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> axis(0.3, 2.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  for (;;) {
    const double ax = axis(rng), ay = axis(rng), tilt = angle(rng);
    const double cx = shift(rng), cy = shift(rng);
    std::vector<double> angles(n);
    for (double& a : angles) a = angle(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Point> pts;
    for (double a : angles) {
      const double ex = ax * std::cos(a), ey = ay * std::sin(a);
      pts.push_back(Point::from_double(cx + ex * std::cos(tilt) - ey * std::sin(tilt),
                                       cy + ex * std::sin(tilt) + ey * std::cos(tilt)));
    }
    try {
      ConvexPolygon hull = convex_hull(pts);
      if (hull.size() == n) return hull;
    } catch (const GeometryError&) {
    }
  }
}

// Open polyline with `segments` segments, vertices uniform in [-1, 1]^2.
inline Polyline random_polyline(std::mt19937_64& rng, std::size_t segments) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts{Point::from_double(u(rng), u(rng))};
  while (pts.size() < segments + 1) {
    const Point p = Point::from_double(u(rng), u(rng));
    if (p != pts.back()) pts.push_back(p);
  }
  return Polyline(std::move(pts), false);
}

// Uniform grid point inside the body (rejection sampling, exact test).
inline Point random_point_in(std::mt19937_64& rng, const ConvexPolygon& body) {
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (const Point& p : body.ring()) {
    min_x = std::min(min_x, p.xd());
    max_x = std::max(max_x, p.xd());
    min_y = std::min(min_y, p.yd());
    max_y = std::max(max_y, p.yd());
  }
  std::uniform_real_distribution<double> ux(min_x, max_x), uy(min_y, max_y);
  for (;;) {
    const Point p = Point::from_double(ux(rng), uy(rng));
    if (contains(body, p) == Location::interior) return p;
  }
}

// O(n^2) diameter oracle in exact squared grid units.
inline int128 brute_force_diameter_squared(const std::vector<Point>& pts) {
  int128 best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, squared_distance(pts[i], pts[j]));
    }
  }
  return best;
}

// Random line through the box [-2, 2]^2 given by two random grid points.
inline Line random_line(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const Point p = Point::from_double(u(rng), u(rng));
    const Point q = Point::from_double(u(rng), u(rng));
    if (p != q) return Line::through(p, q);
  }
}

// Counts, in floating point, segments whose ends lie strictly on opposite
// sides of the line. Only meaningful away from vertices.
inline std::size_t float_crossings(const Line& line, const Polyline& poly) {
  const Direction n = line.normal();
  const double c = line.offset();
  std::size_t count = 0;
  for (std::size_t i = 0; i < poly.segment_count(); ++i) {
    const Segment s = poly.segment(i);
    const double v0 = n.x * s.a.xd() + n.y * s.a.yd() - c;
    const double v1 = n.x * s.b.xd() + n.y * s.b.yd() - c;
    if ((v0 < 0) != (v1 < 0)) ++count;
  }
  return count;
}

// Smallest |signed distance| from a vertex to the line, in length units.
inline double vertex_clearance(const Line& line, const Polyline& poly) {
  const Direction n = line.normal();
  const double c = line.offset();
  double best = 1e300;
  for (const Point& p : poly.vertices()) best = std::min(best, std::abs(n.x * p.xd() + n.y * p.yd() - c));
  return best;
}

}  // namespace konvex::testing
