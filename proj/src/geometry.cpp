#include "konvex/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace konvex {

namespace {

int half_plane(std::int64_t dx, std::int64_t dy) {
  return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
}

}  // namespace

int128 squared_distance(const Point& a, const Point& b) {
  const int128 dx = static_cast<int128>(b.x) - a.x;
  const int128 dy = static_cast<int128>(b.y) - a.y;
  return dx * dx + dy * dy;
}

double distance(const Point& a, const Point& b) {
  const double dx = static_cast<double>(b.x - a.x);
  const double dy = static_cast<double>(b.y - a.y);
  return std::hypot(dx, dy) / static_cast<double>(kScale);
}

Polyline::Polyline(std::vector<Point> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  if (vertices_.size() < 2) {
    throw GeometryError("polyline needs at least two vertices");
  }
  if (closed_ && vertices_.size() < 3) {
    throw GeometryError("closed polyline needs at least three vertices");
  }
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i + 1]) {
      throw GeometryError("polyline has repeated consecutive vertex at index " +
                          std::to_string(i + 1));
    }
  }
  if (closed_ && vertices_.front() == vertices_.back()) {
    throw GeometryError("closed polyline must not repeat its first vertex");
  }
}

Segment Polyline::segment(std::size_t i) const {
  const std::size_t j = (i + 1) % vertices_.size();
  return Segment{vertices_[i], vertices_[j]};
}

int128 cross(const Point& p, const Point& q, const Point& r) {
  const int128 ux = static_cast<int128>(q.x) - p.x;
  const int128 uy = static_cast<int128>(q.y) - p.y;
  const int128 vx = static_cast<int128>(r.x) - p.x;
  const int128 vy = static_cast<int128>(r.y) - p.y;
  return ux * vy - uy * vx;
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const int128 c = cross(p, q, r);
  if (c > 0) return Orientation::left;
  if (c < 0) return Orientation::right;
  return Orientation::collinear;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> ring) : ring_(std::move(ring)) {
  const std::size_t n = ring_.size();
  if (n < 3) throw DegenerateError("convex polygon needs at least three vertices");

  int wraps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring_[i];
    const Point& b = ring_[(i + 1) % n];
    const Point& c = ring_[(i + 2) % n];
    switch (orientation(a, b, c)) {
      case Orientation::left:
        break;
      case Orientation::collinear:
        throw DegenerateError("convex polygon has collinear vertices at index " +
                              std::to_string((i + 1) % n));
      case Orientation::right:
        throw GeometryError("convex polygon turns right at index " +
                            std::to_string((i + 1) % n) +
                            " (ring must be convex and counterclockwise)");
    }
    const int h0 = half_plane(b.x - a.x, b.y - a.y);
    const int h1 = half_plane(c.x - b.x, c.y - b.y);
    if (h0 == 1 && h1 == 0) ++wraps;
  }
  if (wraps != 1) {
    throw GeometryError("convex polygon ring winds more than once");
  }
}

Direction Direction::from_angle(double radians) {
  return Direction{std::cos(radians), std::sin(radians)};
}

double Direction::angle() const {
  const double a = std::atan2(y, x);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

double polyline_length(const Polyline& poly) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.segment_count(); ++i) {
    total += poly.segment(i).length();
  }
  return total;
}

double perimeter(const ConvexPolygon& body) {
  return polyline_length(body.boundary());
}

Diameter diameter(const ConvexPolygon& body) {
  const auto& ring = body.ring();
  const std::size_t n = ring.size();
  Diameter best;
  auto consider = [&](std::size_t i, std::size_t j) {
    const int128 d2 = squared_distance(ring[i % n], ring[j % n]);
    if (d2 > best.squared) {
      best.squared = d2;
      best.a = ring[i % n];
      best.b = ring[j % n];
    }
  };

  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    while (cross(p, q, ring[(j + 1) % n]) > cross(p, q, ring[j % n])) {
      j = (j + 1) % n;
    }
    consider(i, j);
    consider(i + 1, j);
    // Edge parallel to the supporting edge at j: both of its ends are antipodal.
    if (cross(p, q, ring[(j + 1) % n]) == cross(p, q, ring[j % n])) {
      consider(i, j + 1);
      consider(i + 1, j + 1);
    }
  }
  best.length = distance(best.a, best.b);
  return best;
}

double width(const ConvexPolygon& body, Direction dir) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const Point& v : body.ring()) {
    const double t = dir.x * v.xd() + dir.y * v.yd();
    if (first) {
      lo = hi = t;
      first = false;
    } else {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  return hi - lo;
}

double width(const ConvexPolygon& body, double angle) {
  return width(body, Direction::from_angle(angle));
}

Location contains(const ConvexPolygon& body, const Point& p) {
  const auto& ring = body.ring();
  bool on_edge_line = false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const int128 c = cross(ring[i], ring[(i + 1) % ring.size()], p);
    if (c < 0) return Location::exterior;
    if (c == 0) on_edge_line = true;
  }
  return on_edge_line ? Location::boundary : Location::interior;
}

ConvexPolygon convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateError("convex hull of fewer than three distinct points");

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    const Point& p = pts[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateError("all points are collinear");
  return ConvexPolygon(std::move(hull));
}

Vec2 centroid(const ConvexPolygon& body) {
  const auto& ring = body.ring();
  const double ox = ring[0].xd();
  const double oy = ring[0].yd();
  double area2 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % ring.size()];
    const double ax = a.xd() - ox, ay = a.yd() - oy;
    const double bx = b.xd() - ox, by = b.yd() - oy;
    const double w = ax * by - bx * ay;
    area2 += w;
    cx += (ax + bx) * w;
    cy += (ay + by) * w;
  }
  return Vec2{ox + cx / (3.0 * area2), oy + cy / (3.0 * area2)};
}

}  // namespace konvex
