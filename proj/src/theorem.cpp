#include "konvex/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace konvex {

namespace {

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_inside(const Polyline& poly, const ConvexPolygon& body) {
  for (std::size_t i = 0; i < poly.vertex_count(); ++i) {
    if (contains(body, poly.vertices()[i]) == Location::exterior) {
      throw GeometryError("vertex " + std::to_string(i) + " lies outside the body");
    }
  }
}

bool on_segment(const Point& p, const Point& q, const Point& x) {
  return std::min(p.x, q.x) <= x.x && x.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= x.y &&
         x.y <= std::max(p.y, q.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Orientation o1 = orientation(a, b, c);
  const Orientation o2 = orientation(a, b, d);
  const Orientation o3 = orientation(c, d, a);
  const Orientation o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != Orientation::collinear && o2 != Orientation::collinear &&
      o3 != Orientation::collinear && o4 != Orientation::collinear) {
    return true;
  }
  return (o1 == Orientation::collinear && on_segment(a, b, c)) ||
         (o2 == Orientation::collinear && on_segment(a, b, d)) ||
         (o3 == Orientation::collinear && on_segment(c, d, a)) ||
         (o4 == Orientation::collinear && on_segment(c, d, b));
}

// Random simple polylines for falsify(); each draws only from `rng`. The
// theorem counts distinct points, so it only holds for injective curves: a
// ring traversed twice has twice the perimeter yet meets every line twice.
// Every generator therefore redraws until its output is simple.
class TrialGenerator {
 public:
  explicit TrialGenerator(const ConvexPolygon& body) : body_(body), center_(centroid(body)) {
    const auto& ring = body.ring();
    min_x_ = max_x_ = ring[0].xd();
    min_y_ = max_y_ = ring[0].yd();
    for (const Point& p : ring) {
      min_x_ = std::min(min_x_, p.xd());
      max_x_ = std::max(max_x_, p.xd());
      min_y_ = std::min(min_y_, p.yd());
      max_y_ = std::max(max_y_, p.yd());
    }
  }

  Point random_point(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> ux(min_x_, max_x_);
    std::uniform_real_distribution<double> uy(min_y_, max_y_);
    for (;;) {
      const Point p = Point::from_double(ux(rng), uy(rng));
      if (contains(body_, p) != Location::exterior) return p;
    }
  }

  // A few uniform points joined in order.
  Polyline random_walk(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> count(2, 8);
    for (int attempt = 0;; ++attempt) {
      std::vector<Point> pts;
      const int n = attempt < kRedraws ? count(rng) : 2;
      while (static_cast<int>(pts.size()) < n) {
        const Point p = random_point(rng);
        if (pts.empty() || pts.back() != p) pts.push_back(p);
      }
      Polyline poly(std::move(pts), false);
      if (is_simple(poly)) return poly;
    }
  }

  // Inward spiral: half a turn to two and a half turns, radius shrinking
  // from a random fraction of the boundary distance.
  Polyline spiral(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> turns(0.5, 2.5);
    std::uniform_int_distribution<int> per_turn(6, 40);
    std::uniform_real_distribution<double> outer(0.6, 1.0);
    std::uniform_real_distribution<double> inner(0.05, 0.9);
    return draw_spiral(rng, [&](std::mt19937_64& g) {
      const double r0 = outer(g);
      return SpiralShape{turns(g), per_turn(g), r0, r0 * inner(g)};
    });
  }

  // Tight spiral hugging the boundary: long, and hard to stab few times.
  Polyline near_boundary(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> turns(0.8, 2.5);
    std::uniform_int_distribution<int> per_turn(8, 48);
    std::uniform_real_distribution<double> outer(0.97, 0.999);
    std::uniform_real_distribution<double> drop(0.005, 0.05);
    return draw_spiral(rng, [&](std::mt19937_64& g) {
      const double r0 = outer(g);
      return SpiralShape{turns(g), per_turn(g), r0, r0 - drop(g)};
    });
  }

  // Builder output with coarse, randomized parameters. Odd outputs end on a
  // vertex of their last loop; that end is pulled back to the middle of the
  // final segment so the sample is simple.
  Polyline extremal(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> order(2, 5);
    std::uniform_real_distribution<double> slack(0.05, 0.5);
    ConstructionParams params;
    params.r = order(rng);
    params.epsilon = slack(rng) * s_bound(body_, params.r);
    params.samples_per_loop = 16;
    params.seed = rng();
    params.max_retries = 2;
    Polyline curve = build_extremal_curve(body_, params).curve;
    if (params.r % 2 == 1) {
      std::vector<Point> pts = curve.vertices();
      const Point& a = pts[pts.size() - 2];
      pts.back() = Point::from_scaled(a.x + (pts.back().x - a.x) / 2, a.y + (pts.back().y - a.y) / 2);
      curve = Polyline(std::move(pts), false);
    }
    if (!is_simple(curve)) throw GeometryError("builder output is not simple");
    return curve;
  }

 private:
  static constexpr int kRedraws = 32;

  struct SpiralShape {
    double turns;
    int per_turn;
    double r0;
    double r1;
  };

  // Distance from the centroid to the boundary along `angle`.
  double boundary_reach(double angle) const {
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    double best = std::numeric_limits<double>::infinity();
    const auto& ring = body_.ring();
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point& a = ring[i];
      const Point& b = body_.vertex(i + 1);
      const double ex = b.xd() - a.xd();
      const double ey = b.yd() - a.yd();
      const double den = dx * ey - dy * ex;
      if (den == 0.0) continue;
      const double wx = a.xd() - center_.x;
      const double wy = a.yd() - center_.y;
      const double t = (wx * ey - wy * ex) / den;
      const double u = (wx * dy - wy * dx) / den;
      if (t > 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12) best = std::min(best, t);
    }
    return best;
  }

  template <typename Shape>
  Polyline draw_spiral(std::mt19937_64& rng, Shape&& shape) const {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (int attempt = 0;; ++attempt) {
      SpiralShape sh = shape(rng);
      // Under one turn with monotone angle the path is always simple.
      if (attempt >= kRedraws) sh.turns = 0.9;
      const double theta0 = phase(rng);
      const int n = std::max(2, static_cast<int>(std::ceil(sh.turns * sh.per_turn)));
      std::vector<Point> pts;
      for (int i = 0; i <= n; ++i) {
        const double u = (static_cast<double>(i) + (i > 0 && i < n ? jitter(rng) : 0.0)) / n;
        const double theta = theta0 + 2.0 * M_PI * sh.turns * u;
        const double rho = (sh.r0 + (sh.r1 - sh.r0) * u) * boundary_reach(theta);
        const Point p = Point::from_double(center_.x + rho * std::cos(theta),
                                           center_.y + rho * std::sin(theta));
        if (pts.empty() || pts.back() != p) pts.push_back(p);
      }
      if (pts.size() < 2) continue;
      Polyline poly(std::move(pts), false);
      if (is_simple(poly)) return poly;
    }
  }

  const ConvexPolygon& body_;
  Vec2 center_;
  double min_x_ = 0.0, max_x_ = 0.0, min_y_ = 0.0, max_y_ = 0.0;
};

}  // namespace

double s_bound(const ConvexPolygon& body, int r) {
  if (r < 2) throw GeometryError("r must be an integer greater than 1");
  const double p = perimeter(body);
  if (r % 2 == 0) return r * p / 2.0;
  return (r - 1) * p / 2.0 + diameter(body).length;
}

std::string to_string(BoundSide side) {
  switch (side) {
    case BoundSide::upper_checked:
      return "upper_checked";
    case BoundSide::lower_realized:
      return "lower_realized";
    case BoundSide::falsification:
      return "falsification";
  }
  return "unknown";
}

namespace {

BoundReport base_report(const ConvexPolygon& body, int r, BoundSide side) {
  BoundReport report;
  report.perimeter = perimeter(body);
  report.diameter = diameter(body).length;
  report.r = r;
  report.s = s_bound(body, r);
  report.side = side;
  return report;
}

}  // namespace

BoundReport check_upper_bound(const Polyline& poly, const ConvexPolygon& body, int r) {
  require_inside(poly, body);
  BoundReport report = base_report(body, r, BoundSide::upper_checked);
  report.length = polyline_length(poly);
  report.within_bound = !(report.length > report.s);
  if (!report.within_bound) report.stabbing = find_stabbing_line(poly, r, body);
  return report;
}

BoundReport realize_lower_bound(const ConvexPolygon& body, const ConstructionParams& params) {
  BoundReport report = base_report(body, params.r, BoundSide::lower_realized);
  report.construction = build_extremal_curve(body, params);
  report.length = report.construction->achieved_length;
  report.within_bound = !(report.length > report.s);
  return report;
}

BoundReport falsify(const ConvexPolygon& body, int r, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw GeometryError("falsify needs at least one trial");
  BoundReport report = base_report(body, r, BoundSide::falsification);
  FalsificationStats stats;
  stats.trials = trials;
  stats.seed = seed;

  const TrialGenerator generator(body);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed, t);
    std::mt19937_64 rng(s);
    const std::uint64_t pick = rng() % 100;
    std::string kind;
    std::optional<Polyline> poly;
    try {
      if (pick < 2) {
        kind = "extremal";
        poly = generator.extremal(rng);
      } else if (pick < 35) {
        kind = "near_boundary";
        poly = generator.near_boundary(rng);
      } else if (pick < 70) {
        kind = "spiral";
        poly = generator.spiral(rng);
      } else {
        kind = "random_walk";
        poly = generator.random_walk(rng);
      }
    } catch (const std::exception&) {
      kind = "random_walk";
      poly = generator.random_walk(rng);
    }
    ++stats.generators[kind];

    const std::size_t mult = max_line_multiplicity(*poly).count;
    if (mult > static_cast<std::size_t>(r)) continue;
    ++stats.admissible;
    const double length = polyline_length(*poly);
    stats.max_ratio = std::max(stats.max_ratio, length / report.s);
    if (length > report.s) {
      stats.violations.push_back(FalsificationViolation{t, s, kind, length, mult});
    }
  }
  report.falsification = std::move(stats);
  return report;
}

bool is_simple(const Polyline& poly) {
  const std::size_t m = poly.segment_count();
  for (std::size_t i = 0; i < m; ++i) {
    const Segment si = poly.segment(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const Segment sj = poly.segment(j);
      const bool next = j == i + 1;
      const bool wrap = poly.closed() && i == 0 && j == m - 1;
      if (next || wrap) {
        // Adjacent segments share one vertex; they must not fold back onto each other.
        const Point& shared = next ? si.b : si.a;
        const Point& p = next ? si.a : si.b;
        const Point& q = next ? sj.b : sj.a;
        if (orientation(p, shared, q) == Orientation::collinear) {
          const int128 dot = (static_cast<int128>(p.x) - shared.x) * (q.x - shared.x) +
                             (static_cast<int128>(p.y) - shared.y) * (q.y - shared.y);
          if (dot > 0) return false;
        }
        continue;
      }
      if (segments_intersect(si.a, si.b, sj.a, sj.b)) return false;
    }
  }
  return true;
}

Prop1Result prop1_check(const Polyline& ring) {
  if (!ring.closed()) throw GeometryError("prop1 check needs a closed polyline");
  if (!is_simple(ring)) throw GeometryError("prop1 check needs a simple polyline");

  const auto& v = ring.vertices();
  const std::size_t n = v.size();
  bool has_left = false;
  bool has_right = false;
  bool has_collinear = false;
  for (std::size_t i = 0; i < n; ++i) {
    switch (orientation(v[i], v[(i + 1) % n], v[(i + 2) % n])) {
      case Orientation::left:
        has_left = true;
        break;
      case Orientation::right:
        has_right = true;
        break;
      case Orientation::collinear:
        has_collinear = true;
        break;
    }
  }

  Prop1Result result;
  result.convex = has_left != has_right;
  result.witness = max_line_multiplicity(ring);
  result.max_mult = result.witness.count;
  result.consistent = result.convex == (result.max_mult <= 3);
  if (result.convex && !has_collinear) {
    result.consistent = result.consistent && result.max_mult == 2;
  }
  return result;
}

}  // namespace konvex
