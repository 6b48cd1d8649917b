#include "konvex/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>

#include "konvex/theorem.hpp"

namespace konvex {

namespace {

constexpr int kLoopResamples = 16;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Edge {
  Vec2 from;
  Vec2 to;
  double length;
  Vec2 outward;  // unit
  double bulge;
};

// Distance from the centroid to the nearest edge line.
double inner_reach(const ConvexPolygon& body, const Vec2& c) {
  const auto& ring = body.ring();
  double reach = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& a = ring[i];
    const Point& b = body.vertex(i + 1);
    const double dx = b.xd() - a.xd();
    const double dy = b.yd() - a.yd();
    const double cr = dx * (c.y - a.yd()) - dy * (c.x - a.xd());
    reach = std::min(reach, cr / std::hypot(dx, dy));
  }
  return reach;
}

double turn_angle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double vx = c.x - b.x, vy = c.y - b.y;
  return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
}

std::vector<Point> dedupe_ring(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

// Splits m intervals across edges in proportion to length, at least one each.
std::vector<std::size_t> apportion(const std::vector<Edge>& edges, std::size_t m) {
  double total = 0.0;
  for (const Edge& e : edges) total += e.length;
  std::vector<std::size_t> counts(edges.size(), 1);
  if (m <= edges.size()) return counts;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double share = static_cast<double>(m) * edges[i].length / total;
    counts[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(share)));
    used += counts[i];
    remainders.emplace_back(share - std::floor(share), i);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t k = 0; used < m && k < remainders.size(); ++k, ++used) {
    ++counts[remainders[k].second];
  }
  return counts;
}

std::vector<Point> sample_inset(const ConvexPolygon& body, double depth, std::size_t m,
                                std::uint64_t seed) {
  const Vec2 c = centroid(body);
  const double reach = inner_reach(body, c);
  const double shrink = depth / reach;
  if (!(depth > 0.0) || !(shrink < 1.0)) {
    throw GeometryError("inset depth too large for the body");
  }

  const auto& ring = body.ring();
  const std::size_t n = ring.size();
  std::vector<Vec2> corners(n);
  for (std::size_t i = 0; i < n; ++i) {
    corners[i] = Vec2{c.x + (1.0 - shrink) * (ring[i].xd() - c.x),
                      c.y + (1.0 - shrink) * (ring[i].yd() - c.y)};
  }
  std::vector<double> turns(n);
  for (std::size_t i = 0; i < n; ++i) {
    turns[i] = turn_angle(corners[(i + n - 1) % n], corners[i], corners[(i + 1) % n]);
  }
  std::vector<Edge> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    Edge& e = edges[i];
    e.from = corners[i];
    e.to = corners[(i + 1) % n];
    const double dx = e.to.x - e.from.x;
    const double dy = e.to.y - e.from.y;
    e.length = std::hypot(dx, dy);
    e.outward = Vec2{dy / e.length, -dx / e.length};
    // End tangents tilt by at most a third of the corner turn on either side.
    const double corner = std::min(turns[i], turns[(i + 1) % n]);
    e.bulge = std::min(depth / 4.0, e.length * std::tan(corner / 3.0) / 4.0);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.125, 0.125);
  const std::vector<std::size_t> counts = apportion(edges, m);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const Edge& e = edges[i];
    for (std::size_t k = 0; k < counts[i]; ++k) {
      double u = static_cast<double>(k) / static_cast<double>(counts[i]);
      if (k > 0) u += jitter(rng) / static_cast<double>(counts[i]);
      const double lift = 4.0 * e.bulge * u * (1.0 - u);
      pts.push_back(Point::from_double(e.from.x + u * (e.to.x - e.from.x) + lift * e.outward.x,
                                       e.from.y + u * (e.to.y - e.from.y) + lift * e.outward.y));
    }
  }
  return dedupe_ring(pts);
}

// Parabolic bump from a to b of height `bow` toward the left of a->b
// (right when `left` is false). Interior parameters are jittered.
std::vector<Point> bowed_arc(const Point& a, const Point& b, double bow, bool left, std::size_t m,
                             std::uint64_t seed) {
  const double dx = b.xd() - a.xd();
  const double dy = b.yd() - a.yd();
  const double len = std::hypot(dx, dy);
  const double side = left ? 1.0 : -1.0;
  const Vec2 normal{-dy / len * side, dx / len * side};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.125, 0.125);
  std::vector<Point> pts{a};
  for (std::size_t j = 1; j < m; ++j) {
    const double u = (static_cast<double>(j) + jitter(rng)) / static_cast<double>(m);
    const double lift = 4.0 * bow * u * (1.0 - u);
    const Point p = Point::from_double(a.xd() + u * dx + lift * normal.x,
                                       a.yd() + u * dy + lift * normal.y);
    if (p != pts.back()) pts.push_back(p);
  }
  if (b != pts.back()) pts.push_back(b);
  return pts;
}

// Every interior vertex turns strictly the same way.
bool strictly_convex_arc(const std::vector<Point>& arc) {
  if (arc.size() < 3) return true;
  const Orientation first = orientation(arc[0], arc[1], arc[2]);
  if (first == Orientation::collinear) return false;
  for (std::size_t i = 1; i + 2 < arc.size(); ++i) {
    if (orientation(arc[i], arc[i + 1], arc[i + 2]) != first) return false;
  }
  return true;
}

std::vector<Point> rotate_to(const std::vector<Point>& ring, std::size_t start) {
  std::vector<Point> out(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) out[i] = ring[(start + i) % ring.size()];
  return out;
}

std::size_t farthest_from(const std::vector<Point>& ring, const Point& p) {
  std::size_t best = 0;
  int128 best_d2 = -1;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const int128 d2 = squared_distance(ring[i], p);
    if (d2 > best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

class AttemptFailed : public std::runtime_error {
 public:
  AttemptFailed(const std::string& what, bool too_short, MultiplicityReport report = {})
      : std::runtime_error(what), too_short(too_short), report(std::move(report)) {}
  bool too_short;
  MultiplicityReport report;
};

struct Assembly {
  std::vector<Point> curve;
  std::vector<Polyline> loops;
};

// Appends the closed convex ring, traversed from ring[first], minus a final
// stretch of arc length `cut` before ring[0]. The loop ends at a grid point
// just inside the edge where the cut begins, so the open arc stays strictly
// convex. Inside the closing edge ring[0] stays on the curve, so the end
// point goes just outside that edge instead, keeping every turn of
// ring[first..j], F, ring[0] strictly left; failing that the edge is dropped.
// Returns the index of the last ring vertex kept.
std::size_t append_open_loop(const std::vector<Point>& ring, double cut, std::size_t first,
                             std::vector<Point>& out) {
  const std::size_t n = ring.size();
  double acc = 0.0;
  for (std::size_t j = n - 1; j >= 2; --j) {
    const Point& from = ring[j];
    const Point& to = ring[(j + 1) % n];
    const double len = distance(from, to);
    if (acc + len < cut) {
      acc += len;
      continue;
    }
    for (std::size_t i = first; i <= j; ++i) out.push_back(ring[i]);
    const double back = cut - acc;
    if (len - back < 1e-7) return j;
    const double ux = (to.xd() - from.xd()) / len;
    const double uy = (to.yd() - from.yd()) / len;
    const double fx = to.xd() - back * ux;
    const double fy = to.yd() - back * uy;
    const bool closing = j == n - 1;
    const double side = closing ? -1.0 : 1.0;
    for (double step = 1.0; step < 1e6; step *= 2.0) {
      const Point f = Point::from_double(fx - side * uy * step / kScale, fy + side * ux * step / kScale);
      if (f == from || f == to) continue;
      if (!closing) {
        if (orientation(from, to, f) == Orientation::left) {
          out.push_back(f);
          return j;
        }
        continue;
      }
      if (orientation(from, to, f) != Orientation::right) continue;
      if (orientation(ring[j - 1], from, f) == Orientation::left &&
          orientation(from, f, to) == Orientation::left &&
          orientation(f, to, ring[1]) == Orientation::left) {
        out.push_back(f);
      }
      return j;
    }
    return j;
  }
  throw AttemptFailed("gap leaves no loop", true);
}

// Nested open loops: loop k+1 is the hull of the deeper inset ring and the
// point where loop k stopped, traversed from that point, so consecutive
// loops share exactly their junction.
Assembly nested_loops(const ConvexPolygon& body, const ResolvedParams& p, bool start_on_diameter,
                      std::vector<Point>& last_ring, std::size_t& last_kept) {
  Assembly out;
  const int n = p.r / 2;
  std::vector<Point> previous;
  for (int k = 1; k <= n; ++k) {
    const Polyline sampled =
        inset_loop(body, p.inset * k, p.samples_per_loop, mix_seed(p.seed, static_cast<std::uint64_t>(k)));
    std::vector<Point> ring;
    if (k == 1) {
      ring = sampled.vertices();
      std::size_t start = 0;
      if (start_on_diameter) {
        const Diameter d = diameter(ConvexPolygon(ring));
        start = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), d.a) - ring.begin());
      }
      ring = rotate_to(ring, start);
    } else {
      const Point junction = out.curve.back();
      std::vector<Point> pts = sampled.vertices();
      pts.push_back(junction);
      const ConvexPolygon hull = convex_hull(pts);
      const auto it = std::find(hull.ring().begin(), hull.ring().end(), junction);
      if (it == hull.ring().end()) {
        throw AttemptFailed("junction fell inside the next loop", true);
      }
      ring = rotate_to(hull.ring(), static_cast<std::size_t>(it - hull.ring().begin()));
      // Nesting: apart from the junction, the new ring is strictly inside the previous one.
      const ConvexPolygon outer(previous);
      for (std::size_t i = 1; i < ring.size(); ++i) {
        if (contains(outer, ring[i]) != Location::interior) {
          throw AttemptFailed("loop " + std::to_string(k) + " is not nested", true);
        }
      }
    }
    double length = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) length += distance(ring[i], ring[(i + 1) % ring.size()]);
    last_kept = append_open_loop(ring, p.gap * length, k == 1 ? 0 : 1, out.curve);
    out.loops.emplace_back(ring, true);
    previous = ring;
  }
  last_ring = previous;
  return out;
}

ConstructionResult verify(const ConvexPolygon& body, const ResolvedParams& p, Assembly assembly,
                          int retries) {
  Polyline curve(std::move(assembly.curve), false);
  for (const Point& v : curve.vertices()) {
    if (contains(body, v) == Location::exterior) {
      throw AttemptFailed("curve leaves the body", false);
    }
  }
  const double target = s_bound(body, p.r);
  const double length = polyline_length(curve);
  if (length < target - p.epsilon) {
    throw AttemptFailed("length " + std::to_string(length) + " below s - eps = " +
                            std::to_string(target - p.epsilon),
                        true);
  }
  MultiplicityReport mult = max_line_multiplicity(curve);
  if (mult.count > static_cast<std::size_t>(p.r)) {
    throw AttemptFailed("a line meets the curve " + std::to_string(mult.count) + " times", false,
                        mult);
  }
  return ConstructionResult{std::move(curve), length, std::move(mult), target, retries, p,
                            std::move(assembly.loops)};
}

template <typename Attempt>
ConstructionResult with_retries(const ConvexPolygon& body, const ConstructionParams& params,
                                Attempt&& attempt) {
  ResolvedParams p = resolve(params, body);
  std::string last_error;
  MultiplicityReport last_report;
  for (int retry = 0; retry <= p.max_retries; ++retry) {
    try {
      return verify(body, p, attempt(p), retry);
    } catch (const AttemptFailed& failure) {
      last_error = failure.what();
      last_report = failure.report;
      // Shorter than required: tighten the loops; otherwise re-jitter.
      if (failure.too_short) {
        p.inset *= 0.5;
        p.gap *= 0.5;
        p.samples_per_loop = std::min<std::size_t>(p.samples_per_loop * 2, 4096);
      }
      p.seed = mix_seed(p.seed, 0xc0ffee);
    } catch (const GeometryError& failure) {
      last_error = failure.what();
      p.seed = mix_seed(p.seed, 0xc0ffee);
    }
  }
  throw ConstructionFailure("construction failed after " + std::to_string(p.max_retries) +
                                " retries: " + last_error,
                            last_report);
}

void require_r(const ConstructionParams& params, bool odd) {
  if (params.r < 2) throw GeometryError("r must be an integer greater than 1");
  if ((params.r % 2 == 1) != odd) {
    throw GeometryError(odd ? "odd construction needs odd r" : "even construction needs even r");
  }
  if (!(params.epsilon > 0.0)) throw GeometryError("epsilon must be positive");
}

}  // namespace

ResolvedParams resolve(const ConstructionParams& params, const ConvexPolygon& body) {
  if (params.r < 2) throw GeometryError("r must be an integer greater than 1");
  const double p = perimeter(body);
  const double reach = inner_reach(body, centroid(body));
  const double n = params.loop_count();
  const double s = s_bound(body, params.r);

  ResolvedParams out;
  out.r = params.r;
  out.epsilon = params.epsilon;
  out.samples_per_loop = std::max<std::size_t>(params.samples_per_loop, 2 * body.size());
  // Shrinking by depth costs about p * depth / reach per loop; the nested
  // depths 1..n together spend a quarter of epsilon.
  out.inset = params.inset.value_or(
      std::min(params.epsilon * reach / (2.0 * n * (n + 1.0) * p), reach / (4.0 * n)));
  out.gap = params.gap.value_or(std::min(0.01, params.epsilon / (4.0 * s)));
  out.seed = params.seed;
  out.max_retries = params.max_retries;
  if (!(out.inset > 0.0) || !(out.gap > 0.0)) throw GeometryError("inset and gap must be positive");
  return out;
}

Polyline inset_loop(const ConvexPolygon& body, double depth, std::size_t m, std::uint64_t seed) {
  if (m < 3) throw GeometryError("inset loop needs at least 3 samples");
  for (int attempt = 0; attempt < kLoopResamples; ++attempt) {
    std::vector<Point> pts = sample_inset(body, depth, m, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    try {
      ConvexPolygon ring(std::move(pts));
      return ring.boundary();
    } catch (const GeometryError&) {
      // Rounding to the grid can flatten a turn; resample.
    }
  }
  throw GeometryError("inset ring is not strictly convex after resampling (depth too large?)");
}

Polyline diameter_chord_arc(const ConvexPolygon& inner, double bow, std::size_t m,
                            std::uint64_t seed) {
  if (!(bow > 0.0)) throw GeometryError("bow must be positive");
  if (m < 2) throw GeometryError("arc needs at least 2 segments");
  const Diameter d = diameter(inner);
  std::vector<Point> arc = bowed_arc(d.a, d.b, bow, true, m, seed);
  for (std::size_t i = 1; i + 1 < arc.size(); ++i) {
    if (contains(inner, arc[i]) != Location::interior) {
      throw GeometryError("bow too large: arc leaves the body");
    }
  }
  if (!strictly_convex_arc(arc)) throw GeometryError("arc is not strictly convex on the grid");
  return Polyline(std::move(arc), false);
}

ConstructionResult build_even_curve(const ConvexPolygon& body, const ConstructionParams& params) {
  require_r(params, false);
  return with_retries(body, params, [&](const ResolvedParams& p) {
    std::vector<Point> last_ring;
    std::size_t last_kept = 0;
    return nested_loops(body, p, false, last_ring, last_kept);
  });
}

ConstructionResult build_odd_curve(const ConvexPolygon& body, const ConstructionParams& params) {
  require_r(params, true);
  return with_retries(body, params, [&](const ResolvedParams& p) {
    std::vector<Point> ring;
    std::size_t last_kept = 0;
    Assembly assembly = nested_loops(body, p, true, ring, last_kept);

    // The innermost loop started at a diameter end and stopped just short of
    // it; run a bowed chord from the stopping point to the far end.
    const Point start = ring.front();
    const Point stop = assembly.curve.back();
    const std::size_t far_index = farthest_from(ring, start);
    if (far_index == 0 || far_index >= last_kept) {
      throw AttemptFailed("far diameter end falls in the loop gap", true);
    }
    const Point far = ring[far_index];

    // The arc stays inside the triangle (start, far, stop).
    const Orientation toward = orientation(stop, far, start);
    if (toward == Orientation::collinear) throw AttemptFailed("degenerate end triangle", true);
    const double chord = distance(stop, far);
    const double height = std::abs(static_cast<double>(cross(stop, far, start))) /
                          (static_cast<double>(kScale) * static_cast<double>(kScale)) / chord;
    const std::size_t arc_segments = std::max<std::size_t>(8, p.samples_per_loop / 4);

    double bow = height / 8.0;
    for (int shrink = 0; shrink < 8; ++shrink, bow *= 0.5) {
      const std::vector<Point> arc = bowed_arc(stop, far, bow, toward == Orientation::left,
                                               arc_segments, mix_seed(p.seed, 0xa7c));
      bool inside = strictly_convex_arc(arc);
      for (std::size_t i = 1; inside && i + 1 < arc.size(); ++i) {
        inside = orientation(start, far, arc[i]) == orientation(start, far, stop) &&
                 orientation(far, stop, arc[i]) == orientation(far, stop, start) &&
                 orientation(stop, start, arc[i]) == orientation(stop, start, far);
      }
      if (!inside) continue;
      assembly.curve.insert(assembly.curve.end(), arc.begin() + 1, arc.end());
      return assembly;
    }
    throw AttemptFailed("bowed chord does not fit its triangle", true);
  });
}

ConstructionResult build_extremal_curve(const ConvexPolygon& body,
                                        const ConstructionParams& params) {
  return params.r % 2 == 0 ? build_even_curve(body, params) : build_odd_curve(body, params);
}

}  // namespace konvex
