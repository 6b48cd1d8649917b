#include "konvex/stabbing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "konvex/projections.hpp"
#include "konvex/theorem.hpp"

namespace konvex {

namespace {

using Wide = boost::multiprecision::int512_t;

constexpr std::size_t kFanDirections = 360;
constexpr std::size_t kWitnessGrid = 4096;
constexpr double kPerturbationScale = 1e-7;
constexpr double kDirectionQuantum = 1099511627776.0;  // 2^40

Wide widen(int128 v) {
  // cpp_int has no portable __int128 constructor; go through two halves.
  const bool negative = v < 0;
  const auto magnitude = static_cast<uint128>(negative ? -v : v);
  Wide w = static_cast<std::uint64_t>(magnitude >> 64);
  w <<= 64;
  w += static_cast<std::uint64_t>(magnitude);
  return negative ? Wide(-w) : w;
}

// Position along a line as an exact fraction num / den with den > 0.
struct Param {
  Wide num;
  Wide den;
};

bool operator<(const Param& x, const Param& y) { return x.num * y.den < y.num * x.den; }

long double to_long_double(const Param& p) {
  return p.num.convert_to<long double>() / p.den.convert_to<long double>();
}

struct Piece {
  Param lo;
  Param hi;
  std::size_t segment;
};

// Reusable per-polyline workspace: side values of every vertex against the
// current line, plus run counting and exact component extraction.
class SideTable {
 public:
  explicit SideTable(const Polyline& poly)
      : vertices_(poly.vertices()),
        closed_(poly.closed()),
        segments_(poly.segment_count()),
        values_(poly.vertex_count()),
        signs_(poly.vertex_count()) {}

  void evaluate(const Line& line) {
    const int128 a = line.a();
    const int128 b = line.b();
    const int128 c = line.c();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const int128 v = a * vertices_[i].x + b * vertices_[i].y - c;
      values_[i] = v;
      signs_[i] = static_cast<signed char>((v > 0) - (v < 0));
    }
  }

  // Maximal runs of consecutive segments touching the line. Each run meets
  // the line in a connected set, so this bounds the component count.
  std::size_t run_count() const {
    std::size_t runs = 0;
    bool any_hit = false;
    for (std::size_t i = 0; i < segments_; ++i) {
      const int s0 = signs_[i];
      const int s1 = signs_[(i + 1) % vertices_.size()];
      if (s0 != 0 && s1 != 0 && s0 == s1) continue;
      any_hit = true;
      if (s0 != 0 || (!closed_ && i == 0)) ++runs;
    }
    if (runs == 0 && any_hit) runs = 1;
    return runs;
  }

  std::size_t proper_crossings() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < segments_; ++i) {
      const int s0 = signs_[i];
      const int s1 = signs_[(i + 1) % vertices_.size()];
      if (s0 * s1 < 0) ++count;
    }
    return count;
  }

  std::size_t components(const Line& line, std::vector<Component>* out) const {
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < segments_; ++i) {
      const std::size_t j = (i + 1) % vertices_.size();
      const int s0 = signs_[i];
      const int s1 = signs_[j];
      if (s0 != 0 && s1 != 0 && s0 == s1) continue;
      const int128 t0 = line.along(vertices_[i]);
      const int128 t1 = line.along(vertices_[j]);
      if (s0 == 0 && s1 == 0) {
        Param p0{widen(t0), Wide(1)};
        Param p1{widen(t1), Wide(1)};
        if (t1 < t0) std::swap(p0, p1);
        pieces.push_back({p0, p1, i});
      } else if (s0 == 0) {
        pieces.push_back({{widen(t0), Wide(1)}, {widen(t0), Wide(1)}, i});
      } else if (s1 == 0) {
        pieces.push_back({{widen(t1), Wide(1)}, {widen(t1), Wide(1)}, i});
      } else {
        // Crossing at t = (t1 * v0 - t0 * v1) / (v0 - v1).
        const Wide v0 = widen(values_[i]);
        const Wide v1 = widen(values_[j]);
        Wide num = widen(t1) * v0 - widen(t0) * v1;
        Wide den = v0 - v1;
        if (den < 0) {
          num = -num;
          den = -den;
        }
        Param p{num, den};
        pieces.push_back({p, p, i});
      }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& x, const Piece& y) { return x.lo < y.lo; });

    std::size_t count = 0;
    std::size_t k = 0;
    while (k < pieces.size()) {
      Param hi = pieces[k].hi;
      Param lo = pieces[k].lo;
      std::size_t first = pieces[k].segment;
      std::size_t last = pieces[k].segment;
      ++k;
      while (k < pieces.size() && !(hi < pieces[k].lo)) {
        if (hi < pieces[k].hi) hi = pieces[k].hi;
        first = std::min(first, pieces[k].segment);
        last = std::max(last, pieces[k].segment);
        ++k;
      }
      ++count;
      if (out != nullptr) {
        out->push_back(Component{first, last, to_point(line, lo), to_point(line, hi)});
      }
    }
    return count;
  }

 private:
  static Vec2 to_point(const Line& line, const Param& t) {
    const long double a = line.a();
    const long double b = line.b();
    const long double c = static_cast<long double>(line.c());
    const long double tv = to_long_double(t);
    const long double n2 = a * a + b * b;
    const long double x = (a * c - b * tv) / n2 / kScale;
    const long double y = (b * c + a * tv) / n2 / kScale;
    return Vec2{static_cast<double>(x), static_cast<double>(y)};
  }

  const std::vector<Point>& vertices_;
  bool closed_;
  std::size_t segments_;
  std::vector<int128> values_;
  std::vector<signed char> signs_;
};

// Segments grouped into short blocks with bounding circles. A block whose
// circle clears the line (with a generous floating-point margin) cannot touch
// it, so only the remaining blocks need exact side tests.
class BlockIndex {
 public:
  explicit BlockIndex(const Polyline& poly) : closed_(poly.closed()) {
    const auto& v = poly.vertices();
    for (const Point& p : v) chain_.push_back(p);
    if (closed_) chain_.push_back(v.front());
    const std::size_t segments = chain_.size() - 1;
    for (std::size_t first = 0; first < segments; first += kBlockSegments) {
      const std::size_t last = std::min(first + kBlockSegments, segments);
      double min_x = chain_[first].x, max_x = min_x;
      double min_y = chain_[first].y, max_y = min_y;
      for (std::size_t i = first; i <= last; ++i) {
        min_x = std::min(min_x, static_cast<double>(chain_[i].x));
        max_x = std::max(max_x, static_cast<double>(chain_[i].x));
        min_y = std::min(min_y, static_cast<double>(chain_[i].y));
        max_y = std::max(max_y, static_cast<double>(chain_[i].y));
      }
      Block b{first, last, 0.5 * (min_x + max_x), 0.5 * (min_y + max_y), 0.0};
      for (std::size_t i = first; i <= last; ++i) {
        b.radius = std::max(b.radius, std::hypot(chain_[i].x - b.cx, chain_[i].y - b.cy));
      }
      b.radius = b.radius * (1.0 + 1e-9) + 2.0;
      blocks_.push_back(b);
    }
  }

  // Same value as SideTable::run_count for this line.
  std::size_t run_count(const Line& line) const {
    const double a = static_cast<double>(line.a());
    const double b = static_cast<double>(line.b());
    const double c = static_cast<double>(line.c());
    const double norm = std::hypot(a, b);
    std::size_t runs = 0;
    bool any_hit = false;
    signed char signs[kBlockSegments + 1];
    for (const Block& blk : blocks_) {
      const double v = a * blk.cx + b * blk.cy - c;
      const double reach = norm * blk.radius;
      const double slack = 1e-12 * (std::abs(a * blk.cx) + std::abs(b * blk.cy) + std::abs(c) + reach);
      if (std::abs(v) > reach + slack) continue;
      for (std::size_t i = blk.first; i <= blk.last; ++i) signs[i - blk.first] = static_cast<signed char>(line.side(chain_[i]));
      for (std::size_t i = blk.first; i < blk.last; ++i) {
        const int s0 = signs[i - blk.first];
        const int s1 = signs[i + 1 - blk.first];
        if (s0 != 0 && s1 != 0 && s0 == s1) continue;
        any_hit = true;
        if (s0 != 0 || (!closed_ && i == 0)) ++runs;
      }
    }
    if (runs == 0 && any_hit) runs = 1;
    return runs;
  }

 private:
  static constexpr std::size_t kBlockSegments = 8;
  struct Block {
    std::size_t first;  // segment range [first, last); vertices first..last
    std::size_t last;
    double cx;
    double cy;
    double radius;
  };
  bool closed_;
  std::vector<Point> chain_;
  std::vector<Block> blocks_;
};

// Keeps the best line seen, checking the cheap run bound before the exact count.
class BestLine {
 public:
  explicit BestLine(const Polyline& poly)
      : blocks_(poly), table_(poly), witness_(Line::exact(1, 0, 0)) {}

  void consider(const Line& line) {
    if (blocks_.run_count(line) <= best_) return;
    table_.evaluate(line);
    const std::size_t count = table_.components(line, nullptr);
    if (count > best_) {
      best_ = count;
      witness_ = line;
    }
  }

  std::size_t best() const { return best_; }
  const Line& witness() const { return witness_; }

 private:
  BlockIndex blocks_;
  SideTable table_;
  std::size_t best_ = 0;
  Line witness_;
};

std::vector<Point> distinct_vertices(const Polyline& poly) {
  std::vector<Point> pts = poly.vertices();
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box bounding_box(const Polyline& poly) {
  const auto& v = poly.vertices();
  Box box{v[0].xd(), v[0].yd(), v[0].xd(), v[0].yd()};
  for (const Point& p : v) {
    box.min_x = std::min(box.min_x, p.xd());
    box.min_y = std::min(box.min_y, p.yd());
    box.max_x = std::max(box.max_x, p.xd());
    box.max_y = std::max(box.max_y, p.yd());
  }
  return box;
}

MultiplicityReport make_report(const Line& line, const Polyline& poly, Method method) {
  MultiplicityReport report = line_multiplicity(line, poly);
  report.method = method;
  return report;
}

// Maximizes f on [lo, hi] assuming it is unimodal there.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::enumeration:
      return "enumeration";
    case Method::oracle:
      return "oracle";
    case Method::witness_sweep:
      return "witness_sweep";
  }
  return "unknown";
}

MultiplicityReport line_multiplicity(const Line& line, const Polyline& poly) {
  SideTable table(poly);
  table.evaluate(line);
  MultiplicityReport report;
  report.witness = line;
  report.count = table.components(line, &report.components);
  return report;
}

std::size_t proper_crossings(const Line& line, const Polyline& poly) {
  SideTable table(poly);
  table.evaluate(line);
  return table.proper_crossings();
}

MultiplicityReport max_line_multiplicity(const Polyline& poly) {
  const std::vector<Point> pts = distinct_vertices(poly);
  if (pts.size() < 2) throw GeometryError("polyline needs two distinct vertices");

  const Box box = bounding_box(poly);
  const double delta = kPerturbationScale * std::hypot(box.max_x - box.min_x, box.max_y - box.min_y);

  BestLine best(poly);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Line base = Line::through(pts[i], pts[j]);
      best.consider(base);
      best.consider(base.translated(delta));
      best.consider(base.translated(-delta));
      const double turn = 2.0 * delta / distance(pts[i], pts[j]);
      best.consider(base.rotated_about_midpoint(turn, pts[i], pts[j]));
      best.consider(base.rotated_about_midpoint(-turn, pts[i], pts[j]));
    }
  }
  for (const Point& p : pts) {
    for (std::size_t k = 0; k < kFanDirections; ++k) {
      const double angle = M_PI * static_cast<double>(k) / static_cast<double>(kFanDirections);
      best.consider(Line::through_with_normal(p, Direction::from_angle(angle)));
    }
  }
  return make_report(best.witness(), poly, Method::enumeration);
}

MultiplicityReport random_line_oracle(const Polyline& poly, std::size_t trials,
                                      std::uint64_t seed) {
  if (trials == 0) throw GeometryError("oracle needs at least one trial");
  const Box box = bounding_box(poly);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> turn(0.0, M_PI);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  BestLine best(poly);
  for (std::size_t k = 0; k < trials; ++k) {
    const Direction n = Direction::from_angle(turn(rng));
    const double corners[4] = {
        n.x * box.min_x + n.y * box.min_y, n.x * box.max_x + n.y * box.min_y,
        n.x * box.min_x + n.y * box.max_y, n.x * box.max_x + n.y * box.max_y};
    const double lo = *std::min_element(corners, corners + 4);
    const double hi = *std::max_element(corners, corners + 4);
    const double offset = lo + (hi - lo) * unit(rng);
    best.consider(Line::from_normal(n, offset));
  }
  return make_report(best.witness(), poly, Method::oracle);
}

double projection_margin(const Polyline& poly, int r, const ConvexPolygon& body, double angle) {
  const Direction dir = Direction::from_angle(angle);
  const double l = projection_length(poly, dir);
  const double k = width(body, dir);
  if (r % 2 == 0) return l - r * k;
  const ChordTerm chord = chord_term(poly);
  return l - (r - 1) * k - chord.length * std::abs(std::cos(angle - chord.angle));
}

std::optional<double> projection_witness(const Polyline& poly, int r, const ConvexPolygon& body) {
  if (r < 2) throw GeometryError("r must be an integer greater than 1");
  for (const Point& p : poly.vertices()) {
    if (contains(body, p) == Location::exterior) {
      throw GeometryError("polyline is not contained in the body");
    }
  }
  auto margin = [&](double a) { return projection_margin(poly, r, body, a); };

  // Every term is pi-periodic, so half a turn covers all directions.
  const double step = M_PI / static_cast<double>(kWitnessGrid);
  double best_angle = 0.0;
  double best_margin = margin(0.0);
  for (std::size_t k = 1; k < kWitnessGrid; ++k) {
    const double a = step * static_cast<double>(k);
    const double m = margin(a);
    if (m > best_margin) {
      best_margin = m;
      best_angle = a;
    }
  }
  const double refined = golden_section_max(margin, best_angle - step, best_angle + step, 60);
  const double refined_margin = margin(refined);
  if (refined_margin > best_margin) {
    best_margin = refined_margin;
    best_angle = std::fmod(refined + M_PI, M_PI);
  }

  const double noise = 1e-12 * std::max(1.0, polyline_length(poly));
  if (best_margin > noise) return best_angle;
  return std::nullopt;
}

std::optional<SweepResult> deepest_perpendicular_line(const Polyline& poly, double angle) {
  const std::int64_t a = std::llround(std::cos(angle) * kDirectionQuantum);
  const std::int64_t b = std::llround(std::sin(angle) * kDirectionQuantum);
  auto project = [&](const Point& p) {
    return static_cast<int128>(a) * p.x + static_cast<int128>(b) * p.y;
  };

  std::vector<std::pair<int128, int>> events;
  for (std::size_t i = 0; i < poly.segment_count(); ++i) {
    const Segment s = poly.segment(i);
    int128 lo = project(s.a);
    int128 hi = project(s.b);
    if (lo == hi) continue;  // perpendicular to the direction: projects to a point
    if (hi < lo) std::swap(lo, hi);
    events.emplace_back(lo, +1);
    events.emplace_back(hi, -1);
  }
  if (events.empty()) return std::nullopt;
  std::sort(events.begin(), events.end());

  std::size_t best_depth = 0;
  int128 best_lo = 0;
  int128 best_hi = 0;
  long depth = 0;
  std::size_t k = 0;
  while (k < events.size()) {
    const int128 at = events[k].first;
    while (k < events.size() && events[k].first == at) depth += events[k++].second;
    if (k == events.size()) break;
    if (static_cast<std::size_t>(depth) > best_depth) {
      best_depth = static_cast<std::size_t>(depth);
      best_lo = at;
      best_hi = events[k].first;
    }
  }
  // Doubling the normal puts the exact cell midpoint on the integer lattice.
  return SweepResult{Line::exact(2 * a, 2 * b, best_lo + best_hi), best_depth};
}

MultiplicityReport find_stabbing_line(const Polyline& poly, int r, const ConvexPolygon& body) {
  const double bound = s_bound(body, r);
  const double length = polyline_length(poly);
  if (!(length > bound)) {
    throw BoundNotExceeded("bound not exceeded: length " + std::to_string(length) +
                           " <= s = " + std::to_string(bound));
  }
  const auto needed = static_cast<std::size_t>(r) + 1;

  if (const auto angle = projection_witness(poly, r, body)) {
    if (const auto sweep = deepest_perpendicular_line(poly, *angle)) {
      MultiplicityReport report = make_report(sweep->line, poly, Method::witness_sweep);
      if (report.count >= needed) return report;
    }
  }
  MultiplicityReport report = max_line_multiplicity(poly);
  if (report.count >= needed) return report;
  throw VerificationFailure("no line meets the polyline in " + std::to_string(needed) +
                            " components (best found: " + std::to_string(report.count) + ")");
}

}  // namespace konvex
