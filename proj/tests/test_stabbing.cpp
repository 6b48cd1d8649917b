#include <doctest.h>

#include <cmath>
#include <random>

#include "konvex/extremal.hpp"
#include "konvex/projections.hpp"
#include "konvex/stabbing.hpp"
#include "konvex/theorem.hpp"
#include "support/test_support.hpp"

using namespace konvex;
using konvex::testing::pt;

namespace {

// Unit square ring walked once, then a short tail to (0.1, 0.05); length about 4.112.
Polyline square_with_tail() {
  return Polyline({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(0, 0), pt(0.1, 0.05)}, false);
}

Line horizontal(double y) { return Line::through(pt(0, y), pt(1, y)); }

Polyline zigzag4() { return Polyline({pt(0, 0), pt(1, 1), pt(2, 0), pt(3, 1), pt(4, 0)}, false); }

Point rigid(const Point& p) {
  // Rotation by atan2(4, 3) (exact on multiples of 5 grid units) plus a shift.
  return Point::from_scaled((3 * p.x - 4 * p.y) / 5 + 7 * kScale / 10, (4 * p.x + 3 * p.y) / 5 - kScale / 3);
}

}  // namespace

TEST_CASE("line multiplicity examples") {
  CHECK(line_multiplicity(horizontal(0), Polyline({pt(0, 0), pt(1, 0)}, false)).count == 1);
  CHECK(line_multiplicity(horizontal(0.5), Polyline({pt(0, 0), pt(1, 1), pt(2, 0), pt(3, 1)}, false)).count == 3);
  CHECK(line_multiplicity(Line::through(pt(0.5, 0), pt(0.5, 1)), konvex::testing::square_ring()).count == 2);
}

TEST_CASE("component conventions") {
  // Collinear run through several segments counts once.
  const Polyline run({pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 1)}, false);
  CHECK(line_multiplicity(horizontal(0), run).count == 1);
  // Touching at a vertex and staying on one side counts once.
  const Polyline vee({pt(0, 1), pt(1, 0), pt(2, 1)}, false);
  const MultiplicityReport touch = line_multiplicity(horizontal(0), vee);
  CHECK(touch.count == 1);
  REQUIRE(touch.components.size() == 1);
  CHECK(touch.components[0].is_point());
  // A square ring against its own bottom edge line: one sub-segment.
  const MultiplicityReport edge = line_multiplicity(horizontal(0), konvex::testing::square_ring());
  CHECK(edge.count == 1);
  CHECK_FALSE(edge.components[0].is_point());
  // Two segments crossing the line at the same point (0.5, 0) form one component;
  // the middle segment adds (1, 0).
  const Polyline bowtie({pt(0, -1), pt(1, 1), pt(1, -1), pt(0, 1)}, false);
  CHECK(line_multiplicity(horizontal(0), bowtie).count == 2);
  CHECK(line_multiplicity(horizontal(0.5), bowtie).count == 3);
  CHECK(line_multiplicity(horizontal(5), bowtie).count == 0);
}

TEST_CASE("line multiplicity matches a floating-point crossing oracle away from vertices") {
  std::mt19937_64 rng(101);
  int compared = 0;
  for (int i = 0; i < 3000; ++i) {
    const Polyline poly = konvex::testing::random_polyline(rng, 1 + i % 25);
    const Line line = konvex::testing::random_line(rng);
    if (konvex::testing::vertex_clearance(line, poly) < 1e-6) continue;
    // Crossings of distinct segments at one point are a measure-zero event.
    CHECK(line_multiplicity(line, poly).count == konvex::testing::float_crossings(line, poly));
    CHECK(proper_crossings(line, poly) == konvex::testing::float_crossings(line, poly));
    ++compared;
  }
  CHECK(compared > 2500);
}

TEST_CASE("max line multiplicity examples") {
  const MultiplicityReport sq = max_line_multiplicity(konvex::testing::square_ring());
  CHECK(sq.count == 2);
  CHECK(sq.method == Method::enumeration);
  CHECK(max_line_multiplicity(zigzag4()).count == 4);
  CHECK(max_line_multiplicity(Polyline({pt(0, 0), pt(1, 0)}, false)).count == 1);
}

TEST_CASE("random line oracle examples") {
  const MultiplicityReport sq = random_line_oracle(konvex::testing::square_ring(), 100000, 7);
  CHECK(sq.count == 2);
  CHECK(sq.method == Method::oracle);
  CHECK(random_line_oracle(Polyline({pt(0, 0), pt(1, 0)}, false), 1000, 7).count <= 1);
  CHECK_THROWS_AS(random_line_oracle(konvex::testing::square_ring(), 0, 7), GeometryError);
  // Deterministic per seed.
  const Polyline poly = zigzag4();
  const MultiplicityReport a = random_line_oracle(poly, 5000, 99);
  const MultiplicityReport b = random_line_oracle(poly, 5000, 99);
  CHECK(a.count == b.count);
  CHECK(a.witness == b.witness);
}

TEST_CASE("enumeration dominates the random oracle and witnesses replay") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 60; ++i) {
    const Polyline poly = konvex::testing::random_polyline(rng, 1 + i % 12);
    const MultiplicityReport best = max_line_multiplicity(poly);
    const MultiplicityReport oracle = random_line_oracle(poly, 20000, static_cast<std::uint64_t>(i));
    CHECK(best.count >= oracle.count);
    CHECK(line_multiplicity(best.witness, poly).count == best.count);
    CHECK(line_multiplicity(oracle.witness, poly).count == oracle.count);
  }
}

TEST_CASE("multiplicity counts are invariant under rigid motions") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<std::int64_t> u(-100'000'000, 100'000'000);
  for (int i = 0; i < 200; ++i) {
    std::vector<Point> pts;
    while (pts.size() < 8) {
      const Point p = Point::from_scaled(5 * u(rng), 5 * u(rng));
      if (pts.empty() || p != pts.back()) pts.push_back(p);
    }
    std::vector<Point> moved;
    for (const Point& p : pts) moved.push_back(rigid(p));
    const Polyline poly(pts, false);
    const Polyline image(moved, false);
    // Lines through vertex pairs, including degenerate collinear cases.
    const std::size_t a = static_cast<std::size_t>(i) % 8, b = (static_cast<std::size_t>(i) / 8 + a + 1) % 8;
    if (pts[a] == pts[b]) continue;
    const Line line = Line::through(pts[a], pts[b]);
    const Line image_line = Line::through(moved[a], moved[b]);
    CHECK(line_multiplicity(line, poly).count == line_multiplicity(image_line, image).count);
    CHECK(proper_crossings(line, poly) == proper_crossings(image_line, image));
  }
}

TEST_CASE("projection witness examples") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const Polyline tail = square_with_tail();
  CHECK(polyline_length(tail) == doctest::Approx(4.0 + std::hypot(0.1, 0.05)));
  // l(0) = 2.1 > 2 k(0) = 2.
  CHECK(projection_length(tail, 0.0) == doctest::Approx(2.1));
  CHECK(projection_margin(tail, 2, sq, 0.0) == doctest::Approx(0.1));
  const auto angle = projection_witness(tail, 2, sq);
  REQUIRE(angle.has_value());
  CHECK(projection_margin(tail, 2, sq, *angle) > 0.0);

  CHECK_FALSE(projection_witness(konvex::testing::square_ring(), 2, sq).has_value());
  CHECK_THROWS_AS(projection_witness(Polyline({pt(0, 0), pt(2, 0)}, false), 2, sq), GeometryError);
  CHECK_THROWS_AS(projection_witness(tail, 1, sq), GeometryError);
}

TEST_CASE("odd-case witness on a long polyline") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  std::mt19937_64 rng(109);
  int checked = 0;
  for (int i = 0; i < 50 && checked < 10; ++i) {
    std::vector<Point> pts;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (pts.size() < 12) {
      const Point p = pt(u(rng), u(rng));
      if (pts.empty() || pts.back() != p) pts.push_back(p);
    }
    const Polyline poly(pts, false);
    if (polyline_length(poly) <= s_bound(sq, 3)) continue;
    const auto angle = projection_witness(poly, 3, sq);
    REQUIRE(angle.has_value());
    const Direction dir = Direction::from_angle(*angle);
    const ChordTerm chord = chord_term(poly);
    const double margin =
        projection_length(poly, dir) - 2.0 * width(sq, dir) - chord.length * std::abs(std::cos(*angle - chord.angle));
    CHECK(margin > 0.0);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("sweep at angle 0 on the tail example gives the vertical line x = 0.05") {
  const Polyline tail = square_with_tail();
  const auto sweep = deepest_perpendicular_line(tail, 0.0);
  REQUIRE(sweep.has_value());
  CHECK(sweep->depth == 3);
  const Direction n = sweep->line.normal();
  CHECK(std::abs(std::abs(n.x) - 1.0) < 1e-12);
  CHECK(std::abs(n.y) < 1e-12);
  CHECK(std::abs(std::abs(sweep->line.offset()) - 0.05) < 1e-12);
  const MultiplicityReport report = line_multiplicity(sweep->line, tail);
  REQUIRE(report.count == 3);
  std::vector<std::pair<double, double>> hits;
  for (const Component& c : report.components) {
    CHECK(c.is_point());
    hits.emplace_back(c.start.x, c.start.y);
  }
  std::sort(hits.begin(), hits.end(), [](auto a, auto b) { return a.second < b.second; });
  CHECK(hits[0].first == doctest::Approx(0.05));
  CHECK(hits[0].second == doctest::Approx(0.0));
  CHECK(hits[1].second == doctest::Approx(0.025));
  CHECK(hits[2].second == doctest::Approx(1.0));
}

TEST_CASE("find stabbing line examples") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const MultiplicityReport tail = find_stabbing_line(square_with_tail(), 2, sq);
  CHECK(tail.count >= 3);
  CHECK(line_multiplicity(tail.witness, square_with_tail()).count == tail.count);

  // Ring once plus a fifth of a shrunken inner ring.
  std::vector<Point> pts{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(0, 0)};
  const Polyline inner = inset_loop(sq, 0.1, 100, 3);
  for (std::size_t i = 0; i < 20; ++i) pts.push_back(inner.vertices()[i]);
  const Polyline extended(pts, false);
  REQUIRE(polyline_length(extended) > 4.0);
  const MultiplicityReport ext = find_stabbing_line(extended, 2, sq);
  CHECK(ext.count >= 3);
  CHECK(line_multiplicity(ext.witness, extended).count == ext.count);

  CHECK_THROWS_AS(find_stabbing_line(konvex::testing::square_ring(), 2, sq), BoundNotExceeded);
  ConstructionParams params;
  params.r = 2;
  params.epsilon = 0.4;
  const ConstructionResult built = build_extremal_curve(sq, params);
  try {
    find_stabbing_line(built.curve, 2, sq);
    FAIL("expected the bound-not-exceeded error");
  } catch (const BoundNotExceeded& e) {
    CHECK(std::string(e.what()).find("bound not exceeded") != std::string::npos);
  }
}

TEST_CASE("parity of proper crossings for lines missing the vertices and the chord") {
  std::mt19937_64 rng(113);
  int checked = 0;
  while (checked < 1000) {
    const Polyline poly = konvex::testing::random_polyline(rng, 1 + checked % 20);
    const Line line = konvex::testing::random_line(rng);
    bool avoids = true;
    for (const Point& p : poly.vertices()) avoids = avoids && line.side(p) != 0;
    const Point& a = poly.vertices().front();
    const Point& b = poly.vertices().back();
    if (!avoids || line.side(a) != line.side(b)) continue;
    CHECK(proper_crossings(line, poly) % 2 == 0);
    ++checked;
  }
}
