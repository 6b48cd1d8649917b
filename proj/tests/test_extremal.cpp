#include <doctest.h>

#include <algorithm>
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

ConstructionResult build(int r, double eps, std::uint64_t seed = 1, std::size_t samples = 256) {
  ConstructionParams params;
  params.r = r;
  params.epsilon = eps;
  params.seed = seed;
  params.samples_per_loop = samples;
  return build_extremal_curve(konvex::testing::unit_square(), params);
}

bool all_left_turns(const Polyline& ring) {
  const auto& v = ring.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orientation(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) != Orientation::left) return false;
  }
  return true;
}

bool no_three_collinear(const std::vector<Point>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        if (orientation(v[i], v[j], v[k]) == Orientation::collinear) return false;
      }
    }
  }
  return true;
}

void check_inside(const Polyline& curve, const ConvexPolygon& body) {
  for (const Point& p : curve.vertices()) CHECK(contains(body, p) != Location::exterior);
}

}  // namespace

TEST_CASE("inset loop examples") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const Polyline loop = inset_loop(sq, 0.01, 64, 1);
  CHECK(loop.closed());
  CHECK(loop.vertices().size() >= 60);
  CHECK(all_left_turns(loop));
  CHECK(polyline_length(loop) >= 3.8);
  CHECK(polyline_length(loop) < 4.0);
  check_inside(loop, sq);

  double previous = 0.0;
  for (double depth : {0.02, 0.005, 0.001, 0.0001}) {
    const double length = polyline_length(inset_loop(sq, depth, 512, 1));
    CHECK(length > previous);
    previous = length;
  }
  CHECK(previous == doctest::Approx(4.0).epsilon(1e-3));

  CHECK_THROWS_AS(inset_loop(sq, 0.6, 64, 1), GeometryError);
  CHECK_THROWS_AS(inset_loop(sq, 0.01, 2, 1), GeometryError);
}

TEST_CASE("inset loops at increasing depth nest") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const ConvexPolygon outer(inset_loop(sq, 0.01, 64, 5).vertices());
  const Polyline inner = inset_loop(sq, 0.02, 64, 6);
  for (const Point& p : inner.vertices()) CHECK(contains(outer, p) == Location::interior);

  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    const ConvexPolygon body = konvex::testing::random_convex_polygon(rng, 3 + i % 10);
    // Depths proportional to the smallest width keep thin triangles feasible.
    double thin = 1e300;
    for (int k = 0; k < 180; ++k) thin = std::min(thin, width(body, M_PI * k / 180.0));
    const ConvexPolygon a(inset_loop(body, 0.01 * thin, 48, i).vertices());
    const Polyline b = inset_loop(body, 0.03 * thin, 48, i + 100);
    for (const Point& p : a.ring()) CHECK(contains(body, p) == Location::interior);
    for (const Point& p : b.vertices()) CHECK(contains(a, p) == Location::interior);
  }
}

TEST_CASE("inset loops are deterministic per seed") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  CHECK(inset_loop(sq, 0.01, 64, 9).vertices() == inset_loop(sq, 0.01, 64, 9).vertices());
  CHECK(inset_loop(sq, 0.01, 64, 9).vertices() != inset_loop(sq, 0.01, 64, 10).vertices());
}

TEST_CASE("diameter chord arc examples") {
  const ConvexPolygon inner = ConvexPolygon(inset_loop(konvex::testing::unit_square(), 0.05, 64, 2).vertices());
  const double d = diameter(inner).length;
  const Polyline arc = diameter_chord_arc(inner, 0.01, 32, 3);
  CHECK_FALSE(arc.closed());
  CHECK(arc.vertices().size() == 33);
  CHECK(polyline_length(arc) >= d);
  CHECK(polyline_length(arc) <= d + 4 * 0.01);
  CHECK(no_three_collinear(arc.vertices()));

  // Consistent turning along the arc.
  const auto& v = arc.vertices();
  const Orientation first = orientation(v[0], v[1], v[2]);
  CHECK(first != Orientation::collinear);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) CHECK(orientation(v[i], v[i + 1], v[i + 2]) == first);

  const double flat = polyline_length(diameter_chord_arc(inner, 1e-5, 32, 3));
  CHECK(flat == doctest::Approx(d).epsilon(1e-6));

  CHECK_THROWS_AS(diameter_chord_arc(inner, 2.0, 32, 3), GeometryError);
  CHECK_THROWS_AS(diameter_chord_arc(inner, 0.0, 32, 3), GeometryError);
}

TEST_CASE("even construction examples") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const ConstructionResult two = build(2, 0.2);
  CHECK(two.achieved_length >= 3.8);
  CHECK(two.achieved_length == doctest::Approx(polyline_length(two.curve)));
  CHECK(max_line_multiplicity(two.curve).count <= 2);
  CHECK(two.target == doctest::Approx(4.0));
  CHECK(two.loops.size() == 1);
  check_inside(two.curve, sq);

  const ConstructionResult four = build(4, 0.4);
  CHECK(four.achieved_length >= 7.6);
  CHECK(max_line_multiplicity(four.curve).count <= 4);
  CHECK(four.loops.size() == 2);
  check_inside(four.curve, sq);

  // Slack above the whole perimeter still yields a valid curve.
  const ConstructionResult loose = build(2, 5.0);
  CHECK(loose.multiplicity.count <= 2);
  CHECK(loose.achieved_length >= 0.0);
}

TEST_CASE("odd construction examples") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  const ConstructionResult three = build(3, 0.3);
  CHECK(three.achieved_length >= 4.0 + std::sqrt(2.0) - 0.3);
  CHECK(max_line_multiplicity(three.curve).count <= 3);
  CHECK(three.loops.size() == 1);
  check_inside(three.curve, sq);

  const ConstructionResult five = build(5, 0.5);
  CHECK(five.achieved_length >= 8.0 + std::sqrt(2.0) - 0.5);
  CHECK(max_line_multiplicity(five.curve).count <= 5);
  CHECK(five.loops.size() == 2);
  check_inside(five.curve, sq);
}

TEST_CASE("construction preconditions") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  ConstructionParams params;
  params.r = 1;
  CHECK_THROWS_AS(build_extremal_curve(sq, params), GeometryError);
  params.r = 3;
  CHECK_THROWS_AS(build_even_curve(sq, params), GeometryError);
  params.r = 4;
  CHECK_THROWS_AS(build_odd_curve(sq, params), GeometryError);
  params.epsilon = 0.0;
  CHECK_THROWS_AS(build_even_curve(sq, params), GeometryError);
}

TEST_CASE("builder output is verified, simple, contained and nested") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 6; ++i) {
    const ConvexPolygon body = konvex::testing::random_convex_polygon(rng, 3 + 2 * i);
    ConstructionParams params;
    params.r = 2 + i % 4;
    params.epsilon = 0.1 * s_bound(body, params.r);
    params.samples_per_loop = 96;
    params.seed = static_cast<std::uint64_t>(i);
    const ConstructionResult built = build_extremal_curve(body, params);
    CHECK(built.achieved_length >= s_bound(body, params.r) - params.epsilon);
    CHECK(max_line_multiplicity(built.curve).count <= static_cast<std::size_t>(params.r));
    if (params.r % 2 == 0) {
      CHECK(is_simple(built.curve));
    } else {
      // The bowed chord ends on a vertex of the innermost loop; that touch is
      // the only self-contact.
      std::vector<Point> head = built.curve.vertices();
      const Point end = head.back();
      head.pop_back();
      CHECK(is_simple(Polyline(head, false)));
      const auto& ring = built.loops.back().vertices();
      CHECK(std::find(ring.begin(), ring.end(), end) != ring.end());
      CHECK(std::count(head.begin(), head.end(), end) == 1);
    }
    check_inside(built.curve, body);
    for (std::size_t k = 0; k + 1 < built.loops.size(); ++k) {
      const ConvexPolygon outer(built.loops[k].vertices());
      // Vertex 0 of an inner loop is the junction shared with the loop outside it.
      const auto& inner = built.loops[k + 1].vertices();
      for (std::size_t v = 1; v < inner.size(); ++v) CHECK(contains(outer, inner[v]) == Location::interior);
    }
    CHECK(line_multiplicity(built.multiplicity.witness, built.curve).count == built.multiplicity.count);
  }
}

TEST_CASE("achieved length improves as epsilon shrinks") {
  for (int r : {2, 3}) {
    double previous = 0.0;
    for (double eps : {0.4, 0.2, 0.1}) {
      const std::size_t m = static_cast<std::size_t>(std::ceil(25.6 / eps));
      const ConstructionResult built = build(r, eps, 1, m);
      CHECK(built.achieved_length > previous);
      CHECK(built.achieved_length >= built.target - eps);
      CHECK(built.achieved_length <= built.target);
      previous = built.achieved_length;
    }
  }
}

TEST_CASE("constructions are deterministic per seed") {
  const ConstructionResult a = build(3, 0.3, 42, 128);
  const ConstructionResult b = build(3, 0.3, 42, 128);
  CHECK(a.curve.vertices() == b.curve.vertices());
  CHECK(a.multiplicity.witness == b.multiplicity.witness);
  CHECK(a.retries_used == b.retries_used);
}

TEST_CASE("resolved parameters") {
  const ConvexPolygon sq = konvex::testing::unit_square();
  ConstructionParams params;
  params.r = 4;
  params.epsilon = 0.4;
  const ResolvedParams p = resolve(params, sq);
  CHECK(p.inset > 0.0);
  CHECK(p.gap > 0.0);
  CHECK(p.gap <= 0.01);
  CHECK(p.samples_per_loop >= 256);
  params.inset = 0.003;
  params.gap = 0.02;
  CHECK(resolve(params, sq).inset == 0.003);
  CHECK(resolve(params, sq).gap == 0.02);
  params.r = 1;
  CHECK_THROWS_AS(resolve(params, sq), GeometryError);
}
