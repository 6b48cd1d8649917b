#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "konvex/extremal.hpp"
#include "konvex/geometry.hpp"
#include "konvex/stabbing.hpp"

namespace konvex {

// Threshold length s(K, r): r p / 2 for even r, (r - 1) p / 2 + d for odd r.
// Throws GeometryError for r < 2.
double s_bound(const ConvexPolygon& body, int r);

enum class BoundSide { upper_checked, lower_realized, falsification };
std::string to_string(BoundSide side);

struct FalsificationViolation {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string generator;
  double length = 0.0;
  std::size_t multiplicity = 0;
};

struct FalsificationStats {
  std::size_t trials = 0;
  std::size_t admissible = 0;         // trials with measured multiplicity <= r
  double max_ratio = 0.0;             // max length / s over admissible trials
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> generators;  // trials per generator kind
  std::vector<FalsificationViolation> violations;
};

struct BoundReport {
  double perimeter = 0.0;
  double diameter = 0.0;
  int r = 2;
  double s = 0.0;
  BoundSide side = BoundSide::upper_checked;

  double length = 0.0;                            // upper_checked
  bool within_bound = true;                       // upper_checked
  std::optional<MultiplicityReport> stabbing;     // upper_checked, when exceeded
  std::optional<ConstructionResult> construction; // lower_realized
  std::optional<FalsificationStats> falsification;
};

// Compares the polyline length with s(K, r); when exceeded, attaches a
// verified line meeting it in at least r + 1 components. Throws GeometryError
// if a vertex lies outside the body.
BoundReport check_upper_bound(const Polyline& poly, const ConvexPolygon& body, int r);

// Builds and verifies an extremal curve.
BoundReport realize_lower_bound(const ConvexPolygon& body, const ConstructionParams& params);

// Random polylines inside the body; every one whose measured multiplicity is
// at most r must have length at most s. Violations are reported, not thrown.
BoundReport falsify(const ConvexPolygon& body, int r, std::size_t trials, std::uint64_t seed);

// Exact segment-pair scan.
bool is_simple(const Polyline& poly);

struct Prop1Result {
  bool convex = false;
  std::size_t max_mult = 0;
  bool consistent = false;
  MultiplicityReport witness;
};

// Discrete analog of: a simple closed curve bounds a strictly convex body iff
// no line meets it more than three times. Throws GeometryError for open or
// non-simple input.
Prop1Result prop1_check(const Polyline& ring);

}  // namespace konvex
