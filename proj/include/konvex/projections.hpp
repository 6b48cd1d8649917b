#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "konvex/geometry.hpp"

namespace konvex {

// Integration mode for the Cauchy and Crofton integrals over [0, 2*pi).
struct ClosedForm {};
struct Quadrature {
  std::size_t panels = 100000;  // composite midpoint rule; at least 4
};
using IntegrationMode = std::variant<ClosedForm, Quadrature>;

// Total length of the segment projections onto the direction `angle`:
// sum of l_i * |cos(angle - alpha_i)|.
double projection_length(const Polyline& poly, double angle);
double projection_length(const Polyline& poly, Direction dir);

// Integral of width(body, a) over a full turn; equals 2 * perimeter.
double cauchy_width_integral(const ConvexPolygon& body, IntegrationMode mode);

// A quarter of the integral of projection_length over a full turn; equals the
// polyline length.
double crofton_length(const Polyline& poly, IntegrationMode mode);

// Endpoint chord of an open polyline. Coincident ends give length 0, angle 0.
struct ChordTerm {
  double length = 0.0;
  double angle = 0.0;
};
ChordTerm chord_term(const Polyline& poly);

struct ProjectionProfile {
  std::vector<std::pair<double, double>> evaluations;  // (angle, value), angle ascending
  double closed_form_integral = 0.0;
};

// Samples over `samples` equally spaced angles in [0, 2*pi).
ProjectionProfile polyline_profile(const Polyline& poly, std::size_t samples);
ProjectionProfile width_profile(const ConvexPolygon& body, std::size_t samples);

}  // namespace konvex
