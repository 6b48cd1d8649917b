#include "konvex/projections.hpp"

#include <cmath>

namespace konvex {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Integral of |cos(a - alpha)| over a full turn, for any alpha.
constexpr double kAbsCosTurn = 4.0;

std::size_t checked_panels(const Quadrature& q) {
  if (q.panels < 4) throw GeometryError("quadrature needs at least 4 panels");
  return q.panels;
}

template <typename F>
double midpoint_rule(std::size_t panels, F&& f) {
  const double h = kTwoPi / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t j = 0; j < panels; ++j) {
    sum += f((static_cast<double>(j) + 0.5) * h);
  }
  return sum * h;
}

}  // namespace

double projection_length(const Polyline& poly, Direction dir) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.segment_count(); ++i) {
    const Segment s = poly.segment(i);
    // l_i |cos(a - alpha_i)| is |dir . (b - a)|; degenerate segments add 0.
    total += std::abs(dir.x * (s.b.xd() - s.a.xd()) + dir.y * (s.b.yd() - s.a.yd()));
  }
  return total;
}

double projection_length(const Polyline& poly, double angle) {
  return projection_length(poly, Direction::from_angle(angle));
}

double cauchy_width_integral(const ConvexPolygon& body, IntegrationMode mode) {
  if (const auto* q = std::get_if<Quadrature>(&mode)) {
    return midpoint_rule(checked_panels(*q), [&](double a) { return width(body, a); });
  }
  // width = (1/2) sum l_i |cos(a - alpha_i)| over the edges.
  const Polyline ring = body.boundary();
  double total = 0.0;
  for (std::size_t i = 0; i < ring.segment_count(); ++i) {
    total += 0.5 * ring.segment(i).length() * kAbsCosTurn;
  }
  return total;
}

double crofton_length(const Polyline& poly, IntegrationMode mode) {
  if (const auto* q = std::get_if<Quadrature>(&mode)) {
    const double integral =
        midpoint_rule(checked_panels(*q), [&](double a) { return projection_length(poly, a); });
    return integral / kAbsCosTurn;
  }
  return polyline_length(poly);
}

ChordTerm chord_term(const Polyline& poly) {
  const auto& v = poly.vertices();
  if (poly.closed() || v.front() == v.back()) return ChordTerm{};
  const Point& a = v.front();
  const Point& b = v.back();
  double angle = std::atan2(b.yd() - a.yd(), b.xd() - a.xd());
  if (angle < 0.0) angle += kTwoPi;
  return ChordTerm{distance(a, b), angle};
}

ProjectionProfile polyline_profile(const Polyline& poly, std::size_t samples) {
  ProjectionProfile profile;
  profile.evaluations.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    profile.evaluations.emplace_back(a, projection_length(poly, a));
  }
  profile.closed_form_integral = kAbsCosTurn * polyline_length(poly);
  return profile;
}

ProjectionProfile width_profile(const ConvexPolygon& body, std::size_t samples) {
  ProjectionProfile profile;
  profile.evaluations.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    profile.evaluations.emplace_back(a, width(body, a));
  }
  profile.closed_form_integral = cauchy_width_integral(body, ClosedForm{});
  return profile;
}

}  // namespace konvex
