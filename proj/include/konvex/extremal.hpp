#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "konvex/geometry.hpp"
#include "konvex/stabbing.hpp"

namespace konvex {

struct ConstructionParams {
  int r = 2;
  double epsilon = 0.1;                   // allowed length shortfall below s(K, r)
  std::size_t samples_per_loop = 256;
  std::optional<double> inset;            // depth step between nested loops
  std::optional<double> gap;              // fraction of each loop left open
  std::uint64_t seed = 1;
  int max_retries = 16;

  int loop_count() const { return r / 2; }
};

// Parameters with every default resolved against a body.
struct ResolvedParams {
  int r = 2;
  double epsilon = 0.0;
  std::size_t samples_per_loop = 0;
  double inset = 0.0;
  double gap = 0.0;
  std::uint64_t seed = 0;
  int max_retries = 0;
};
ResolvedParams resolve(const ConstructionParams& params, const ConvexPolygon& body);

struct ConstructionResult {
  Polyline curve;
  double achieved_length = 0.0;
  MultiplicityReport multiplicity;
  double target = 0.0;
  int retries_used = 0;
  ResolvedParams params;          // values used by the successful attempt
  std::vector<Polyline> loops;    // full closed rings the curve was cut from
};

class ConstructionFailure : public VerificationFailure {
 public:
  ConstructionFailure(const std::string& what, MultiplicityReport report)
      : VerificationFailure(what), report_(std::move(report)) {}
  const MultiplicityReport& report() const { return report_; }

 private:
  MultiplicityReport report_;
};

// Strictly convex closed ring inside `body`: the boundary shrunk toward the
// centroid so every edge line moves in by at least `depth`, each edge bent
// outward into a shallow parabola, then sampled at about m points (every
// shrunken corner included, other samples jittered along the curve by the
// seed). Throws GeometryError when depth is too large for the body.
Polyline inset_loop(const ConvexPolygon& body, double depth, std::size_t m, std::uint64_t seed);

// Open arc from one end of a diameter of `inner` to the other, lifted off the
// chord by a parabolic bump of height `bow`. Strictly convex, m + 1 vertices.
// Throws GeometryError when the arc leaves `inner`.
Polyline diameter_chord_arc(const ConvexPolygon& inner, double bow, std::size_t m,
                            std::uint64_t seed);

ConstructionResult build_even_curve(const ConvexPolygon& body, const ConstructionParams& params);
ConstructionResult build_odd_curve(const ConvexPolygon& body, const ConstructionParams& params);
// Dispatches on the parity of params.r.
ConstructionResult build_extremal_curve(const ConvexPolygon& body, const ConstructionParams& params);

}  // namespace konvex
