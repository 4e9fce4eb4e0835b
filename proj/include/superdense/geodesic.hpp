#pragma once

#include <cstdint>
#include <vector>

#include "superdense/iet.hpp"

namespace superdense {

/// A unit-speed geodesic of slope 1/alpha, direction (alpha, 1)/sqrt(1+alpha^2),
/// started at (x, y) in square `square` (0-based, 0 <= x, y < 1).
struct GeodesicState {
  GeodesicState(PolysquareSurface surface, Slope slope, int square, Rational x, Rational y);

  PolysquareSurface surface;
  Slope slope;
  int square;
  Rational x;
  Rational y;
};

/// Crossings with the horizontal edges. Point i (0-based) is y_{i+1}; its
/// time is t = (tau_1 + i) * sqrt(1 + alpha^2), tau measuring vertical travel.
struct CrossingSequence {
  CompactOrbit orbit;
  Rational first_tau;

  std::uint64_t size() const { return orbit.size(); }
  Rational tau(std::uint64_t i) const { return first_tau + Rational(static_cast<std::int64_t>(i)); }
  double time(std::uint64_t i, const Slope& slope) const;
};

/// sqrt(1 + alpha^2) as a double.
double speed_factor(const Slope& slope);

/// Independent ray tracer in unfolded coordinates: the first m crossing
/// points, computed from edge events without using T.
std::vector<ExactPoint> trace_crossings(const GeodesicState& state, std::size_t m);

/// y_1 from the tracer, then the orbit of T in compact form.
CrossingSequence crossing_sequence(const GeodesicState& state, std::uint64_t m);

struct ExactPosition {
  int square;
  LinearForm x;
  Rational y;
};

struct Position {
  int square;
  double x;
  double y;
};

/// Position after vertical travel tau (time tau * sqrt(1 + alpha^2)).
ExactPosition position_at_tau(const GeodesicState& state, const Rational& tau);
Position position_at(const GeodesicState& state, double t);

struct Segment {
  int square;
  double x0, y0, x1, y1;
};

/// Maximal straight pieces per square for times in [0, t_max].
std::vector<Segment> trace_segments(const GeodesicState& state, double t_max);

/// Largest distance from a grid point (cell centres, grid x grid per square)
/// to the traced segments, measured in the square's own chart and the four
/// charts across its edges.
double covering_radius(const GeodesicState& state, double t_max, int grid, int jobs = 1);
double covering_radius(const PolysquareSurface& surface, const Slope& slope,
                       const std::vector<Segment>& segments, int grid, int jobs = 1);

}  // namespace superdense
