#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "superdense/error.hpp"
#include "superdense/geodesic.hpp"

using namespace superdense;

namespace {

std::vector<int> random_perm(std::mt19937_64& rng, int s) {
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

PolysquareSurface random_surface(std::mt19937_64& rng, int max_s) {
  for (;;) {
    int s = 1 + static_cast<int>(rng() % max_s);
    try {
      return PolysquareSurface::from_permutations(random_perm(rng, s), random_perm(rng, s));
    } catch (const Error&) {
    }
  }
}

GeodesicState random_state(std::mt19937_64& rng, const PolysquareSurface& surface, const Slope& slope) {
  int sq = static_cast<int>(rng() % surface.size());
  Rational x(1 + static_cast<int>(rng() % 1008), 1009);
  Rational y(1 + static_cast<int>(rng() % 1008), 1009);
  return GeodesicState(surface, slope, sq, x, y);
}

double length(const Segment& s) { return std::hypot(s.x1 - s.x0, s.y1 - s.y0); }

}  // namespace

TEST_CASE("tracer agrees with the IET orbit") {
  std::mt19937_64 rng(2024);
  std::vector<PolysquareSurface> surfaces{PolysquareSurface::l_surface()};
  for (int i = 0; i < 5; ++i) surfaces.push_back(random_surface(rng, 8));
  for (auto spec : {"cf:0;(1)", "cf:0;(2)", "cf:0;(1,2)"}) {
    auto slope = Slope::parse(spec);
    for (const auto& surface : surfaces) {
      auto st = random_state(rng, surface, slope);
      const std::size_t m = 10000;
      auto traced = trace_crossings(st, m);
      auto iet = IetMap(surface, slope).orbit(traced.front(), m);
      REQUIRE(traced.size() == m);
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < m; ++i) mismatches += !(traced[i] == iet[i]);
      CHECK(mismatches == 0);
      auto seq = crossing_sequence(st, m);
      mismatches = 0;
      for (std::size_t i = 0; i < m; ++i) mismatches += seq.orbit.square(i) != traced[i].square();
      CHECK(mismatches == 0);
      CHECK(seq.orbit.point(m - 1, slope) == traced.back());
    }
  }
}

TEST_CASE("torus crossings from the origin") {
  auto slope = Slope::parse("cf:0;(1)");
  GeodesicState st(PolysquareSurface::torus(), slope, 0, Rational(0), Rational(0));
  auto seq = crossing_sequence(st, 30);
  CHECK(seq.first_tau == 0);
  for (std::uint64_t i = 0; i < 30; ++i)
    CHECK(seq.orbit.offset(i, slope) == LinearForm(fractional_part(static_cast<std::int64_t>(i), slope)));
  auto traced = trace_crossings(st, 30);
  for (std::uint64_t i = 0; i < 30; ++i) CHECK(traced[i] == seq.orbit.point(i, slope));
}

TEST_CASE("time law") {
  auto slope = Slope::parse("cf:0;(2)");
  GeodesicState st(PolysquareSurface::l_surface(), slope, 1, Rational(1, 3), Rational(1, 2));
  auto seq = crossing_sequence(st, 100);
  CHECK(seq.first_tau == Rational(1, 2));
  const double speed = std::sqrt(1 + std::pow(std::sqrt(2.0) - 1, 2));
  for (std::uint64_t i = 0; i + 1 < 100; ++i) {
    CHECK(seq.tau(i + 1) - seq.tau(i) == 1);
    CHECK(seq.time(i + 1, slope) - seq.time(i, slope) == doctest::Approx(speed).epsilon(1e-12));
  }
  // The position at every crossing time sits on the bottom edge.
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto p = position_at_tau(st, seq.tau(i));
    CHECK(p.y == 0);
    CHECK(p.square == seq.orbit.square(i));
    CHECK(p.x == seq.orbit.offset(i, slope));
  }
}

TEST_CASE("position_at") {
  auto half = Slope::parse("rat:1/2");
  GeodesicState st(PolysquareSurface::torus(), half, 0, Rational(0), Rational(0));
  auto p = position_at(st, std::sqrt(5.0) / 4);
  CHECK(p.square == 0);
  CHECK(p.x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(0.5).epsilon(1e-12));
  auto golden = Slope::parse("cf:0;(1)");
  GeodesicState l(PolysquareSurface::l_surface(), golden, 2, Rational(1, 5), Rational(2, 7));
  auto p0 = position_at(l, 0);
  CHECK(p0.square == 2);
  CHECK(p0.x == doctest::Approx(0.2));
  CHECK(p0.y == doctest::Approx(2.0 / 7));
  // Exact and floating positions agree away from edges.
  for (int i = 1; i < 50; ++i) {
    Rational tau(i * 37 + 5, 53);
    auto e = position_at_tau(l, tau);
    auto f = position_at(l, static_cast<double>(tau) * speed_factor(golden));
    CHECK(e.square == f.square);
    CHECK(static_cast<double>(e.y) == doctest::Approx(f.y).epsilon(1e-9));
  }
  CHECK_THROWS_AS(position_at(l, -1), Error);
}

TEST_CASE("segments") {
  auto golden = Slope::parse("cf:0;(1)");
  const double a = (std::sqrt(5.0) - 1) / 2;
  GeodesicState st(PolysquareSurface::l_surface(), golden, 0, Rational(1, 3), Rational(1, 2));
  // Before the first crossing (tau = 1/2 vertically, (1 - 1/3)/a horizontally).
  auto one = trace_segments(st, 0.3);
  CHECK(one.size() == 1);
  for (double t_max : {1.0, 7.5, 40.0, 333.3}) {
    auto segs = trace_segments(st, t_max);
    const double tau = t_max / std::sqrt(1 + a * a);
    // Edge events strictly before tau: horizontal at h - y0, vertical at (v - x0)/a.
    long horizontal = static_cast<long>(std::ceil(tau + 0.5 - 1));
    long vertical = static_cast<long>(std::ceil(tau * a + 1.0 / 3 - 1));
    CHECK(segs.size() == static_cast<std::size_t>(horizontal + vertical + 1));
    double total = 0;
    for (const auto& s : segs) total += length(s);
    CHECK(total == doctest::Approx(t_max).epsilon(1e-9));
  }
}

TEST_CASE("periodic torus orbit repeats its segments") {
  auto slope = Slope::parse("rat:1/3");
  GeodesicState st(PolysquareSurface::torus(), slope, 0, Rational(1, 7), Rational(1, 5));
  const double period = 3 * std::sqrt(1 + 1.0 / 9);
  auto segs = trace_segments(st, 2 * period + 0.01);
  // Per period: 3 horizontal and 1 vertical crossing.
  const std::size_t n = 4;
  REQUIRE(segs.size() >= 2 * n + 1);
  for (std::size_t i = 1; i + n < segs.size() - 1; ++i) {
    CHECK(segs[i].square == segs[i + n].square);
    CHECK(segs[i].x0 == doctest::Approx(segs[i + n].x0));
    CHECK(segs[i].y0 == doctest::Approx(segs[i + n].y0));
    CHECK(segs[i].x1 == doctest::Approx(segs[i + n].x1));
    CHECK(segs[i].y1 == doctest::Approx(segs[i + n].y1));
  }
}

TEST_CASE("covering radius") {
  auto golden = Slope::parse("cf:0;(1)");
  GeodesicState torus(PolysquareSurface::torus(), golden, 0, Rational(1, 2), Rational(1, 2));
  // A single point: the farthest cell centre of a 4x4 grid.
  CHECK(covering_radius(torus, 0, 4) == doctest::Approx(std::hypot(0.375, 0.375)));

  GeodesicState st(PolysquareSurface::l_surface(), golden, 0, Rational(1, 3), Rational(1, 2));
  double previous = 10;
  for (double t : {0.0, 5.0, 20.0, 80.0, 320.0}) {
    double r = covering_radius(st, t, 16);
    CHECK(r <= previous);
    previous = r;
  }
  // Thread count does not change the answer.
  CHECK(covering_radius(st, 200, 24, 1) == covering_radius(st, 200, 24, 3));

  // Same-square distances bound the chart distance from above.
  auto segs = trace_segments(st, 60);
  const int grid = 10;
  double own_max = 0;
  for (int q = 0; q < 3; ++q)
    for (int ix = 0; ix < grid; ++ix)
      for (int iy = 0; iy < grid; ++iy) {
        double px = (ix + 0.5) / grid, py = (iy + 0.5) / grid, best = 1e9;
        for (const auto& s : segs) {
          if (s.square != q) continue;
          double vx = s.x1 - s.x0, vy = s.y1 - s.y0;
          double len2 = vx * vx + vy * vy;
          double u = len2 == 0 ? 0 : std::clamp(((px - s.x0) * vx + (py - s.y0) * vy) / len2, 0.0, 1.0);
          best = std::min(best, std::hypot(s.x0 + u * vx - px, s.y0 + u * vy - py));
        }
        own_max = std::max(own_max, best);
      }
  CHECK(covering_radius(PolysquareSurface::l_surface(), golden, segs, grid) <= own_max + 1e-12);
  CHECK_THROWS_AS(covering_radius(st, 1, 0), Error);
}

TEST_CASE("vertex hits are reported") {
  auto golden = Slope::parse("cf:0;(1)");
  // Starting at a corner of the L-surface: its one vertex is a cone point.
  GeodesicState st(PolysquareSurface::l_surface(), golden, 0, Rational(0), Rational(0));
  CHECK_THROWS_AS(trace_crossings(st, 3), SingularityError);
  // The torus has no cone point, so the same start is fine.
  GeodesicState t(PolysquareSurface::torus(), golden, 0, Rational(0), Rational(0));
  CHECK(trace_crossings(t, 5).size() == 5);
}
