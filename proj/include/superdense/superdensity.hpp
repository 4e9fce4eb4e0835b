#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superdense/geodesic.hpp"
#include "superdense/special_intervals.hpp"

namespace superdense {

/// Longest subinterval of [0, s) (as a line) meeting no crossing point of a
/// window of the orbit.
struct FreeGapReport {
  int s = 1;
  std::uint64_t begin = 0, end = 0;  // window [begin, end) of 0-based indices
  std::uint64_t m = 0;               // points in the window
  LinearForm gap;
  LinearForm lower, upper;  // the realizing interval
  bool lower_is_point = false, upper_is_point = false;
};

/// Whole orbit, or the window [begin, end). An empty window (begin == end)
/// has gap s; a window outside the orbit raises `empty_window`.
FreeGapReport longest_free_gap(const CompactOrbit& orbit, const Slope& slope);
FreeGapReport longest_free_gap(const CompactOrbit& orbit, const Slope& slope, std::uint64_t begin, std::uint64_t end);

/// m* = 2s + 1 + 2 * sum_{u=1..s} q_{k+8u-7}.
Integer crossing_threshold(int s, const Slope& slope, long k);

/// Default start: square 1, x = 1/3, y = 1/2.
GeodesicState default_start(const PolysquareSurface& surface, const Slope& slope);

struct GapProductRow {
  std::uint64_t m = 0;
  LinearForm gap;
  double gap_value = 0;
  double product = 0;  // m * g(m)
};

/// g(m) for prefixes of one orbit of length max(m_list).
std::vector<GapProductRow> gap_product_scan(const GeodesicState& start, const std::vector<std::uint64_t>& m_list);

struct FreeCopyEntry {
  std::int64_t q = 0;
  int chain = 0;          // 0 on (0, 1-alpha), 1 on (1-alpha, 1)
  std::vector<int> free;  // R(q): copies r with (r + J_k(q)) free of the window
  std::vector<int> orbit_free;  // copies missed by all of y_1..y_m
};

struct FreeCopyAudit {
  long k = 0;
  int s = 1;
  std::uint64_t m = 0;
  std::uint64_t margin = 0;  // window is margin <= i <= m - margin (1-based)
  std::vector<FreeCopyEntry> entries;  // chain order
  std::uint64_t neighbor_pairs = 0;
  std::uint64_t unsynchronized_pairs = 0;  // neighbours with R(q') != R(q'')
  // q whose s copies are all missed by the whole orbit (the Simple Case
  // hypothesis); if any exists then m <= 2 q_{k+1} + 2s must hold.
  std::vector<std::int64_t> all_free;
  bool simple_case_bound = true;
};

/// `margin` defaults to q_{k+1}.
FreeCopyAudit free_copy_audit(const PolysquareSurface& surface, const Slope& slope, long k, const CompactOrbit& crossings,
                              std::optional<std::uint64_t> margin = std::nullopt);

struct CertificateOptions {
  std::uint64_t budget = 10'000'000;
  std::optional<GeodesicState> start;
  ComparisonMode mode = ComparisonMode::exact;
};

/// Budget from SUPERDENSE_BUDGET, else 10^7.
std::uint64_t default_budget();

struct Certificate {
  long k = 0;
  int s = 1;
  std::uint64_t digit_bound = 0;  // A
  std::uint64_t m_star = 0;
  FreeGapReport gap;
  Rational gap_limit;        // 8/q_k
  bool gap_ok = false;       // g < 8/q_k
  double product = 0;        // m* g
  double length_product = 0; // M g with M = (m* + 1) sqrt(1 + alpha^2)
  double ceiling = 0;        // (4s+1)(A+1)^(8s-7) 8 sqrt 2
  bool product_ok = false;   // both products certified <= ceiling

  bool passed() const { return gap_ok && product_ok; }
};

/// Throws BudgetError when m* exceeds the budget and `degenerate_level` or
/// `invalid_argument` when the preconditions fail.
Certificate superdensity_certificate(const PolysquareSurface& surface, const Slope& slope, long k,
                                     const CertificateOptions& options = {});

}  // namespace superdense
