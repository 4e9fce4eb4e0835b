#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superdense/cf.hpp"

namespace superdense {

/// A division point {q alpha} of A_k and the gap to its successor.
struct PartitionPoint {
  std::int64_t q = 0;
  IntForm value;
  IntForm gap;
};

/// The partition of the circle by {q alpha}, -1 <= q <= q_{k+1} - 2, sorted
/// from the point 0.
struct PartitionAk {
  long k = 0;
  std::vector<PartitionPoint> points;
};

PartitionAk partition(long k, const Slope& slope);

/// Gaps flanking the singular points 0 and 1 - alpha of A_k.
struct BufferZones {
  long k = 0;
  IntForm d_star;       // gap on the left of 0
  IntForm d_star_star;  // gap on the right of 0
  std::int64_t left_neighbor = 0, right_neighbor = 0;  // q of the neighbours of 0
  /// d* is the long gap eps_k + eps_{k+1}.
  bool d_star_is_long = false;
  /// Neighbours of 0 are q_k and (a_{k+1}-1)q_k + q_{k-1}, those of 1-alpha are
  /// the same minus 1 in the same order, with equal gaps.
  bool neighbor_identities = false;

  LinearForm b0_lower() const { return -LinearForm(d_star); }
  LinearForm b0_upper() const { return LinearForm(d_star_star); }
  LinearForm bm1_lower() const { return LinearForm(Rational(1), Rational(-1)) - LinearForm(d_star); }
  LinearForm bm1_upper() const { return LinearForm(Rational(1), Rational(-1)) + LinearForm(d_star_star); }
};

/// True when q_k > q_{k+1} - 2.
bool is_degenerate_level(long k, const Slope& slope);

/// Throws `degenerate_level` for degenerate k.
BufferZones buffer_zones(long k, const Slope& slope);

/// J_k(q) = [{q alpha} - d**, {q alpha} + d*), translated by `copy`.
struct SpecialInterval {
  long k = 0;
  std::int64_t q = 0;
  int copy = 0;
  IntForm center;  // {q alpha}
  IntForm lower, upper;

  LinearForm lower_value() const { return LinearForm(lower) + LinearForm(copy); }
  LinearForm upper_value() const { return LinearForm(upper) + LinearForm(copy); }
  IntForm length() const { return upper - lower; }
};

SpecialInterval special_interval(long k, std::int64_t q, const Slope& slope);
/// {r + J : 0 <= r < s}.
std::vector<SpecialInterval> copy_extension(const SpecialInterval& j, int s);
/// All J_k(q), 1 <= q <= q_{k+1} - 2, in increasing order of {q alpha}.
std::vector<SpecialInterval> special_intervals(long k, const Slope& slope);

struct ChainCoverReport {
  long k = 0;
  int s = 1;
  BufferZones zones;
  std::uint64_t intervals = 0;  // per copy
  bool cover = false;           // interiors cover (0,1-alpha) and (1-alpha,1)
  bool avoidance = false;       // no interior contains 0, 1-alpha or 1
  bool overlap = false;         // chain neighbours overlap by >= eps_k
  LinearForm min_overlap;
  std::size_t chains = 0;
  std::vector<LinearForm> uncovered;  // points of [0, s) outside every interior
  bool uncovered_matches = false;     // uncovered == {j-1, j-alpha}
  bool cross_level = false;  // each neighbour intersection contains a J_{k+8}
  std::uint64_t cross_level_pairs = 0;
  bool growth = false;        // q_{k+9} >= 16 q_{k+1}
  bool length_bound = false;  // length(J_{k+8}) < 3/q_{k+9}
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Exact audit of the special intervals at level k embedded in [0, s).
ChainCoverReport chain_cover_audit(long k, const Slope& slope, int s);

}  // namespace superdense
