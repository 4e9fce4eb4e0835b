#pragma once

#include <cstdint>
#include <vector>

#include "superdense/cf.hpp"

namespace superdense {

/// n = mu*q_k + q_{k-1} + r with 1 <= mu <= a_{k+1} and 0 <= r < q_k.
struct Decomposition {
  long k = 0;
  std::uint64_t mu = 1;
  std::uint64_t r = 0;
};

struct GapEntry {
  LinearForm gap;
  std::uint64_t multiplicity = 0;
};

/// Gaps of {0, alpha, ..., n alpha} mod 1 in the order of the theorem's
/// clauses (eps_k first); entries with multiplicity zero are omitted.
struct GapSpectrum {
  std::uint64_t n = 0;
  Decomposition decomposition;
  std::vector<GapEntry> entries;
};

Decomposition decompose(std::uint64_t n, const Slope& slope);
GapSpectrum gap_spectrum(std::uint64_t n, const Slope& slope);

/// Circular order of the points {i alpha}, 0 <= i <= n, without any
/// comparisons: the successor of i is i + up, i - down, or i + up - down.
class RotationOrder {
 public:
  RotationOrder(const Slope& slope, std::uint64_t n);

  std::uint64_t n() const { return n_; }
  /// Index of the nearest point to the right of 0 and to the left of 0.
  std::int64_t up() const { return up_; }
  std::int64_t down() const { return down_; }
  /// {up*alpha} and 1 - {down*alpha}: the gaps on either side of 0.
  IntForm up_gap() const { return up_gap_; }
  IntForm down_gap() const { return down_gap_; }

  std::int64_t successor(std::int64_t i) const {
    if (i + up_ <= static_cast<std::int64_t>(n_)) return i + up_;
    if (i - down_ >= 0) return i - down_;
    return i + up_ - down_;
  }
  /// Length of the gap from {i alpha} to its successor.
  IntForm gap_after(std::int64_t i) const {
    if (i + up_ <= static_cast<std::int64_t>(n_)) return up_gap_;
    if (i - down_ >= 0) return down_gap_;
    return up_gap_ + down_gap_;
  }
  std::int64_t predecessor(std::int64_t i) const {
    if (i - up_ >= 0) return i - up_;
    if (i + down_ <= static_cast<std::int64_t>(n_)) return i + down_;
    return i - up_ + down_;
  }
  IntForm gap_before(std::int64_t i) const { return gap_after(predecessor(i)); }

  /// Indices in increasing order of {i alpha}, starting with 0.
  std::vector<std::int64_t> sorted() const;

 private:
  std::uint64_t n_;
  std::int64_t up_ = 0, down_ = 0;
  IntForm up_gap_, down_gap_;
};

}  // namespace superdense
