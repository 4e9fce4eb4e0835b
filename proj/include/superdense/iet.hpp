#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "superdense/cf.hpp"
#include "superdense/surface.hpp"

namespace superdense {

enum class Direction { forward, inverse };

/// A point a + b*alpha of [0, s), together with the square it lies in.
class ExactPoint {
 public:
  ExactPoint(LinearForm value, int s, const Slope& slope);
  /// The point square + offset, offset in [0, 1).
  static ExactPoint on_square(int square, const LinearForm& offset, int s, const Slope& slope);

  const LinearForm& value() const { return value_; }
  int square() const { return square_; }
  LinearForm offset() const { return value_ - LinearForm(square_); }

  friend bool operator==(const ExactPoint& a, const ExactPoint& b) { return a.value_ == b.value_; }

 private:
  ExactPoint(LinearForm value, int square) : value_(std::move(value)), square_(square) {}
  LinearForm value_;
  int square_ = 0;
};

std::strong_ordering compare(const ExactPoint& x, const ExactPoint& y, const Slope& slope);

/// One affine piece x -> x + shift on [lower, upper).
struct IetBranch {
  int square = 0;      // 0-based square of the domain
  bool upper = false;  // the piece [j+1-alpha, j+1)
  LinearForm lower, upper_end;
  LinearForm shift;
  int target = 0;  // square of the image

  LinearForm image_lower() const { return lower + shift; }
  LinearForm image_upper() const { return upper_end + shift; }
};

/// The orbit y_1, ..., y_m of T in compact form: the square of every point
/// is bit-packed, and the offsets are {f + i*alpha} for the offset f of y_1.
/// Indices are 0-based: point(i) is y_{i+1}.
class CompactOrbit {
 public:
  CompactOrbit() = default;

  std::uint64_t size() const { return size_; }
  int squares() const { return s_; }
  int square(std::uint64_t i) const {
    if (bits_ == 0) return 0;
    const std::uint64_t pos = i * bits_;
    return static_cast<int>((words_[pos >> 6] >> (pos & 63)) & mask_);
  }
  void prefetch(std::uint64_t i) const {
    if (bits_ > 0) __builtin_prefetch(&words_[(i * bits_) >> 6]);
  }
  /// Offset f of y_1 (in [0, 1)).
  const LinearForm& first_offset() const { return first_offset_; }
  /// Offset of point i as an exact form.
  LinearForm offset(std::uint64_t i, const Slope& slope) const;
  ExactPoint point(std::uint64_t i, const Slope& slope) const;

 private:
  friend class IetMap;
  void push(int square);

  int s_ = 1;
  unsigned bits_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
  LinearForm first_offset_;
};

/// The interval exchange T on [0, s): the first return of the slope-1/alpha
/// flow to the union of horizontal edges.
class IetMap {
 public:
  IetMap(PolysquareSurface surface, Slope slope);

  int size() const { return surface_.size(); }
  const Slope& slope() const { return slope_; }
  const PolysquareSurface& surface() const { return surface_; }
  /// 2s branches ordered by domain: square 0 lower, square 0 upper, ...
  const std::vector<IetBranch>& branches() const { return branches_; }
  /// Branch endpoints {j, j + 1 - alpha} (0-based j), in increasing order.
  std::vector<LinearForm> singular_points() const;

  /// Throws SingularityError (tagged with `step`) when x is a branch endpoint
  /// that sits on a cone point of the surface.
  ExactPoint apply(const ExactPoint& x, Direction direction = Direction::forward, std::size_t step = 1) const;
  /// y_1 = x0, y_{i+1} = T(y_i); every y_i is checked for singularity.
  std::vector<ExactPoint> orbit(const ExactPoint& x0, std::size_t n, Direction direction = Direction::forward) const;
  /// Forward orbit of length n in compact form. In interval mode a sign the
  /// 2^-128 bracket cannot decide raises `undecidable`.
  CompactOrbit compact_orbit(const ExactPoint& x0, std::uint64_t n,
                             ComparisonMode mode = ComparisonMode::exact) const;

 private:
  bool is_cone(int square, int corner) const { return !surface_.is_regular_corner(4 * square + corner); }

  PolysquareSurface surface_;
  Slope slope_;
  std::vector<IetBranch> branches_;
};

IetMap build_iet(const PolysquareSurface& surface, const Slope& slope);

}  // namespace superdense
