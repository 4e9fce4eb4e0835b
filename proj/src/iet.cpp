#include "superdense/iet.hpp"

#include <bit>
#include <limits>

#include "superdense/error.hpp"

namespace superdense {

namespace {

const LinearForm kOneMinusAlpha(Rational(1), Rational(-1));

bool fits(const Integer& v) {
  return v > std::numeric_limits<std::int64_t>::min() / 4 && v < std::numeric_limits<std::int64_t>::max() / 4;
}

}  // namespace

ExactPoint::ExactPoint(LinearForm value, int s, const Slope& slope) : value_(std::move(value)) {
  if (slope.sign(value_) < 0 || slope.sign(value_ - LinearForm(s)) >= 0)
    throw Error(ErrorKind::out_of_range, "point " + value_.str() + " is outside [0, " + std::to_string(s) + ")");
  square_ = static_cast<int>(floor(value_, slope));
}

ExactPoint ExactPoint::on_square(int square, const LinearForm& offset, int s, const Slope& slope) {
  if (square < 0 || square >= s)
    throw Error(ErrorKind::out_of_range, "square " + std::to_string(square + 1) + " out of range");
  if (slope.sign(offset) < 0 || slope.sign(offset - LinearForm(1)) >= 0)
    throw Error(ErrorKind::out_of_range, "offset " + offset.str() + " is outside [0, 1)");
  return ExactPoint(offset + LinearForm(square), square);
}

std::strong_ordering compare(const ExactPoint& x, const ExactPoint& y, const Slope& slope) {
  return compare(x.value(), y.value(), slope);
}

LinearForm CompactOrbit::offset(std::uint64_t i, const Slope& slope) const {
  LinearForm v = first_offset_ + LinearForm(Rational(0), Rational(static_cast<std::int64_t>(i)));
  return v - LinearForm(Rational(floor(v, slope)));
}

ExactPoint CompactOrbit::point(std::uint64_t i, const Slope& slope) const {
  return ExactPoint::on_square(square(i), offset(i, slope), s_, slope);
}

void CompactOrbit::push(int square) {
  if (bits_ > 0) {
    const std::uint64_t pos = size_ * bits_;
    if ((pos >> 6) >= words_.size()) words_.push_back(0);
    words_[pos >> 6] |= static_cast<std::uint64_t>(square) << (pos & 63);
  }
  ++size_;
}

IetMap::IetMap(PolysquareSurface surface, Slope slope) : surface_(std::move(surface)), slope_(std::move(slope)) {
  const int s = surface_.size();
  for (int j = 0; j < s; ++j) {
    const LinearForm left(j), cut = LinearForm(j) + kOneMinusAlpha, right(j + 1);
    IetBranch lower{j, false, left, cut, LinearForm(Rational(surface_.top(j) - j), Rational(1)), surface_.top(j)};
    const int t = surface_.top(surface_.right(j));
    IetBranch upper{j, true, cut, right, LinearForm(Rational(t - j - 1), Rational(1)), t};
    branches_.push_back(std::move(lower));
    branches_.push_back(std::move(upper));
  }
}

std::vector<LinearForm> IetMap::singular_points() const {
  std::vector<LinearForm> out;
  for (int j = 0; j < size(); ++j) {
    out.emplace_back(j);
    out.push_back(LinearForm(j) + kOneMinusAlpha);
  }
  return out;
}

ExactPoint IetMap::apply(const ExactPoint& x, Direction direction, std::size_t step) const {
  const int j = x.square();
  const LinearForm off = x.offset();
  const bool at_zero = slope_.sign(off) == 0;
  if (direction == Direction::forward) {
    if (at_zero && is_cone(j, bottom_left)) throw SingularityError(step, LinearForm(j).str());
    const int c = slope_.sign(kOneMinusAlpha - off);
    if (c == 0 && is_cone(j, top_right)) throw SingularityError(step, (LinearForm(j) + kOneMinusAlpha).str());
    const IetBranch& b = branches_[2 * j + (c > 0 ? 0 : 1)];
    return ExactPoint::on_square(b.target, off + LinearForm(j) + b.shift - LinearForm(b.target), size(), slope_);
  }
  if (at_zero && is_cone(j, bottom_left)) throw SingularityError(step, LinearForm(j).str());
  const int d = slope_.sign(off - LinearForm::alpha());
  const int below = surface_.top_inverse(j);
  if (d == 0 && is_cone(below, bottom_left))
    throw SingularityError(step, (LinearForm(j) + LinearForm::alpha()).str());
  const int source = d >= 0 ? below : surface_.right_inverse(below);
  const IetBranch& b = branches_[2 * source + (d >= 0 ? 0 : 1)];
  return ExactPoint::on_square(source, x.value() - b.shift - LinearForm(source), size(), slope_);
}

std::vector<ExactPoint> IetMap::orbit(const ExactPoint& x0, std::size_t n, Direction direction) const {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "orbit length must be >= 1");
  std::vector<ExactPoint> out;
  out.reserve(n);
  ExactPoint y = x0;
  for (std::size_t i = 1; i <= n; ++i) {
    out.push_back(y);
    ExactPoint next = apply(y, direction, i);
    if (i < n) y = std::move(next);
  }
  return out;
}

CompactOrbit IetMap::compact_orbit(const ExactPoint& x0, std::uint64_t n, ComparisonMode mode) const {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "orbit length must be >= 1");
  CompactOrbit out;
  out.s_ = size();
  unsigned width = std::bit_width(static_cast<unsigned>(size() - 1));
  out.bits_ = width == 0 ? 0 : std::bit_ceil(width);
  out.mask_ = out.bits_ == 0 ? 0 : ((std::uint64_t{1} << out.bits_) - 1);
  out.first_offset_ = x0.offset();
  out.words_.reserve(out.bits_ == 0 ? 0 : (n * out.bits_ + 63) / 64);

  // Offset of the current point is (K + B*alpha)/D.
  const LinearForm& f = out.first_offset_;
  const Integer D = f.denominator();
  const Integer K0 = numerator(f.constant()) * (D / denominator(f.constant()));
  const Integer B0 = numerator(f.alpha_coefficient()) * (D / denominator(f.alpha_coefficient()));
  if (!fits(D) || !fits(K0) || !fits(B0 + D * Integer(n) + D))
    throw Error(ErrorKind::out_of_range, "orbit offsets do not fit in 64-bit arithmetic; use orbit()");
  const auto d = static_cast<std::int64_t>(D);
  auto K = static_cast<std::int64_t>(K0);
  auto B = static_cast<std::int64_t>(B0);

  const SignEvaluator sign(slope_, mode);
  const auto fb = slope_.fast_bracket();

  int square = x0.square();
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push(square);
    if ((K == 0 && B == 0) || (fb && fb->exact && sign(K, B) == 0)) {
      if (is_cone(square, bottom_left)) throw SingularityError(i + 1, LinearForm(square).str());
    }
    // offset < 1 - alpha  <=>  (D - K) - (D + B) alpha > 0
    int c = sign(d - K, -d - B);
    if (c == 0 && is_cone(square, top_right))
      throw SingularityError(i + 1, (LinearForm(square) + kOneMinusAlpha).str());
    if (c > 0) {
      square = surface_.top(square);
    } else {
      square = surface_.top(surface_.right(square));
      K -= d;
    }
    B += d;
  }
  return out;
}

IetMap build_iet(const PolysquareSurface& surface, const Slope& slope) { return IetMap(surface, slope); }

}  // namespace superdense
