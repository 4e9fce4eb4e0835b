#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "superdense/linear_form.hpp"

namespace superdense {

namespace detail {
struct SlopeData;
}

/// How certified signs are decided for machine-integer forms.
///
/// `exact` brackets alpha between deep convergents and falls back to a
/// continued-fraction comparison when the bracket is inconclusive, so it
/// always terminates for irrational alpha. `interval` uses one fixed bracket
/// of width at most 2^-128 and reports `undecidable` instead of refining.
enum class ComparisonMode { exact, interval };

/// A slope parameter 0 < alpha < 1 given by its continued-fraction digits
/// [0; a_1, a_2, ...]. alpha is never materialized as a float; every derived
/// real is decided or enclosed from the digits.
///
/// Slopes are cheap to copy and immutable; digit access is thread safe.
class Slope {
 public:
  using Digit = std::uint64_t;
  using Generator = std::function<Digit(std::size_t)>;

  /// A finite prefix of an irrational number. Reading past the prefix raises
  /// `insufficient_digits`.
  static Slope truncated(std::vector<Digit> digits);
  /// An eventually periodic expansion (a quadratic irrational).
  static Slope periodic(std::vector<Digit> preperiod, std::vector<Digit> period);
  /// An exact rational alpha = num/den. Only useful for geometry tests.
  static Slope rational(const Integer& num, const Integer& den);
  /// Digits produced on demand; `generator(0)` must be 0.
  static Slope generated(Generator generator, std::optional<Digit> bound = std::nullopt);

  /// Parses `cf:0;2,2,2`, `cf:0;(1)`, `cf:0;1,3,(1,2)` or `rat:p/q`.
  static Slope parse(std::string_view spec);

  std::optional<Digit> digit(std::size_t i) const;
  Digit require_digit(std::size_t i) const;

  bool is_rational() const;
  bool is_periodic() const;
  /// Number of digits for rational and truncated slopes.
  std::optional<std::size_t> length() const;
  /// Declared bound, or the maximal digit of a periodic expansion.
  std::optional<Digit> digit_bound() const;
  Slope with_digit_bound(Digit bound) const;

  /// Canonical spec string, e.g. "cf:0;(1,2)".
  std::string spec() const;

  /// Certified sign of c + d*alpha.
  int sign(IntForm f, ComparisonMode mode = ComparisonMode::exact) const;
  /// Certified sign of an arbitrary linear form.
  int sign(const LinearForm& f) const;

  /// lo_num/lo_den < alpha < hi_num/hi_den with denominators below 2^61, or
  /// alpha = lo_num/lo_den exactly for rational slopes. Callers evaluate
  /// c*den + d*num at both ends in 128-bit arithmetic and fall back to sign()
  /// when the two ends disagree.
  struct FastBracket {
    std::int64_t lo_num, lo_den, hi_num, hi_den;
    bool exact;
  };
  std::optional<FastBracket> fast_bracket() const;

  /// Rational bracket [lower, upper] containing alpha with width <= max_width.
  std::pair<Rational, Rational> bracket(const Rational& max_width) const;

  /// A double near alpha; for plotting and floating-point geometry only.
  double approximate() const;

 private:
  explicit Slope(std::shared_ptr<const detail::SlopeData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::SlopeData> data_;
};

/// Slope::sign for machine forms with the fast bracket inlined, for hot loops.
class SignEvaluator {
 public:
  explicit SignEvaluator(const Slope& slope, ComparisonMode mode = ComparisonMode::exact)
      : slope_(slope), fb_(slope.fast_bracket()), mode_(mode) {}

  int operator()(std::int64_t c, std::int64_t a) const {
    if (fb_) {
      const __int128 lo = __int128(c) * fb_->lo_den + __int128(a) * fb_->lo_num;
      if (fb_->exact) return lo > 0 ? 1 : (lo < 0 ? -1 : 0);
      const __int128 hi = __int128(c) * fb_->hi_den + __int128(a) * fb_->hi_num;
      if (lo > 0 && hi > 0) return 1;
      if (lo < 0 && hi < 0) return -1;
    }
    return slope_.sign(IntForm{c, a}, mode_);
  }
  int operator()(IntForm f) const { return (*this)(f.constant, f.alpha); }

 private:
  const Slope& slope_;
  std::optional<Slope::FastBracket> fb_;
  ComparisonMode mode_;
};

/// Canonical finite continued fraction of num/den (last digit >= 2 when the
/// expansion has more than one digit).
std::vector<Integer> expand_rational(const Integer& num, const Integer& den);

/// Exact value of [d_0; d_1, ..., d_n].
Rational evaluate(std::span<const Integer> digits);

/// alpha compared with a rational r.
std::strong_ordering compare_alpha(const Slope& slope, const Rational& r);

std::strong_ordering compare(const LinearForm& a, const LinearForm& b, const Slope& slope);

/// Exact floor of a linear form.
Integer floor(const LinearForm& f, const Slope& slope);
/// Exact floor of q*alpha for machine integers.
std::int64_t floor_multiple(std::int64_t q, const Slope& slope);
/// {q alpha} as an IntForm q*alpha - floor(q*alpha).
IntForm fractional_part(std::int64_t q, const Slope& slope);

/// Closed interval of rationals certified to contain a real.
struct Enclosure {
  Rational lower;
  Rational upper;

  Rational width() const { return upper - lower; }
  Rational midpoint() const { return (lower + upper) / 2; }
  double value() const { return static_cast<double>(midpoint()); }
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  std::string decimal(int significant = 30) const { return to_decimal(midpoint(), significant); }
};

/// Encloses the value of f to width <= max_width by refining alpha's bracket.
Enclosure enclose(const LinearForm& f, const Slope& slope, const Rational& max_width);

/// Distance from q*alpha to the nearest integer, as an exact form.
LinearForm nearest_integer_distance(const Integer& q, const Slope& slope);
/// ||q alpha|| enclosed to width <= precision.
Enclosure norm_dist(const Integer& q, const Slope& slope, const Rational& precision);

/// p_k, q_k for k = -1..k_max together with the exact forms
/// eps_k = |q_k alpha - p_k| = (-1)^k (q_k alpha - p_k).
class ConvergentTable {
 public:
  ConvergentTable(const Slope& slope, std::size_t k_max);

  std::size_t k_max() const { return digits_.size() - 1; }
  Slope::Digit digit(std::size_t k) const { return digits_.at(k); }
  /// Valid for -1 <= k <= k_max.
  const Integer& p(long k) const { return p_.at(static_cast<std::size_t>(k + 1)); }
  const Integer& q(long k) const { return q_.at(static_cast<std::size_t>(k + 1)); }
  std::uint64_t q_u64(long k) const;
  std::int64_t p_i64(long k) const;
  /// (-1)^k (q_k alpha - p_k); eps_{-1} = 1 and eps_0 = alpha.
  LinearForm eps(long k) const;
  IntForm eps_int(long k) const;

 private:
  std::vector<Slope::Digit> digits_;
  std::vector<Integer> p_;
  std::vector<Integer> q_;
};

ConvergentTable convergents(const Slope& slope, std::size_t k_max);

/// True iff a_i <= bound for 1 <= i <= k_max.
bool is_badly_approximable_prefix(const Slope& slope, Slope::Digit bound, std::size_t k_max);

}  // namespace superdense
