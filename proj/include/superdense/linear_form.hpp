#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace superdense {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// c + d*alpha with machine-integer coefficients. This is the working
/// representation for orbit points relative to a base point, partition
/// points {q alpha} and the gaps between them.
struct IntForm {
  std::int64_t constant = 0;
  std::int64_t alpha = 0;

  friend bool operator==(const IntForm&, const IntForm&) = default;
  friend IntForm operator+(IntForm a, IntForm b) {
    return {a.constant + b.constant, a.alpha + b.alpha};
  }
  friend IntForm operator-(IntForm a, IntForm b) {
    return {a.constant - b.constant, a.alpha - b.alpha};
  }
  friend IntForm operator-(IntForm a) { return {-a.constant, -a.alpha}; }
  IntForm& operator+=(IntForm b) {
    constant += b.constant;
    alpha += b.alpha;
    return *this;
  }
  IntForm& operator-=(IntForm b) {
    constant -= b.constant;
    alpha -= b.alpha;
    return *this;
  }
};

/// An exact real of the form a + b*alpha with rational a and b.
///
/// Equality is structural. For irrational alpha that coincides with equality
/// of values, since 1 and alpha are linearly independent over Q.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(Rational constant, Rational alpha = Rational(0))  // NOLINT
      : constant_(std::move(constant)), alpha_(std::move(alpha)) {}
  LinearForm(IntForm f)  // NOLINT
      : constant_(f.constant), alpha_(f.alpha) {}
  LinearForm(int constant) : constant_(constant) {}  // NOLINT

  static LinearForm alpha() { return {Rational(0), Rational(1)}; }

  const Rational& constant() const noexcept { return constant_; }
  const Rational& alpha_coefficient() const noexcept { return alpha_; }

  bool is_rational() const { return alpha_ == 0; }

  /// The form as an IntForm, if both coefficients are integers that fit.
  std::optional<IntForm> as_int_form() const;

  /// Least common denominator of both coefficients.
  Integer denominator() const;

  /// "a+b*alpha", "a-b*alpha", "a" or "b*alpha", with p/q rationals.
  std::string str() const;

  /// Inverse of str(); also accepts "alpha", "-alpha", "2-alpha", "1/3+1/2*alpha".
  static LinearForm parse(std::string_view text);

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  LinearForm& operator+=(const LinearForm& o) {
    constant_ += o.constant_;
    alpha_ += o.alpha_;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    constant_ -= o.constant_;
    alpha_ -= o.alpha_;
    return *this;
  }
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator-(const LinearForm& a) { return {-a.constant_, -a.alpha_}; }
  friend LinearForm operator*(const Rational& k, const LinearForm& a) {
    return {k * a.constant_, k * a.alpha_};
  }

 private:
  Rational constant_{0};
  Rational alpha_{0};
};

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

/// Floor of a rational as an Integer (rounds toward minus infinity).
Integer floor_div(const Integer& num, const Integer& den);

/// Decimal expansion of a rational with `significant` significant digits
/// (round half away from zero).
std::string to_decimal(const Rational& value, int significant = 30);

}  // namespace superdense
