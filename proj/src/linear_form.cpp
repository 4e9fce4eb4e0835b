#include "superdense/linear_form.hpp"

#include <cctype>
#include <limits>

#include "superdense/error.hpp"

namespace superdense {

namespace {

bool fits_int64(const Integer& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_form(std::string_view text) {
  throw Error(ErrorKind::parse_error, "malformed linear form '" + std::string(text) + "'");
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::insufficient_digits: return "insufficient digits";
    case ErrorKind::invalid_gluing: return "invalid gluing";
    case ErrorKind::disconnected_surface: return "disconnected surface";
    case ErrorKind::hits_singularity: return "hits singularity";
    case ErrorKind::degenerate_level: return "degenerate level";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::empty_window: return "empty window";
    case ErrorKind::undecidable: return "undecidable";
    case ErrorKind::budget_exceeded: return "budget exceeded";
  }
  return "unknown";
}

std::optional<IntForm> LinearForm::as_int_form() const {
  if (boost::multiprecision::denominator(constant_) != 1 ||
      boost::multiprecision::denominator(alpha_) != 1)
    return std::nullopt;
  const Integer& c = numerator(constant_);
  const Integer& a = numerator(alpha_);
  if (!fits_int64(c) || !fits_int64(a)) return std::nullopt;
  return IntForm{static_cast<std::int64_t>(c), static_cast<std::int64_t>(a)};
}

Integer LinearForm::denominator() const {
  return boost::multiprecision::lcm(boost::multiprecision::denominator(constant_),
                                    boost::multiprecision::denominator(alpha_));
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string LinearForm::str() const {
  if (alpha_ == 0) return to_string(constant_);
  std::string coef;
  auto abs_alpha = boost::multiprecision::abs(alpha_);
  if (abs_alpha != 1) coef = to_string(abs_alpha) + "*";
  if (constant_ == 0) return (alpha_ < 0 ? "-" : "") + coef + "alpha";
  return to_string(constant_) + (alpha_ < 0 ? "-" : "+") + coef + "alpha";
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorKind::parse_error, "empty rational");
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw Error(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw Error(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
    }
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::parse_error, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash))) / den;
}

LinearForm LinearForm::parse(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  if (text.empty()) bad_form(original);
  // Split into signed terms at '+'/'-' that are not leading.
  LinearForm result;
  std::size_t pos = 0;
  bool saw_term = false;
  while (pos < text.size()) {
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view term = trim(text.substr(pos, end - pos));
    pos = end;
    bool negative = false;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      negative = term[0] == '-';
      term = trim(term.substr(1));
    }
    if (term.empty()) bad_form(original);
    Rational sign = negative ? Rational(-1) : Rational(1);
    const std::string_view alpha_name = "alpha";
    if (term.size() >= alpha_name.size() &&
        term.substr(term.size() - alpha_name.size()) == alpha_name) {
      std::string_view coef = trim(term.substr(0, term.size() - alpha_name.size()));
      Rational c(1);
      if (!coef.empty()) {
        if (coef.back() != '*') bad_form(original);
        coef = trim(coef.substr(0, coef.size() - 1));
        c = parse_rational(coef);
      }
      result.alpha_ += sign * c;
    } else {
      result.constant_ += sign * parse_rational(term);
    }
    saw_term = true;
  }
  if (!saw_term) bad_form(original);
  return result;
}

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;  // truncates toward zero
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

std::string to_decimal(const Rational& value, int significant) {
  if (significant < 1) significant = 1;
  Integer num = numerator(value);
  Integer den = denominator(value);
  if (num == 0) return "0";
  const bool negative = num < 0;
  if (negative) num = -num;
  // Find exponent e with 10^e <= value < 10^(e+1).
  int e = 0;
  {
    Integer ip = num / den;
    if (ip > 0) {
      e = static_cast<int>(ip.str().size()) - 1;
    } else {
      Integer scaled = num;
      while (scaled < den) {
        scaled *= 10;
        --e;
      }
    }
  }
  // Scale so that we keep `significant` digits before the decimal point.
  const int shift = significant - 1 - e;
  Integer pow10 = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(shift)));
  Integer scaled_num = shift >= 0 ? num * pow10 : num;
  Integer scaled_den = shift >= 0 ? den : den * pow10;
  Integer digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);  // round half up
  std::string s = digits.str();
  int exponent = e;
  if (static_cast<int>(s.size()) > significant) {  // rounding carried into a new digit
    s.pop_back();
    ++exponent;
  }
  // Place the decimal point: value = 0.s * 10^(exponent+1).
  std::string out;
  if (exponent >= 0) {
    if (static_cast<int>(s.size()) <= exponent + 1) {
      out = s + std::string(exponent + 1 - s.size(), '0');
    } else {
      out = s.substr(0, exponent + 1) + "." + s.substr(exponent + 1);
    }
  } else {
    out = "0." + std::string(-exponent - 1, '0') + s;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

}  // namespace superdense
