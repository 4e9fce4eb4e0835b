#include "superdense/cf.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "superdense/error.hpp"

namespace superdense {

namespace detail {

struct SlopeData {
  enum class Kind { truncated, periodic, rational, generated };

  Kind kind = Kind::truncated;
  std::vector<Slope::Digit> prefix;  // truncated digits, preperiod, or rational digits
  std::vector<Slope::Digit> period;
  Slope::Generator generator;
  std::optional<Slope::Digit> bound;
  Rational exact;  // the value of a rational slope

  // Bracket lo < alpha < hi from convergents with denominators below 2^61.
  // For rational slopes lo == hi == alpha.
  bool has_fast = false;
  std::int64_t lo_num = 0, lo_den = 1, hi_num = 1, hi_den = 1;

  // Bracket of width <= 2^-128 for ComparisonMode::interval.
  bool has_wide = false;
  Integer wlo_num, wlo_den, whi_num, whi_den;

  double approx = 0.0;

  std::optional<Slope::Digit> digit(std::size_t i) const {
    switch (kind) {
      case Kind::truncated:
      case Kind::rational:
        if (i < prefix.size()) return prefix[i];
        return std::nullopt;
      case Kind::periodic:
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
      case Kind::generated: {
        Slope::Digit d = generator(i);
        if (i == 0 && d != 0)
          throw Error(ErrorKind::invalid_argument, "slope generator must produce a_0 = 0");
        if (i > 0 && d == 0)
          throw Error(ErrorKind::invalid_argument,
                      "slope generator produced a_" + std::to_string(i) + " = 0");
        if (bound && d > *bound)
          throw Error(ErrorKind::invalid_argument,
                      "digit a_" + std::to_string(i) + " = " + std::to_string(d) +
                          " exceeds declared bound " + std::to_string(*bound));
        return d;
      }
    }
    return std::nullopt;
  }
};

}  // namespace detail

namespace {

using detail::SlopeData;
using Int128 = __int128;

constexpr std::int64_t kFastLimit = std::int64_t{1} << 61;

int sign_of(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(Int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Decides a sign from the values of a linear function at the two ends of an
// open interval containing the root's argument. Returns 2 when inconclusive.
int combine_ends(int at_lo, int at_hi) {
  if (at_lo == at_hi) return at_lo;
  if (at_lo == 0) return at_hi;
  if (at_hi == 0) return at_lo;
  return 2;
}

void validate_digits(const std::vector<Slope::Digit>& digits, std::size_t offset) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::size_t index = i + offset;
    if (index == 0 && digits[i] != 0)
      throw Error(ErrorKind::invalid_argument, "slope must satisfy 0 < alpha < 1 (a_0 = 0)");
    if (index > 0 && digits[i] == 0)
      throw Error(ErrorKind::invalid_argument,
                  "continued-fraction digit a_" + std::to_string(index) + " must be >= 1");
  }
}

// Walks convergents p_k/q_k; `digit` may return nullopt to end the walk.
struct ConvergentWalker {
  Integer p_prev{1}, q_prev{0};  // k - 1
  Integer p{0}, q{1};            // k
  std::size_t k = 0;

  void advance(Slope::Digit a) {
    Integer pn = Integer(a) * p + p_prev;
    Integer qn = Integer(a) * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
    ++k;
  }
};

// Bracket of alpha at convergent depth `depth` (the bracket ends are p_d/q_d
// and p_{d+1}/q_{d+1}, or the tail bracket of a truncated prefix).
std::pair<Rational, Rational> bracket_at_depth(const SlopeData& d, std::size_t depth) {
  if (d.kind == SlopeData::Kind::rational) return {d.exact, d.exact};
  ConvergentWalker w;  // k = 0, p_0 = a_0 = 0, q_0 = 1
  while (w.k < depth) {
    auto a = d.digit(w.k + 1);
    if (!a) break;
    w.advance(*a);
  }
  auto next = d.digit(w.k + 1);
  Rational a(w.p, w.q);
  Rational b = next ? Rational(Integer(*next) * w.p + w.p_prev, Integer(*next) * w.q + w.q_prev)
                    : Rational(w.p + w.p_prev, w.q + w.q_prev);
  if (!next && w.k == 0) {
    // Only a_0 is known: alpha is somewhere in (0, 1).
    a = 0;
    b = 1;
  }
  if (b < a) std::swap(a, b);
  return {a, b};
}

bool bracket_is_final(const SlopeData& d, std::size_t depth) {
  // True when the digit stream ends before `depth` (no refinement possible).
  if (d.kind == SlopeData::Kind::rational) return true;
  if (d.kind == SlopeData::Kind::truncated) return depth + 1 >= d.prefix.size();
  return false;
}

void build_brackets(SlopeData& d) {
  if (d.kind == SlopeData::Kind::rational) {
    const Integer& num = numerator(d.exact);
    const Integer& den = denominator(d.exact);
    if (num < kFastLimit && den < kFastLimit) {
      d.has_fast = true;
      d.lo_num = d.hi_num = static_cast<std::int64_t>(num);
      d.lo_den = d.hi_den = static_cast<std::int64_t>(den);
    }
    d.has_wide = true;
    d.wlo_num = d.whi_num = num;
    d.wlo_den = d.whi_den = den;
    d.approx = static_cast<double>(d.exact);
    return;
  }

  // Fast bracket: deepest consecutive convergents that fit below 2^61.
  ConvergentWalker w;
  std::optional<std::pair<Rational, Rational>> fast;
  for (;;) {
    auto a = d.digit(w.k + 1);
    if (!a) {
      // Tail bracket of a truncated prefix.
      Integer tn = w.p + w.p_prev, td = w.q + w.q_prev;
      if (w.k == 0) fast = std::pair{Rational(0), Rational(1)};
      else if (td < kFastLimit) fast = std::pair{Rational(w.p, w.q), Rational(tn, td)};
      else fast = std::pair{Rational(w.p, w.q), Rational(w.p_prev, w.q_prev)};
      break;
    }
    Integer nq = Integer(*a) * w.q + w.q_prev;
    if (nq >= kFastLimit) {
      if (w.k == 0) fast = std::pair{Rational(0), Rational(1)};
      else fast = std::pair{Rational(w.p, w.q), Rational(w.p_prev, w.q_prev)};
      break;
    }
    w.advance(*a);
    if (w.k > 400) break;  // cannot happen for digits >= 1, q grows at least like Fibonacci
  }
  if (fast) {
    auto [x, y] = *fast;
    if (y < x) std::swap(x, y);
    d.has_fast = true;
    d.lo_num = static_cast<std::int64_t>(numerator(x));
    d.lo_den = static_cast<std::int64_t>(denominator(x));
    d.hi_num = static_cast<std::int64_t>(numerator(y));
    d.hi_den = static_cast<std::int64_t>(denominator(y));
    d.approx = static_cast<double>((x + y) / 2);
  }

  // Wide-mode bracket of width <= 2^-128.
  const Rational target(Integer(1), Integer(1) << 128);
  for (std::size_t depth = 8;; depth *= 2) {
    auto [x, y] = bracket_at_depth(d, depth);
    if (y - x <= target) {
      d.has_wide = true;
      d.wlo_num = numerator(x);
      d.wlo_den = denominator(x);
      d.whi_num = numerator(y);
      d.whi_den = denominator(y);
      break;
    }
    if (bracket_is_final(d, depth)) break;
  }
}

Slope::Digit to_digit(const Integer& v) {
  if (v < 0 || v > std::numeric_limits<Slope::Digit>::max())
    throw Error(ErrorKind::out_of_range, "continued-fraction digit does not fit in 64 bits");
  return static_cast<Slope::Digit>(v);
}

std::vector<Slope::Digit> parse_digit_list(std::string_view s, std::string_view spec) {
  std::vector<Slope::Digit> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    std::string_view tok = s.substr(pos, comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorKind::parse_error, "malformed slope spec '" + std::string(spec) + "'");
    out.push_back(to_digit(Integer(std::string(tok))));
    pos = comma + 1;
  }
  return out;
}

std::string join_digits(const std::vector<Slope::Digit>& v, std::size_t from = 0) {
  std::ostringstream os;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) os << ',';
    os << v[i];
  }
  return os.str();
}

}  // namespace

// --------------------------------------------------------------------------
// Slope

Slope Slope::truncated(std::vector<Digit> digits) {
  if (digits.empty()) throw Error(ErrorKind::invalid_argument, "empty digit prefix");
  validate_digits(digits, 0);
  auto d = std::make_shared<SlopeData>();
  d->kind = SlopeData::Kind::truncated;
  d->prefix = std::move(digits);
  build_brackets(*d);
  return Slope(std::move(d));
}

Slope Slope::periodic(std::vector<Digit> preperiod, std::vector<Digit> period) {
  if (preperiod.empty()) throw Error(ErrorKind::invalid_argument, "periodic slope needs a_0");
  if (period.empty()) throw Error(ErrorKind::invalid_argument, "empty period");
  validate_digits(preperiod, 0);
  validate_digits(period, preperiod.size());
  auto d = std::make_shared<SlopeData>();
  d->kind = SlopeData::Kind::periodic;
  d->prefix = std::move(preperiod);
  d->period = std::move(period);
  build_brackets(*d);
  return Slope(std::move(d));
}

Slope Slope::rational(const Integer& num, const Integer& den) {
  if (den <= 0) throw Error(ErrorKind::invalid_argument, "rational slope needs a positive denominator");
  Rational value(num, den);
  if (value <= 0 || value >= 1)
    throw Error(ErrorKind::invalid_argument, "slope must satisfy 0 < alpha < 1");
  auto d = std::make_shared<SlopeData>();
  d->kind = SlopeData::Kind::rational;
  d->exact = value;
  for (const auto& digit : expand_rational(numerator(value), denominator(value)))
    d->prefix.push_back(to_digit(digit));
  build_brackets(*d);
  return Slope(std::move(d));
}

Slope Slope::generated(Generator generator, std::optional<Digit> bound) {
  if (!generator) throw Error(ErrorKind::invalid_argument, "null digit generator");
  auto d = std::make_shared<SlopeData>();
  d->kind = SlopeData::Kind::generated;
  d->generator = std::move(generator);
  d->bound = bound;
  (void)d->digit(0);  // validates a_0
  build_brackets(*d);
  return Slope(std::move(d));
}

Slope Slope::parse(std::string_view spec) {
  auto starts_with = [&](std::string_view p) { return spec.substr(0, p.size()) == p; };
  if (starts_with("rat:")) {
    Rational r = parse_rational(spec.substr(4));
    return rational(numerator(r), denominator(r));
  }
  if (!starts_with("cf:")) throw Error(ErrorKind::parse_error, "slope spec must start with 'cf:' or 'rat:'");
  std::string_view body = spec.substr(3);
  if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  auto semi = body.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorKind::parse_error, "slope spec needs 'a0;...'");
  std::vector<Digit> pre = parse_digit_list(body.substr(0, semi), spec);
  if (pre.size() != 1) throw Error(ErrorKind::parse_error, "malformed slope spec '" + std::string(spec) + "'");
  std::string_view rest = body.substr(semi + 1);
  auto open = rest.find('(');
  if (open == std::string_view::npos) {
    auto more = parse_digit_list(rest, spec);
    pre.insert(pre.end(), more.begin(), more.end());
    return truncated(std::move(pre));
  }
  if (rest.back() != ')') throw Error(ErrorKind::parse_error, "periodic tail must end with ')'");
  std::string_view head = rest.substr(0, open);
  if (!head.empty()) {
    if (head.back() != ',') throw Error(ErrorKind::parse_error, "malformed slope spec '" + std::string(spec) + "'");
    auto more = parse_digit_list(head.substr(0, head.size() - 1), spec);
    pre.insert(pre.end(), more.begin(), more.end());
  }
  auto period = parse_digit_list(rest.substr(open + 1, rest.size() - open - 2), spec);
  return periodic(std::move(pre), std::move(period));
}

std::optional<Slope::Digit> Slope::digit(std::size_t i) const { return data_->digit(i); }

Slope::Digit Slope::require_digit(std::size_t i) const {
  auto d = data_->digit(i);
  if (!d) throw Error(ErrorKind::insufficient_digits, "insufficient digits: a_" + std::to_string(i) + " is not available");
  return *d;
}

bool Slope::is_rational() const { return data_->kind == SlopeData::Kind::rational; }
bool Slope::is_periodic() const { return data_->kind == SlopeData::Kind::periodic; }

std::optional<std::size_t> Slope::length() const {
  if (data_->kind == SlopeData::Kind::truncated || data_->kind == SlopeData::Kind::rational)
    return data_->prefix.size();
  return std::nullopt;
}

std::optional<Slope::Digit> Slope::digit_bound() const {
  if (data_->bound) return data_->bound;
  if (data_->kind == SlopeData::Kind::periodic) {
    Digit m = 0;
    for (std::size_t i = 1; i < data_->prefix.size(); ++i) m = std::max(m, data_->prefix[i]);
    for (auto a : data_->period) m = std::max(m, a);
    return m;
  }
  return std::nullopt;
}

Slope Slope::with_digit_bound(Digit bound) const {
  auto d = std::make_shared<SlopeData>(*data_);
  if (d->kind != SlopeData::Kind::generated) {
    for (std::size_t i = 1; i < d->prefix.size(); ++i)
      if (d->prefix[i] > bound)
        throw Error(ErrorKind::invalid_argument, "digit a_" + std::to_string(i) + " exceeds bound");
    for (auto a : d->period)
      if (a > bound) throw Error(ErrorKind::invalid_argument, "periodic digit exceeds bound");
  }
  d->bound = bound;
  return Slope(std::move(d));
}

std::string Slope::spec() const {
  const auto& d = *data_;
  switch (d.kind) {
    case SlopeData::Kind::rational:
      return "rat:" + to_string(d.exact);
    case SlopeData::Kind::truncated:
      return "cf:0;" + join_digits(d.prefix, 1);
    case SlopeData::Kind::periodic: {
      std::string head = join_digits(d.prefix, 1);
      return "cf:0;" + head + (head.empty() ? "" : ",") + "(" + join_digits(d.period) + ")";
    }
    case SlopeData::Kind::generated:
      return "cf:0;<generated>";
  }
  return {};
}

int Slope::sign(IntForm f, ComparisonMode mode) const {
  const auto& d = *data_;
  if (f.alpha == 0) return f.constant > 0 ? 1 : (f.constant < 0 ? -1 : 0);
  if (mode == ComparisonMode::interval) {
    if (!d.has_wide)
      throw Error(ErrorKind::insufficient_digits, "insufficient digits for a 2^-128 bracket of alpha");
    int lo = sign_of(Integer(f.constant) * d.wlo_den + Integer(f.alpha) * d.wlo_num);
    int hi = sign_of(Integer(f.constant) * d.whi_den + Integer(f.alpha) * d.whi_num);
    if (d.kind == SlopeData::Kind::rational) return lo;
    int s = combine_ends(lo, hi);
    if (s == 2) throw Error(ErrorKind::undecidable, "sign undecidable at 2^-128 precision");
    return s;
  }
  if (d.has_fast) {
    int lo = sign_of(Int128(f.constant) * d.lo_den + Int128(f.alpha) * d.lo_num);
    if (d.kind == SlopeData::Kind::rational) return lo;
    int hi = sign_of(Int128(f.constant) * d.hi_den + Int128(f.alpha) * d.hi_num);
    int s = combine_ends(lo, hi);
    if (s != 2) return s;
  }
  // c + d*alpha > 0  <=>  alpha > -c/d (d > 0), alpha < -c/d (d < 0).
  auto ord = compare_alpha(*this, Rational(Integer(-f.constant)) / Integer(f.alpha));
  int s = ord == std::strong_ordering::greater ? 1 : (ord == std::strong_ordering::less ? -1 : 0);
  return f.alpha > 0 ? s : -s;
}

int Slope::sign(const LinearForm& f) const {
  const Rational& c = f.constant();
  const Rational& a = f.alpha_coefficient();
  if (a == 0) return c > 0 ? 1 : (c < 0 ? -1 : 0);
  Integer den = f.denominator();
  Integer sc = numerator(c) * (den / denominator(c));
  Integer sa = numerator(a) * (den / denominator(a));
  constexpr auto lim = std::numeric_limits<std::int64_t>::max();
  if (boost::multiprecision::abs(sc) < lim && boost::multiprecision::abs(sa) < lim)
    return sign(IntForm{static_cast<std::int64_t>(sc), static_cast<std::int64_t>(sa)});
  auto ord = compare_alpha(*this, -c / a);
  int s = ord == std::strong_ordering::greater ? 1 : (ord == std::strong_ordering::less ? -1 : 0);
  return a > 0 ? s : -s;
}

std::pair<Rational, Rational> Slope::bracket(const Rational& max_width) const {
  for (std::size_t depth = 4;; depth *= 2) {
    auto b = bracket_at_depth(*data_, depth);
    if (b.second - b.first <= max_width) return b;
    if (bracket_is_final(*data_, depth))
      throw Error(ErrorKind::insufficient_digits,
                  "insufficient digits: requested precision is not reachable from the available digits");
  }
}

double Slope::approximate() const { return data_->approx; }

std::optional<Slope::FastBracket> Slope::fast_bracket() const {
  const auto& d = *data_;
  if (!d.has_fast) return std::nullopt;
  return FastBracket{d.lo_num, d.lo_den, d.hi_num, d.hi_den, d.kind == SlopeData::Kind::rational};
}

// --------------------------------------------------------------------------
// Free functions

std::vector<Integer> expand_rational(const Integer& num, const Integer& den) {
  if (den < 1) throw Error(ErrorKind::invalid_argument, "denominator must be >= 1");
  std::vector<Integer> out;
  Integer a = num, b = den;
  while (b != 0) {
    Integer q = floor_div(a, b);
    out.push_back(q);
    Integer r = a - q * b;
    a = b;
    b = r;
  }
  return out;
}

Rational evaluate(std::span<const Integer> digits) {
  if (digits.empty()) throw Error(ErrorKind::invalid_argument, "empty continued fraction");
  Rational value(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) value = Rational(digits[i]) + 1 / value;
  return value;
}

std::strong_ordering compare_alpha(const Slope& slope, const Rational& r) {
  if (slope.is_rational()) {
    auto [lo, hi] = slope.bracket(Rational(0));
    if (lo < r) return std::strong_ordering::less;
    if (lo > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  Integer P = numerator(r);
  Integer Q = denominator(r);
  bool flipped = false;
  auto result = [&](std::strong_ordering o) {
    if (!flipped) return o;
    return o == std::strong_ordering::less ? std::strong_ordering::greater : std::strong_ordering::less;
  };
  for (std::size_t i = 0;; ++i) {
    // Complete quotients: rho_i for alpha (irrational, rho_i in (a_i, a_i + 1)
    // for i >= 1) and x_i = P/Q for r.
    Integer c = floor_div(P, Q);
    Integer rem = P - c * Q;
    Integer a(slope.require_digit(i));
    if (a < c) return result(std::strong_ordering::less);
    if (a > c) return result(std::strong_ordering::greater);
    if (rem == 0) return result(std::strong_ordering::greater);  // rho_i > a_i = x_i
    P = Q;
    Q = rem;
    flipped = !flipped;
  }
}

std::strong_ordering compare(const LinearForm& a, const LinearForm& b, const Slope& slope) {
  int s = slope.sign(a - b);
  return s > 0 ? std::strong_ordering::greater : (s < 0 ? std::strong_ordering::less : std::strong_ordering::equal);
}

Integer floor(const LinearForm& f, const Slope& slope) {
  if (f.is_rational()) return floor_div(numerator(f.constant()), denominator(f.constant()));
  Rational width = Rational(1, 2) / boost::multiprecision::abs(f.alpha_coefficient());
  Integer n;
  try {
    auto [lo, hi] = slope.bracket(width);
    Rational v = f.constant() + f.alpha_coefficient() * lo;
    n = floor_div(numerator(v), denominator(v));
  } catch (const Error&) {
    n = 0;  // fall through to the exact adjustment below
  }
  while (slope.sign(f - LinearForm(Rational(n))) < 0) --n;
  while (slope.sign(f - LinearForm(Rational(n + 1))) >= 0) ++n;
  return n;
}

std::int64_t floor_multiple(std::int64_t q, const Slope& slope) {
  // floor(q alpha) = n  <=>  q alpha - n >= 0 and q alpha - n - 1 < 0.
  double guess = static_cast<double>(q) * slope.approximate();
  auto n = static_cast<std::int64_t>(guess < 0 ? guess - 1 : guess);
  while (slope.sign(IntForm{-n, q}) < 0) --n;
  while (slope.sign(IntForm{-(n + 1), q}) >= 0) ++n;
  return n;
}

IntForm fractional_part(std::int64_t q, const Slope& slope) {
  return IntForm{-floor_multiple(q, slope), q};
}

Enclosure enclose(const LinearForm& f, const Slope& slope, const Rational& max_width) {
  if (f.is_rational()) return {f.constant(), f.constant()};
  const Rational abs_a = boost::multiprecision::abs(f.alpha_coefficient());
  auto [lo, hi] = slope.bracket(max_width / abs_a);
  Rational x = f.constant() + f.alpha_coefficient() * lo;
  Rational y = f.constant() + f.alpha_coefficient() * hi;
  if (y < x) std::swap(x, y);
  return {x, y};
}

LinearForm nearest_integer_distance(const Integer& q, const Slope& slope) {
  LinearForm qa(Rational(0), Rational(q));
  Integer n = floor(qa, slope);
  LinearForm below = qa - LinearForm(Rational(n));
  LinearForm above = LinearForm(Rational(n + 1)) - qa;
  return slope.sign(above - below) < 0 ? above : below;
}

Enclosure norm_dist(const Integer& q, const Slope& slope, const Rational& precision) {
  if (q < 1) throw Error(ErrorKind::invalid_argument, "norm_dist needs q >= 1");
  return enclose(nearest_integer_distance(q, slope), slope, precision);
}

// --------------------------------------------------------------------------
// ConvergentTable

ConvergentTable::ConvergentTable(const Slope& slope, std::size_t k_max) {
  digits_.reserve(k_max + 1);
  p_ = {Integer(1)};
  q_ = {Integer(0)};
  for (std::size_t k = 0; k <= k_max; ++k) {
    Slope::Digit a = slope.require_digit(k);
    digits_.push_back(a);
    if (k == 0) {
      p_.push_back(Integer(a));
      q_.push_back(Integer(1));
    } else {
      p_.push_back(Integer(a) * p_[k] + p_[k - 1]);
      q_.push_back(Integer(a) * q_[k] + q_[k - 1]);
    }
  }
}

std::uint64_t ConvergentTable::q_u64(long k) const {
  const Integer& v = q(k);
  if (v > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorKind::out_of_range, "q_" + std::to_string(k) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::int64_t ConvergentTable::p_i64(long k) const {
  const Integer& v = p(k);
  if (v > std::numeric_limits<std::int64_t>::max())
    throw Error(ErrorKind::out_of_range, "p_" + std::to_string(k) + " exceeds 63 bits");
  return static_cast<std::int64_t>(v);
}

LinearForm ConvergentTable::eps(long k) const {
  LinearForm f(Rational(-p(k)), Rational(q(k)));
  return (k % 2 == 0) ? f : -f;
}

IntForm ConvergentTable::eps_int(long k) const {
  const Integer& qk = q(k);
  if (qk > std::numeric_limits<std::int64_t>::max())
    throw Error(ErrorKind::out_of_range, "q_" + std::to_string(k) + " exceeds 63 bits");
  IntForm f{-p_i64(k), static_cast<std::int64_t>(qk)};
  return (k % 2 == 0) ? f : -f;
}

ConvergentTable convergents(const Slope& slope, std::size_t k_max) { return ConvergentTable(slope, k_max); }

bool is_badly_approximable_prefix(const Slope& slope, Slope::Digit bound, std::size_t k_max) {
  for (std::size_t i = 1; i <= k_max; ++i)
    if (slope.require_digit(i) > bound) return false;
  return true;
}

}  // namespace superdense
