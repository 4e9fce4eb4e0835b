#include "superdense/superdensity.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "superdense/error.hpp"
#include "superdense/three_distance.hpp"

namespace superdense {

namespace {

// Offsets in [0, 1) are kept as (K + B*alpha)/D with a common denominator D.
struct Scaled {
  std::int64_t D = 1, K = 0, B = 0;
};

Scaled scale(const LinearForm& f, std::uint64_t growth) {
  const Integer D = f.denominator();
  const Integer K = numerator(f.constant()) * (D / denominator(f.constant()));
  const Integer B = numerator(f.alpha_coefficient()) * (D / denominator(f.alpha_coefficient()));
  const Integer lim = std::numeric_limits<std::int64_t>::max() / 8;
  if (D > lim || abs(K) > lim || abs(B) + D * Integer(growth) + D > lim || D * Integer(growth) > lim)
    throw Error(ErrorKind::out_of_range, "orbit offsets do not fit in 64-bit arithmetic");
  return {static_cast<std::int64_t>(D), static_cast<std::int64_t>(K), static_cast<std::int64_t>(B)};
}

LinearForm unscale(std::int64_t D, IntForm f) {
  return {Rational(f.constant) / D, Rational(f.alpha) / D};
}

}  // namespace

FreeGapReport longest_free_gap(const CompactOrbit& orbit, const Slope& slope) {
  return longest_free_gap(orbit, slope, 0, orbit.size());
}

FreeGapReport longest_free_gap(const CompactOrbit& orbit, const Slope& slope, std::uint64_t begin, std::uint64_t end) {
  if (begin > end || end > orbit.size())
    throw Error(ErrorKind::empty_window, "window [" + std::to_string(begin) + ", " + std::to_string(end) +
                                             ") is not inside the orbit of length " + std::to_string(orbit.size()));
  const int s = orbit.squares();
  FreeGapReport rep;
  rep.s = s;
  rep.begin = begin;
  rep.end = end;
  rep.m = end - begin;
  if (rep.m == 0) {
    rep.gap = LinearForm(s);
    rep.lower = LinearForm(0);
    rep.upper = LinearForm(s);
    return rep;
  }
  const std::uint64_t n = rep.m - 1;
  const Scaled g = scale(orbit.offset(begin, slope), rep.m);
  const std::int64_t D = g.D;
  const SignEvaluator sign(slope);

  // Walk the points in circle order from the first one: P is the distance
  // travelled from it, and the offset wraps past 1 exactly once.
  struct PerSquare {
    bool before = false, after = false, prev = false, prev_wrapped = false;
    IntForm first_before, last_before, first_after, last_after, prev_p;
  };
  std::vector<PerSquare> sq(static_cast<std::size_t>(s));
  auto offset = [&](IntForm p, bool wrapped) {
    return IntForm{g.K + D * (p.constant - (wrapped ? 1 : 0)), g.B + D * p.alpha};
  };

  IntForm best{-1, 0};  // scaled by D
  IntForm best_lo, best_hi;
  int best_lo_sq = 0, best_hi_sq = 0;
  bool best_lo_point = true, best_hi_point = true;
  auto consider = [&](IntForm gap, int lo_sq, IntForm lo, bool lo_point, int hi_sq, IntForm hi, bool hi_point) {
    if (sign(gap - best) > 0) {
      best = gap;
      best_lo_sq = lo_sq;
      best_lo = lo;
      best_lo_point = lo_point;
      best_hi_sq = hi_sq;
      best_hi = hi;
      best_hi_point = hi_point;
    }
  };

  if (n == 0) {
    auto& e = sq[static_cast<std::size_t>(orbit.square(begin))];
    e.before = true;
    e.first_before = e.last_before = IntForm{0, 0};
  } else {
    RotationOrder order(slope, n);
    constexpr int kAhead = 24;
    std::int64_t ahead = 0;
    for (int t = 0; t < kAhead; ++t) {
      orbit.prefetch(begin + static_cast<std::uint64_t>(ahead));
      ahead = order.successor(ahead);
    }
    std::int64_t j = 0;
    IntForm p{0, 0};
    bool wrapped = false;
    for (std::uint64_t step = 0; step <= n; ++step) {
      orbit.prefetch(begin + static_cast<std::uint64_t>(ahead));
      ahead = order.successor(ahead);
      const int r = orbit.square(begin + static_cast<std::uint64_t>(j));
      auto& e = sq[static_cast<std::size_t>(r)];
      if (e.prev && e.prev_wrapped == wrapped) {
        const IntForm d = p - e.prev_p;
        consider(IntForm{D * d.constant, D * d.alpha}, r, offset(e.prev_p, wrapped), true, r, offset(p, wrapped), true);
      }
      e.prev = true;
      e.prev_p = p;
      e.prev_wrapped = wrapped;
      if (!wrapped) {
        if (!e.before) e.first_before = p;
        e.last_before = p;
        e.before = true;
      } else {
        if (!e.after) e.first_after = p;
        e.last_after = p;
        e.after = true;
      }
      p += order.gap_after(j);
      j = order.successor(j);
      if (!wrapped) {
        const IntForm o = offset(p, false);
        wrapped = sign(o.constant - D, o.alpha) >= 0;
      }
    }
  }

  // Gaps across square boundaries on the line [0, s).
  int last = -1;
  IntForm last_max;
  for (int r = 0; r < s; ++r) {
    const auto& e = sq[static_cast<std::size_t>(r)];
    if (!e.before && !e.after) continue;
    const IntForm lo = e.after ? offset(e.first_after, true) : offset(e.first_before, false);
    const IntForm hi = e.before ? offset(e.last_before, false) : offset(e.last_after, true);
    if (e.before && e.after) {
      // Largest offset below the first point, and the first point itself.
      const IntForm a = offset(e.last_after, true), b = offset(e.first_before, false);
      consider(b - a, r, a, true, r, b, true);
    }
    if (last < 0) {
      consider(IntForm{D * r + lo.constant, lo.alpha}, 0, IntForm{0, 0}, false, r, lo, true);
    } else {
      consider(IntForm{D * (r - last) + lo.constant - last_max.constant, lo.alpha - last_max.alpha}, last, last_max, true,
               r, lo, true);
    }
    last = r;
    last_max = hi;
  }
  consider(IntForm{D * (s - last) - last_max.constant, -last_max.alpha}, last, last_max, true, s - 1, IntForm{D, 0},
           false);

  rep.gap = unscale(D, best);
  rep.lower = LinearForm(best_lo_sq) + unscale(D, best_lo);
  rep.upper = LinearForm(best_hi_sq) + unscale(D, best_hi);
  rep.lower_is_point = best_lo_point;
  rep.upper_is_point = best_hi_point;
  return rep;
}

Integer crossing_threshold(int s, const Slope& slope, long k) {
  if (s < 1 || k < 0) throw Error(ErrorKind::invalid_argument, "need s >= 1 and k >= 0");
  ConvergentTable t(slope, static_cast<std::size_t>(k + 8 * s - 7 > 0 ? k + 8 * s - 7 : 0));
  Integer sum = 0;
  for (int u = 1; u <= s; ++u) sum += t.q(k + 8 * u - 7);
  return 2 * s + 1 + 2 * sum;
}

GeodesicState default_start(const PolysquareSurface& surface, const Slope& slope) {
  return GeodesicState(surface, slope, 0, Rational(1, 3), Rational(1, 2));
}

std::vector<GapProductRow> gap_product_scan(const GeodesicState& start, const std::vector<std::uint64_t>& m_list) {
  std::vector<GapProductRow> rows;
  if (m_list.empty()) return rows;
  const std::uint64_t longest = *std::max_element(m_list.begin(), m_list.end());
  std::optional<CrossingSequence> seq;
  if (longest > 0) seq = crossing_sequence(start, longest);
  const Rational precision(Rational(1) / (Integer(1) << 80));
  for (std::uint64_t m : m_list) {
    GapProductRow row;
    row.m = m;
    if (m == 0) {
      row.gap = LinearForm(start.surface.size());
    } else {
      row.gap = longest_free_gap(seq->orbit, start.slope, 0, m).gap;
    }
    row.gap_value = enclose(row.gap, start.slope, precision).value();
    row.product = static_cast<double>(m) * row.gap_value;
    rows.push_back(std::move(row));
  }
  return rows;
}

FreeCopyAudit free_copy_audit(const PolysquareSurface& surface, const Slope& slope, long k, const CompactOrbit& crossings,
                              std::optional<std::uint64_t> margin) {
  const int s = surface.size();
  if (crossings.squares() != s) throw Error(ErrorKind::invalid_argument, "orbit and surface disagree on s");
  const BufferZones z = buffer_zones(k, slope);
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  const std::uint64_t q1 = t.q_u64(k + 1);
  const std::uint64_t m = crossings.size();
  if (m <= 2 * q1) throw Error(ErrorKind::invalid_argument, "free-copy audit needs m > 2 q_{k+1}");
  FreeCopyAudit audit;
  audit.k = k;
  audit.s = s;
  audit.m = m;
  audit.margin = margin.value_or(q1);
  if (2 * audit.margin >= m) throw Error(ErrorKind::empty_window, "margins leave no crossings in the window");

  const auto intervals = special_intervals(k, slope);
  const SignEvaluator sign(slope);
  const std::size_t count = intervals.size();
  // bit 0: hit by the window, bit 1: hit by the whole orbit
  std::vector<char> hit(count * static_cast<std::size_t>(s), 0);

  // Window margin <= i <= m - margin (1-based).
  const std::uint64_t begin = audit.margin == 0 ? 0 : audit.margin - 1;
  const std::uint64_t end = m - audit.margin;
  Scaled v = scale(crossings.offset(0, slope), m);
  const std::int64_t D = v.D;
  for (std::uint64_t i = 0; i < m; ++i) {
    const int r = crossings.square(i);
    const char mark = (i >= begin && i < end) ? 3 : 2;
    // v in J(q)  <=>  v - d* < c_q <= v + d**
    const IntForm lo{v.K - D * z.d_star.constant, v.B - D * z.d_star.alpha};
    const IntForm hi{v.K + D * z.d_star_star.constant, v.B + D * z.d_star_star.alpha};
    auto it = std::partition_point(intervals.begin(), intervals.end(), [&](const SpecialInterval& j) {
      return sign(D * j.center.constant - lo.constant, D * j.center.alpha - lo.alpha) <= 0;
    });
    for (; it != intervals.end(); ++it) {
      if (sign(hi.constant - D * it->center.constant, hi.alpha - D * it->center.alpha) < 0) break;
      hit[static_cast<std::size_t>(it - intervals.begin()) * static_cast<std::size_t>(s) + static_cast<std::size_t>(r)] |= mark;
    }
    v.B += D;
    if (sign(v.K - D, v.B) >= 0) v.K -= D;
  }

  const IntForm cut{1, -1};
  for (std::size_t idx = 0; idx < count; ++idx) {
    FreeCopyEntry e;
    e.q = intervals[idx].q;
    e.chain = sign(intervals[idx].center - cut) > 0 ? 1 : 0;
    for (int r = 0; r < s; ++r) {
      const char h = hit[idx * static_cast<std::size_t>(s) + static_cast<std::size_t>(r)];
      if (!(h & 1)) e.free.push_back(r);
      if (!(h & 2)) e.orbit_free.push_back(r);
    }
    if (static_cast<int>(e.orbit_free.size()) == s) audit.all_free.push_back(e.q);
    if (!audit.entries.empty() && audit.entries.back().chain == e.chain) {
      ++audit.neighbor_pairs;
      if (audit.entries.back().free != e.free) ++audit.unsynchronized_pairs;
    }
    audit.entries.push_back(std::move(e));
  }
  audit.simple_case_bound = audit.all_free.empty() || m <= 2 * q1 + 2 * static_cast<std::uint64_t>(s);
  return audit;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("SUPERDENSE_BUDGET")) {
    char* stop = nullptr;
    const unsigned long long v = std::strtoull(env, &stop, 10);
    if (stop != env && *stop == '\0' && v > 0) return v;
    throw Error(ErrorKind::invalid_argument, std::string("SUPERDENSE_BUDGET is not a positive integer: ") + env);
  }
  return 10'000'000;
}

Certificate superdensity_certificate(const PolysquareSurface& surface, const Slope& slope, long k,
                                     const CertificateOptions& options) {
  const int s = surface.size();
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  const auto bound = slope.digit_bound();
  if (!bound) throw Error(ErrorKind::invalid_argument, "the certificate needs a badly approximable slope with known bound A");
  const long top = k + 8 * s - 7;
  if (!is_badly_approximable_prefix(slope, *bound, static_cast<std::size_t>(top + 1)))
    throw Error(ErrorKind::invalid_argument, "a digit exceeds the declared bound A");
  for (long level = k; level <= top; ++level)
    if (is_degenerate_level(level, slope))
      throw Error(ErrorKind::degenerate_level, "level " + std::to_string(level) + " is degenerate; increase k");

  Certificate cert;
  cert.k = k;
  cert.s = s;
  cert.digit_bound = *bound;
  const Integer m_star = crossing_threshold(s, slope, k);
  if (m_star > Integer(options.budget))
    throw BudgetError(m_star > Integer(std::numeric_limits<std::uint64_t>::max())
                          ? std::numeric_limits<std::uint64_t>::max()
                          : static_cast<std::uint64_t>(m_star),
                      options.budget);
  cert.m_star = static_cast<std::uint64_t>(m_star);

  const GeodesicState start = options.start ? *options.start : default_start(surface, slope);
  const ExactPoint y1 = trace_crossings(start, 1).front();
  const CompactOrbit orbit = IetMap(start.surface, slope).compact_orbit(y1, cert.m_star, options.mode);
  cert.gap = longest_free_gap(orbit, slope);

  ConvergentTable t(slope, static_cast<std::size_t>(k));
  cert.gap_limit = Rational(8) / t.q(k);
  cert.gap_ok = slope.sign(LinearForm(cert.gap_limit) - cert.gap.gap) > 0;

  // Ceiling C*sqrt(2) with C = (4s+1)(A+1)^(8s-7)*8.
  Integer c = Integer(4 * s + 1) * 8;
  for (int e = 0; e < 8 * s - 7; ++e) c *= Integer(*bound + 1);
  const Rational precision(Rational(1) / (Integer(1) << 100));
  const Enclosure g = enclose(cert.gap.gap, slope, precision);
  const auto alpha = slope.bracket(precision);
  const Rational m(cert.m_star);
  const Rational two_c2 = Rational(2) * Rational(c) * Rational(c);
  const Rational mg = m * g.upper;
  const Rational big_m2 = (m + 1) * (m + 1) * (1 + alpha.second * alpha.second);
  cert.product_ok = mg * mg <= two_c2 && big_m2 * g.upper * g.upper <= two_c2;
  cert.product = static_cast<double>(cert.m_star) * g.value();
  cert.length_product = static_cast<double>(cert.m_star + 1) * speed_factor(slope) * g.value();
  cert.ceiling = static_cast<double>(c) * std::sqrt(2.0);
  return cert;
}

}  // namespace superdense
