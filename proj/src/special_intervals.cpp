#include "superdense/special_intervals.hpp"

#include <cmath>
#include <set>

#include "superdense/error.hpp"
#include "superdense/three_distance.hpp"

namespace superdense {

namespace {

using Int128 = __int128;

std::int64_t q_at(const ConvergentTable& t, long k) {
  const Integer& v = t.q(k);
  if (v > std::numeric_limits<std::int64_t>::max() / 4)
    throw Error(ErrorKind::out_of_range, "q_" + std::to_string(k) + " is too large for the partition");
  return static_cast<std::int64_t>(v);
}

// Calls f(q, {q alpha}) for the q_{k+1} points of A_k in increasing order from 0.
// Point i of the rotation order {i alpha}, 0 <= i <= q_{k+1} - 1, is {(i-1) alpha}
// shifted by alpha, so the order and gaps are the same.
template <class F>
void walk(const RotationOrder& order, F&& f) {
  std::int64_t i = 1;
  IntForm value{0, 0};
  for (std::uint64_t n = 0; n <= order.n(); ++n) {
    f(i - 1, value, order.gap_after(i));
    value += order.gap_after(i);
    i = order.successor(i);
  }
}

int sign(const Slope& slope, IntForm f) { return slope.sign(f); }

// Finds some {i alpha} in [lo, hi] with 1 <= i <= q - 2, where q = q_{j+1}
// and p = p_{j+1}. The points {i alpha}, 0 <= i < q, are ordered like
// i*p mod q, so the rank of a real x is about x*q.
class PointFinder {
 public:
  PointFinder(const Slope& slope, const ConvergentTable& t, long j) : slope_(slope) {
    q_ = q_at(t, j + 1);
    p_ = t.p_i64(j + 1);
    // Inverse of p modulo q.
    Int128 r0 = q_, r1 = p_ % q_, s0 = 0, s1 = 1;
    while (r1 != 0) {
      Int128 quot = r0 / r1;
      Int128 tmp = r0 - quot * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - quot * s1;
      s0 = s1;
      s1 = tmp;
    }
    pinv_ = ((s0 % q_) + q_) % q_;
    // q alpha - p = (-1)^(j+1) eps_{j+1}.
    double e = enclose(t.eps(j + 1), slope, Rational(1) / (Integer(1) << 120)).value();
    e_ = (j + 1) % 2 == 0 ? e : -e;
    alpha_ = slope.approximate();
  }

  std::optional<std::int64_t> find(IntForm lo, IntForm hi) const {
    if (sign(slope_, hi - lo) < 0) return std::nullopt;
    const Int128 base = Int128(lo.constant) * q_ + Int128(lo.alpha) * p_;
    const double frac = static_cast<double>(lo.alpha) * e_;
    const Int128 t0 = base + static_cast<Int128>(std::floor(frac));
    const IntForm w = hi - lo;
    const double len = static_cast<double>(w.constant) + static_cast<double>(w.alpha) * alpha_;
    const auto count = std::min<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(len * static_cast<double>(q_))) + 3);
    for (std::int64_t d = -1; d < count; ++d) {
      Int128 t = ((t0 + d) % q_ + q_) % q_;
      auto i = static_cast<std::int64_t>(t * pinv_ % q_);
      if (i < 1 || i > q_ - 2) continue;
      IntForm c = fractional_part(i, slope_);
      if (sign(slope_, c - lo) >= 0 && sign(slope_, hi - c) >= 0) return i;
    }
    return std::nullopt;
  }

 private:
  const Slope& slope_;
  std::int64_t q_ = 1, p_ = 0;
  Int128 pinv_ = 0;
  double e_ = 0, alpha_ = 0;
};

}  // namespace

PartitionAk partition(long k, const Slope& slope) {
  if (k < 0) throw Error(ErrorKind::invalid_argument, "k must be >= 0");
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  const std::int64_t count = q_at(t, k + 1);
  PartitionAk out;
  out.k = k;
  if (count < 2) {
    out.points.push_back({-1, fractional_part(-1, slope), IntForm{1, 0}});
    return out;
  }
  RotationOrder order(slope, static_cast<std::uint64_t>(count - 1));
  out.points.reserve(static_cast<std::size_t>(count));
  walk(order, [&](std::int64_t q, IntForm v, IntForm gap) { out.points.push_back({q, v, gap}); });
  return out;
}

bool is_degenerate_level(long k, const Slope& slope) {
  if (k < 0) throw Error(ErrorKind::invalid_argument, "k must be >= 0");
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  return t.q(k) > t.q(k + 1) - 2;
}

BufferZones buffer_zones(long k, const Slope& slope) {
  if (is_degenerate_level(k, slope))
    throw Error(ErrorKind::degenerate_level,
                "degenerate level k=" + std::to_string(k) + " (q_k > q_{k+1} - 2); increase k");
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  const std::int64_t qk = q_at(t, k), qk1 = q_at(t, k + 1), qkm = q_at(t, k - 1);
  RotationOrder order(slope, static_cast<std::uint64_t>(qk1 - 1));
  BufferZones z;
  z.k = k;
  const std::int64_t right = order.successor(1), left = order.predecessor(1);
  z.right_neighbor = right - 1;
  z.left_neighbor = left - 1;
  z.d_star_star = order.gap_after(1);
  z.d_star = order.gap_before(1);
  const IntForm ek = t.eps_int(k), ek1 = t.eps_int(k + 1);
  z.d_star_is_long = z.d_star == ek + ek1;

  const std::int64_t other = static_cast<std::int64_t>(t.digit(static_cast<std::size_t>(k + 1)) - 1) * qk + qkm;
  const std::set<std::int64_t> expected{qk, other}, found{z.left_neighbor, z.right_neighbor};
  const std::set<std::pair<std::int64_t, std::int64_t>> gaps{{z.d_star.constant, z.d_star.alpha},
                                                              {z.d_star_star.constant, z.d_star_star.alpha}};
  const IntForm long_gap = ek + ek1;
  const std::set<std::pair<std::int64_t, std::int64_t>> eps{{ek.constant, ek.alpha}, {long_gap.constant, long_gap.alpha}};
  // 1 - alpha is point i = 0.
  const bool same_order = order.successor(0) == right - 1 && order.predecessor(0) == left - 1 &&
                          order.gap_after(0) == z.d_star_star && order.gap_before(0) == z.d_star;
  z.neighbor_identities = expected == found && gaps == eps && same_order;
  return z;
}

namespace {

SpecialInterval make_interval(long k, std::int64_t q, IntForm center, const BufferZones& z) {
  return {k, q, 0, center, center - z.d_star_star, center + z.d_star};
}

}  // namespace

SpecialInterval special_interval(long k, std::int64_t q, const Slope& slope) {
  BufferZones z = buffer_zones(k, slope);
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  if (q < 1 || q > q_at(t, k + 1) - 2)
    throw Error(ErrorKind::out_of_range, "q must satisfy 1 <= q <= q_{k+1} - 2");
  return make_interval(k, q, fractional_part(q, slope), z);
}

std::vector<SpecialInterval> copy_extension(const SpecialInterval& j, int s) {
  if (s < 1) throw Error(ErrorKind::invalid_argument, "s must be >= 1");
  std::vector<SpecialInterval> out;
  for (int r = 0; r < s; ++r) {
    out.push_back(j);
    out.back().copy = r;
  }
  return out;
}

std::vector<SpecialInterval> special_intervals(long k, const Slope& slope) {
  BufferZones z = buffer_zones(k, slope);
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  RotationOrder order(slope, static_cast<std::uint64_t>(q_at(t, k + 1) - 1));
  std::vector<SpecialInterval> out;
  walk(order, [&](std::int64_t q, IntForm v, IntForm) {
    if (q >= 1) out.push_back(make_interval(k, q, v, z));
  });
  return out;
}

ChainCoverReport chain_cover_audit(long k, const Slope& slope, int s) {
  if (s < 1) throw Error(ErrorKind::invalid_argument, "s must be >= 1");
  ChainCoverReport rep;
  rep.k = k;
  rep.s = s;
  rep.zones = buffer_zones(k, slope);
  ConvergentTable t(slope, static_cast<std::size_t>(k + 9));
  const std::int64_t count = q_at(t, k + 1);
  if (count < 4) throw Error(ErrorKind::invalid_argument, "chain cover needs q_{k+1} >= 4");
  rep.intervals = static_cast<std::uint64_t>(count - 2);
  std::uint64_t dropped = 0;
  auto fail = [&](std::string msg) {
    if (rep.failures.size() < 8)
      rep.failures.push_back(std::move(msg));
    else
      ++dropped;
  };
  if (!rep.zones.neighbor_identities) fail("buffer-zone neighbour identities fail at k=" + std::to_string(k));

  // Next-but-eight level.
  rep.growth = t.q(k + 9) >= 16 * t.q(k + 1);
  if (!rep.growth) fail("q_{k+9} < 16 q_{k+1}");
  std::optional<BufferZones> z8;
  try {
    z8 = buffer_zones(k + 8, slope);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate_level) throw;
    fail("level k+8 is degenerate");
  }
  std::optional<PointFinder> finder;
  if (z8) {
    const LinearForm len8(z8->d_star + z8->d_star_star);
    rep.length_bound = slope.sign(LinearForm(Rational(3) / t.q(k + 9)) - len8) > 0;
    if (!rep.length_bound) fail("length(J_{k+8}) >= 3/q_{k+9}");
    finder.emplace(slope, t, k + 8);
  }

  const BufferZones& z = rep.zones;
  const IntForm ek = t.eps_int(k);
  const IntForm one{1, 0}, zero{0, 0}, cut{1, -1};
  RotationOrder order(slope, static_cast<std::uint64_t>(count - 1));

  bool avoid = true, overlap = true, cover = true, cross = true;
  std::optional<IntForm> min_overlap;
  std::vector<IntForm> uncovered;
  IntForm reach = zero;
  SpecialInterval prev;
  bool has_prev = false;
  std::size_t components = 0;
  walk(order, [&](std::int64_t q, IntForm v, IntForm) {
    if (q == 0) return;
    if (q == -1) {
      if (!(v == cut)) fail("partition point 1-alpha misplaced");
      has_prev = false;
      return;
    }
    SpecialInterval j = make_interval(k, q, v, z);
    for (IntForm p : {zero, cut, one}) {
      if (sign(slope, p - j.lower) > 0 && sign(slope, j.upper - p) > 0) {
        avoid = false;
        fail("J_k(" + std::to_string(q) + ") contains a singular point");
      }
    }
    // Union of open interiors: a new component starts whenever the next
    // interior does not reach back past the current end.
    const int c = sign(slope, j.lower - reach);
    if (c < 0 && components > 0) {
      if (sign(slope, j.upper - reach) > 0) reach = j.upper;
    } else {
      if (c == 0) {
        uncovered.push_back(reach);
      } else if (c > 0) {
        cover = false;
        fail("uncovered gap before J_k(" + std::to_string(q) + ")");
      }
      ++components;
      reach = j.upper;
    }
    if (has_prev) {
      const IntForm ov = prev.upper - j.lower;
      if (!min_overlap || sign(slope, ov - *min_overlap) < 0) min_overlap = ov;
      if (sign(slope, ov - ek) < 0) {
        overlap = false;
        fail("J_k(" + std::to_string(prev.q) + ") and J_k(" + std::to_string(q) + ") overlap by less than eps_k");
      }
      if (finder) {
        ++rep.cross_level_pairs;
        auto found = finder->find(j.lower + z8->d_star_star, prev.upper - z8->d_star);
        if (!found) {
          cross = false;
          fail("no J_{k+8} inside J_k(" + std::to_string(prev.q) + ") and J_k(" + std::to_string(q) + ")");
        }
      }
    }
    prev = j;
    has_prev = true;
  });
  const int end = sign(slope, one - reach);
  if (end > 0) {
    cover = false;
    fail("uncovered gap before 1");
  }
  rep.avoidance = avoid;
  rep.overlap = overlap;
  rep.cover = cover;
  rep.cross_level = cross && finder.has_value();
  rep.min_overlap = min_overlap ? LinearForm(*min_overlap) : LinearForm();
  rep.chains = components * static_cast<std::size_t>(s);
  for (int r = 0; r < s; ++r)
    for (IntForm u : uncovered) rep.uncovered.push_back(LinearForm(u) + LinearForm(r));
  rep.uncovered_matches = uncovered.size() == 2 && uncovered[0] == zero && uncovered[1] == cut && components == 2;
  if (!rep.uncovered_matches) fail("uncovered set differs from {j-1, j-alpha}");
  if (dropped > 0) rep.failures.push_back("... and " + std::to_string(dropped) + " more");
  return rep;
}

}  // namespace superdense
