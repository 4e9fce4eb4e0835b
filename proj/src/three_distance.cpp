#include "superdense/three_distance.hpp"

#include "superdense/error.hpp"

namespace superdense {

Decomposition decompose(std::uint64_t n, const Slope& slope) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
  // q_k + q_{k-1} <= n <= q_{k+1} + q_k - 1 selects k.
  Integer q_prev = 0, q = 1;  // q_{k-1}, q_k
  for (long k = 0;; ++k) {
    Slope::Digit a = slope.require_digit(static_cast<std::size_t>(k + 1));
    Integer q_next = Integer(a) * q + q_prev;
    if (Integer(n) <= q_next + q - 1) {
      Integer rest = Integer(n) - q_prev;
      Integer mu = rest / q;
      Integer r = rest - mu * q;
      return {k, static_cast<std::uint64_t>(mu), static_cast<std::uint64_t>(r)};
    }
    q_prev = q;
    q = q_next;
  }
}

GapSpectrum gap_spectrum(std::uint64_t n, const Slope& slope) {
  GapSpectrum out;
  out.n = n;
  out.decomposition = decompose(n, slope);
  const auto& [k, mu, r] = out.decomposition;
  ConvergentTable t(slope, static_cast<std::size_t>(k + 1));
  const std::uint64_t qk = t.q_u64(k);
  const LinearForm ek = t.eps(k);
  const LinearForm ek1 = t.eps(k - 1);
  auto add = [&](LinearForm g, std::uint64_t m) {
    if (m > 0) out.entries.push_back({std::move(g), m});
  };
  add(ek, n + 1 - qk);
  add(ek1 - Rational(mu) * ek, r + 1);
  add(ek1 - Rational(mu - 1) * ek, qk - r - 1);
  return out;
}

RotationOrder::RotationOrder(const Slope& slope, std::uint64_t n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "rotation order needs n >= 1");
  Decomposition d = decompose(n, slope);
  ConvergentTable t(slope, static_cast<std::size_t>(d.k + 1));
  const auto qk = static_cast<std::int64_t>(t.q_u64(d.k));
  const auto other = static_cast<std::int64_t>(t.q_u64(d.k - 1)) + static_cast<std::int64_t>(d.mu) * qk;
  // {q_k alpha} is near 0 from above when k is even, from below when odd.
  if (d.k % 2 == 0) {
    up_ = qk;
    down_ = other;
  } else {
    up_ = other;
    down_ = qk;
  }
  up_gap_ = fractional_part(up_, slope);
  down_gap_ = IntForm{1, 0} - fractional_part(down_, slope);
}

std::vector<std::int64_t> RotationOrder::sorted() const {
  std::vector<std::int64_t> out;
  out.reserve(n_ + 1);
  std::int64_t i = 0;
  do {
    out.push_back(i);
    i = successor(i);
  } while (i != 0 && out.size() <= n_);
  return out;
}

}  // namespace superdense
