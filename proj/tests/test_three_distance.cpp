#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "superdense/error.hpp"
#include "superdense/three_distance.hpp"

using namespace superdense;

namespace {

// Exhaustive search over admissible (k, mu, r).
std::vector<Decomposition> all_decompositions(std::uint64_t n, const std::vector<std::uint64_t>& digits) {
  auto q = oracle::denominators(digits);
  std::vector<Decomposition> out;
  for (long k = 0; k + 1 < static_cast<long>(q.size()) && q[k] <= n; ++k) {
    std::uint64_t qk = q[k], qkm1 = k == 0 ? 0 : q[k - 1];
    for (std::uint64_t mu = 1; mu <= digits[k + 1]; ++mu)
      for (std::uint64_t r = 0; r < qk; ++r)
        if (mu * qk + qkm1 + r == n) out.push_back({k, mu, r});
  }
  return out;
}

bool same_multiset(const GapSpectrum& s, const std::vector<std::pair<IntForm, std::uint64_t>>& brute) {
  if (s.entries.size() != brute.size()) return false;
  for (const auto& [form, count] : brute) {
    bool found = false;
    for (const auto& e : s.entries)
      if (e.gap == LinearForm(form) && e.multiplicity == count) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decompose examples") {
  auto golden = Slope::parse("cf:0;(1)");
  auto silver = Slope::parse("cf:0;(2)");
  auto d1 = decompose(1, golden);
  CHECK(d1.k == 0);
  CHECK(d1.mu == 1);
  CHECK(d1.r == 0);
  auto d4 = decompose(4, golden);
  CHECK(d4.k == 2);
  CHECK(d4.mu == 1);
  CHECK(d4.r == 1);
  auto d7 = decompose(7, silver);
  CHECK(d7.k == 2);
  CHECK(d7.mu == 1);
  CHECK(d7.r == 0);
  CHECK_THROWS_AS(decompose(100, Slope::parse("cf:0;1,1,1")), Error);
}

TEST_CASE("decomposition is the unique admissible one") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto slope = oracle::random_slope(rng, 25, 5);
    std::vector<std::uint64_t> digits;
    for (std::size_t i = 0; i < 25; ++i) digits.push_back(*slope.digit(i));
    for (std::uint64_t n = 1; n <= 300; ++n) {
      auto all = all_decompositions(n, digits);
      REQUIRE(all.size() == 1);
      auto d = decompose(n, slope);
      CHECK(d.k == all[0].k);
      CHECK(d.mu == all[0].mu);
      CHECK(d.r == all[0].r);
    }
  }
}

TEST_CASE("gap_spectrum examples") {
  auto golden = Slope::parse("cf:0;(1)");
  auto s1 = gap_spectrum(1, golden);
  REQUIRE(s1.entries.size() == 2);
  CHECK(s1.entries[0].gap == LinearForm::alpha());
  CHECK(s1.entries[1].gap == LinearForm(Rational(1), Rational(-1)));

  auto s4 = gap_spectrum(4, golden);
  REQUIRE(s4.entries.size() == 2);
  std::map<std::string, std::uint64_t> by_decimal;
  Rational w(1, 1000000000);
  for (const auto& e : s4.entries) by_decimal[enclose(e.gap, golden, w).decimal(5)] = e.multiplicity;
  CHECK(by_decimal["0.23607"] == 3);
  CHECK(by_decimal["0.1459"] == 2);
}

TEST_CASE("gap_spectrum equals the brute-force sorted orbit") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> pick_n(1, 1500);
  for (int trial = 0; trial < 40; ++trial) {
    auto slope = oracle::random_slope(rng, 40, 6);
    std::int64_t n = pick_n(rng);
    auto s = gap_spectrum(n, slope);
    CHECK(same_multiset(s, oracle::brute_spectrum(slope, n)));
    std::uint64_t total = 0;
    LinearForm length;
    for (const auto& e : s.entries) {
      total += e.multiplicity;
      length += Rational(e.multiplicity) * e.gap;
    }
    CHECK(total == static_cast<std::uint64_t>(n + 1));
    CHECK(length == LinearForm(1));
    CHECK(s.entries.size() <= 3);
  }
}

TEST_CASE("gap_spectrum agrees with floating-point sorting") {
  auto slope = Slope::parse("cf:0;1,3,(1,2)");
  auto alpha = oracle::value(slope);
  for (std::int64_t n : {5, 17, 100, 777}) {
    auto gaps = oracle::rotation_gaps(alpha, n);
    auto s = gap_spectrum(n, slope);
    for (const auto& g : gaps) {
      bool matched = false;
      for (const auto& e : s.entries) {
        auto v = enclose(e.gap, slope, Rational(1, 1000000000)).value();
        if (std::abs(v - static_cast<double>(g)) < 1e-8) matched = true;
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("two-distance specialisation at n = q_{k+1} - 1") {
  for (auto spec : {"cf:0;(1)", "cf:0;(2)", "cf:0;(1,2)", "cf:0;(3,1)"}) {
    auto slope = Slope::parse(spec);
    auto t = convergents(slope, 14);
    for (long k = 1; k < 12; ++k) {
      auto n = t.q_u64(k + 1) - 1;
      auto s = gap_spectrum(n, slope);
      REQUIRE(s.entries.size() == 2);
      // With a_{k+1} = 1 the decomposition sits at level k - 1, so the
      // clauses come out in the other order.
      std::vector<std::pair<IntForm, std::uint64_t>> expect{
          {t.eps_int(k), n + 1 - t.q_u64(k)}, {t.eps_int(k) + t.eps_int(k + 1), t.q_u64(k)}};
      CHECK(same_multiset(s, expect));
    }
  }
}

TEST_CASE("rotation order matches exact sorting") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> pick_n(1, 800);
  for (int trial = 0; trial < 30; ++trial) {
    auto slope = oracle::random_slope(rng, 40, 4);
    std::int64_t n = pick_n(rng);
    RotationOrder order(slope, n);
    auto got = order.sorted();
    REQUIRE(got.size() == static_cast<std::size_t>(n + 1));
    std::vector<std::int64_t> expect(n + 1);
    for (std::int64_t i = 0; i <= n; ++i) expect[i] = i;
    std::sort(expect.begin(), expect.end(), [&](std::int64_t a, std::int64_t b) {
      return slope.sign(fractional_part(b, slope) - fractional_part(a, slope)) > 0;
    });
    CHECK(got == expect);
    for (std::size_t i = 0; i + 1 < got.size(); ++i)
      CHECK(order.gap_after(got[i]) == fractional_part(got[i + 1], slope) - fractional_part(got[i], slope));
  }
}
