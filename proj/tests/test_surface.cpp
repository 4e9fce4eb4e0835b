#include <doctest.h>

#include <numeric>
#include <random>

#include "superdense/error.hpp"
#include "superdense/iet.hpp"
#include "superdense/surface.hpp"

using namespace superdense;

namespace {

// Vertex count by walking around corners: a separate count of the corner
// orbits under the four identifications, done by repeated relabelling.
int vertex_count_oracle(const std::vector<int>& u, const std::vector<int>& r) {
  const int s = static_cast<int>(u.size());
  std::vector<int> label(4 * s);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  auto merge = [&](int a, int b) {
    int m = std::min(label[a], label[b]);
    if (label[a] != m || label[b] != m) {
      int la = label[a], lb = label[b];
      for (int& l : label)
        if (l == la || l == lb) l = m;
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    for (int j = 0; j < s; ++j) {
      merge(4 * j + 2, 4 * u[j] + 0);
      merge(4 * j + 3, 4 * u[j] + 1);
      merge(4 * j + 3, 4 * r[j] + 2);
      merge(4 * j + 1, 4 * r[j] + 0);
    }
  }
  std::sort(label.begin(), label.end());
  return static_cast<int>(std::unique(label.begin(), label.end()) - label.begin());
}

std::vector<int> random_perm(std::mt19937_64& rng, int s) {
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("from_permutations") {
  auto torus = PolysquareSurface::from_permutations({1}, {1});
  CHECK(torus.size() == 1);
  auto l = PolysquareSurface::from_permutations({3, 2, 1}, {2, 1, 3});
  CHECK(l.top(0) == 2);
  CHECK(l.right(0) == 1);
  try {
    PolysquareSurface::from_permutations({1, 1}, {2, 1});
    FAIL("expected invalid gluing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_gluing);
  }
  try {
    PolysquareSurface::from_permutations({1, 2}, {1, 2});
    FAIL("expected disconnected surface");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::disconnected_surface);
  }
}

TEST_CASE("from_grid uses the street-wrap rule") {
  auto torus = PolysquareSurface::from_grid({{0, 0}});
  CHECK(torus == PolysquareSurface::from_permutations({1}, {1}));
  auto l = PolysquareSurface::from_grid({{0, 0}, {1, 0}, {0, 1}});
  CHECK(l == PolysquareSurface::from_permutations({3, 2, 1}, {2, 1, 3}));
  CHECK(l.layout().has_value());
  auto domino = PolysquareSurface::from_grid({{0, 0}, {1, 0}});
  CHECK(domino == PolysquareSurface::from_permutations({1, 2}, {2, 1}));
  CHECK_THROWS_AS(PolysquareSurface::from_grid({{0, 0}, {2, 0}}), Error);
  // A hole only shortens runs.
  auto ring = PolysquareSurface::from_grid({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}});
  CHECK(ring.size() == 8);
  CHECK(ring.right(3) == 3);
}

TEST_CASE("topology") {
  auto t = PolysquareSurface::torus().topology();
  CHECK(t.vertices == 1);
  CHECK(t.chi == 0);
  CHECK(t.genus == 1);
  auto l = PolysquareSurface::l_surface().topology();
  CHECK(l.vertices == 1);
  CHECK(l.edges == 6);
  CHECK(l.faces == 3);
  CHECK(l.chi == -2);
  CHECK(l.genus == 2);
  auto d = PolysquareSurface::from_grid({{0, 0}, {1, 0}}).topology();
  CHECK(d.vertices == 2);
  CHECK(d.chi == 0);
  CHECK(d.genus == 1);
}

TEST_CASE("topology agrees with a relabelling oracle on random origamis") {
  std::mt19937_64 rng(99);
  int tested = 0;
  while (tested < 60) {
    int s = 1 + static_cast<int>(rng() % 8);
    auto u = random_perm(rng, s), r = random_perm(rng, s);
    try {
      auto surf = PolysquareSurface::from_permutations(u, r);
      std::vector<int> u0(s), r0(s);
      for (int j = 0; j < s; ++j) {
        u0[j] = u[j] - 1;
        r0[j] = r[j] - 1;
      }
      auto t = surf.topology();
      CHECK(t.vertices == vertex_count_oracle(u0, r0));
      CHECK(t.chi == t.vertices - s);
      CHECK(t.chi % 2 == 0);
      CHECK(t.chi <= 0);
      ++tested;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::disconnected_surface);
    }
  }
}

TEST_CASE("surface file parsing") {
  auto l = parse_surface("grid:\n##\n#.\n");
  CHECK(l == PolysquareSurface::l_surface());
  auto p = parse_surface("% L\nperm: s=3 u=3,2,1 r=2,1,3\n");
  CHECK(p == l);
  CHECK(p.perm_string() == "perm: s=3 u=3,2,1 r=2,1,3");
  CHECK_THROWS_AS(parse_surface("perm: s=2 u=1,2"), Error);
  CHECK_THROWS_AS(parse_surface("grid:\n#x\n"), Error);
  CHECK_THROWS_AS(parse_surface("perm: s=3 u=3,2,1 r=2,1"), Error);
  CHECK_THROWS_AS(parse_surface(""), Error);
  CHECK(load_surface("data/lsurface.txt") == l);
  CHECK(load_surface("data/torus.txt") == PolysquareSurface::torus());
  CHECK(load_surface("data/domino.txt").topology().vertices == 2);
}

TEST_CASE("streets") {
  auto l = PolysquareSurface::l_surface();
  CHECK(l.horizontal_streets().size() == 2);
  CHECK(l.vertical_streets().size() == 2);
}

TEST_CASE("build_iet on the L-surface matches the six branches") {
  auto alpha = LinearForm::alpha();
  LinearForm one(1), two(2), three(3);
  auto iet = build_iet(PolysquareSurface::l_surface(), Slope::parse("cf:0;(1)"));
  const auto& b = iet.branches();
  REQUIRE(b.size() == 6);
  // Square 1: [0,1-a) -> [2+a,3), [1-a,1) -> [1,1+a)
  CHECK(b[0].lower == LinearForm(0));
  CHECK(b[0].upper_end == one - alpha);
  CHECK(b[0].image_lower() == two + alpha);
  CHECK(b[0].image_upper() == three);
  CHECK(b[1].lower == one - alpha);
  CHECK(b[1].upper_end == one);
  CHECK(b[1].image_lower() == one);
  CHECK(b[1].image_upper() == one + alpha);
  // Square 2: [1,2-a) -> [1+a,2), [2-a,2) -> [2,2+a)
  CHECK(b[2].image_lower() == one + alpha);
  CHECK(b[2].image_upper() == two);
  CHECK(b[3].lower == two - alpha);
  CHECK(b[3].image_lower() == two);
  CHECK(b[3].image_upper() == two + alpha);
  // Square 3: [2,3-a) -> [a,1), [3-a,3) -> [0,a)
  CHECK(b[4].image_lower() == alpha);
  CHECK(b[4].image_upper() == one);
  CHECK(b[5].lower == three - alpha);
  CHECK(b[5].image_lower() == LinearForm(0));
  CHECK(b[5].image_upper() == alpha);
}

TEST_CASE("build_iet for torus and domino") {
  auto slope = Slope::parse("cf:0;(2)");
  auto torus = build_iet(PolysquareSurface::torus(), slope);
  CHECK(torus.branches()[0].shift == LinearForm::alpha());
  CHECK(torus.branches()[1].shift == LinearForm(Rational(-1), Rational(1)));
  auto domino = build_iet(PolysquareSurface::from_grid({{0, 0}, {1, 0}}), slope);
  // Square 1: lower branch stays in square 1, upper branch lands in square 2.
  CHECK(domino.branches()[0].target == 0);
  CHECK(domino.branches()[1].target == 1);
  CHECK(domino.branches()[1].image_lower() == LinearForm(1));
}

TEST_CASE("branch images partition [0, s) for random surfaces") {
  std::mt19937_64 rng(7);
  auto slope = Slope::parse("cf:0;1,3,(1,2)");
  for (int trial = 0; trial < 30; ++trial) {
    int s = 1 + static_cast<int>(rng() % 8);
    std::optional<PolysquareSurface> surf;
    try {
      surf = PolysquareSurface::from_permutations(random_perm(rng, s), random_perm(rng, s));
    } catch (const Error&) {
      continue;
    }
    auto iet = build_iet(*surf, slope);
    std::vector<std::pair<LinearForm, LinearForm>> images;
    LinearForm total;
    for (const auto& br : iet.branches()) {
      images.push_back({br.image_lower(), br.image_upper()});
      total += br.image_upper() - br.image_lower();
    }
    CHECK(total == LinearForm(s));
    std::sort(images.begin(), images.end(), [&](const auto& x, const auto& y) {
      return compare(x.first, y.first, slope) == std::strong_ordering::less;
    });
    CHECK(images.front().first == LinearForm(0));
    CHECK(images.back().second == LinearForm(s));
    for (std::size_t i = 0; i + 1 < images.size(); ++i) CHECK(images[i].second == images[i + 1].first);
  }
}
