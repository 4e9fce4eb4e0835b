#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "superdense/cli.hpp"
#include "superdense/iet.hpp"

using namespace superdense;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string L = "data/lsurface.txt";
const std::string T = "data/torus.txt";

}  // namespace

TEST_CASE("surface info") {
  auto r = run({"surface", "info", L});
  CHECK(r.status == 0);
  for (auto line : {"s=3\n", "V=1\n", "E=6\n", "F=3\n", "chi=-2\n", "genus=2\n", "cone_angle=6pi"})
    CHECK(r.out.find(line) != std::string::npos);
  auto t = run({"surface", "info", T});
  CHECK(t.out.find("chi=0\n") != std::string::npos);
  CHECK(t.out.find("genus=1\n") != std::string::npos);
  CHECK(t.out.find("cone_angle=2pi") != std::string::npos);
}

TEST_CASE("cf and three-distance") {
  auto r = run({"cf", "--slope", "rat:5/12"});
  CHECK(r.status == 0);
  CHECK(r.out.find("# digits [0;2,2,2]\n") != std::string::npos);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[4] == std::vector<std::string>{"3", "2", "5", "12", "0", "5-12*alpha"});

  auto g = run({"cf", "--slope", "cf:0;(1)", "--k", "3"});
  auto grows = csv(g.out);
  REQUIRE(grows.size() == 5);
  CHECK(grows[3][4] == "0.236067977499789696409173668731");

  auto td = run({"three-distance", "--slope", "cf:0;(1)", "--n", "4"});
  CHECK(td.status == 0);
  auto trows = csv(td.out);
  REQUIRE(trows.size() == 3);
  CHECK(trows[0] == std::vector<std::string>{"gap", "gap_exact", "multiplicity", "k", "mu", "r"});
  CHECK(std::stod(trows[1][0]) == doctest::Approx(0.23607).epsilon(1e-5));
  CHECK(trows[1][2] == "3");
  CHECK(std::stod(trows[2][0]) == doctest::Approx(0.14590).epsilon(1e-5));
  CHECK(trows[2][2] == "2");
}

TEST_CASE("iet orbit re-ingests exactly") {
  auto r = run({"iet", "orbit", "--surface", L, "--slope", "cf:0;(1,2)", "--start", "1/7", "--steps", "200"});
  REQUIRE(r.status == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 201);
  auto slope = Slope::parse("cf:0;(1,2)");
  IetMap map(PolysquareSurface::l_surface(), slope);
  auto orbit = map.orbit(ExactPoint(LinearForm(Rational(1, 7)), 3, slope), 200);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    CHECK(std::stoi(rows[i + 1][1]) == orbit[i].square() + 1);
    CHECK(LinearForm::parse(rows[i + 1][3]) == orbit[i].offset());
  }
}

TEST_CASE("intervals audit") {
  auto r = run({"intervals", "audit", "--surface", L, "--slope", "cf:0;(2)", "--k", "5"});
  CHECK(r.status == 0);
  CHECK(r.out.find("# result: PASS") != std::string::npos);
  CHECK(r.out.find("# uncovered: 0 1-alpha 1 2-alpha 2 3-alpha pass") != std::string::npos);
  auto rows = csv(r.out);
  CHECK(rows.size() == 1 + 3 * 167);
}

TEST_CASE("geodesic output is deterministic") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "superdense_test_a.svg").string(), b = (dir / "superdense_test_b.svg").string();
  auto r1 = run({"geodesic", "trace", "--surface", L, "--slope", "cf:0;(1)", "--tmax", "20", "--svg", a});
  auto r2 = run({"geodesic", "trace", "--surface", L, "--slope", "cf:0;(1)", "--tmax", "20", "--svg", b});
  CHECK(r1.status == 0);
  CHECK(r1.out == r2.out);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("<svg") == 0);

  // Permutation-only surfaces get gluing labels.
  const std::string perm = (dir / "superdense_test_perm.txt").string(), c = (dir / "superdense_test_c.svg").string();
  std::ofstream(perm) << "perm: s=3 u=3,2,1 r=2,1,3\n";
  CHECK(run({"geodesic", "trace", "--surface", perm, "--slope", "cf:0;(1)", "--tmax", "5", "--svg", c}).status == 0);
  CHECK(slurp(c).find(">u:3<") != std::string::npos);

  auto one = run({"geodesic", "cover", "--surface", L, "--slope", "cf:0;(1)", "--grid", "16", "--tmax-list",
                  "50,100,200", "--jobs", "1"});
  auto three = run({"geodesic", "cover", "--surface", L, "--slope", "cf:0;(1)", "--grid", "16", "--tmax-list",
                    "50,100,200", "--jobs", "3"});
  CHECK(one.status == 0);
  CHECK(one.out == three.out);
  CHECK(csv(one.out).size() == 4);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  std::filesystem::remove(c);
  std::filesystem::remove(perm);
}

TEST_CASE("superdense commands") {
  auto r = run({"superdense", "certify", "--surface", T, "--slope", "cf:0;(1)", "--k", "10"});
  CHECK(r.status == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"k", "m_star", "g", "g_exact", "gap_limit", "product", "length_product",
                                            "ceiling", "passed"});
  CHECK(rows[1][1] == "291");
  CHECK(rows[1][3] == "-55+89*alpha");
  CHECK(rows[1][8] == "1");

  auto s = run({"superdense", "scan", "--surface", L, "--slope", "cf:0;(1)", "--m-list", "1000,100,1000"});
  auto srows = csv(s.out);
  REQUIRE(srows.size() == 3);
  CHECK(srows[1][0] == "100");
  CHECK(srows[2][0] == "1000");
  CHECK(srows[1][2] == "5-8*alpha");
}

TEST_CASE("exit statuses") {
  CHECK(run({}).status == cli::usage);
  CHECK(run({"--help"}).status == cli::ok);
  CHECK(run({"cf", "--slope", "bogus"}).status == cli::usage);
  CHECK(run({"surface", "info", "no/such/file"}).status == cli::usage);
  CHECK(run({"three-distance", "--slope", "cf:0;(1)"}).status == cli::usage);
  CHECK(run({"geodesic", "trace", "--surface", L, "--slope", "cf:0;(1)", "--tmax", "-1"}).status == cli::usage);
  CHECK(run({"geodesic", "trace", "--surface", L, "--slope", "cf:0;(1)", "--tmax", "1", "--start", "4,0,0"}).status ==
        cli::usage);
  CHECK(run({"superdense", "certify", "--surface", T, "--slope", "cf:0;(1)", "--k", "10", "--mode", "fast"}).status ==
        cli::usage);

  auto degenerate = run({"superdense", "certify", "--surface", T, "--slope", "cf:0;(1)", "--k", "2"});
  CHECK(degenerate.status == cli::precondition);
  CHECK(degenerate.err.find("degenerate") != std::string::npos);
  CHECK(run({"iet", "orbit", "--surface", L, "--slope", "cf:0;(1)", "--start", "2-alpha", "--steps", "3"}).status ==
        cli::precondition);

  auto budget = run({"superdense", "certify", "--surface", L, "--slope", "cf:0;(2)", "--k", "6", "--budget", "1000"});
  CHECK(budget.status == cli::budget);
  CHECK(budget.err.find("1087621927") != std::string::npos);
  CHECK(budget.out.empty());
}
