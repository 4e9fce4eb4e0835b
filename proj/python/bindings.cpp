#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "superdense/cli.hpp"
#include "superdense/error.hpp"
#include "superdense/superdensity.hpp"
#include "superdense/three_distance.hpp"

namespace py = pybind11;
using namespace superdense;

namespace {

py::int_ to_py(const Integer& x) { return py::int_(py::module_::import("builtins").attr("int")(x.str())); }

double approx(const LinearForm& f, const Slope& slope) {
  return enclose(f, slope, Rational(1, 1'000'000'000) / 1'000'000'000).value();
}

py::dict form(const LinearForm& f, const Slope& slope) {
  py::dict d;
  d["exact"] = f.str();
  d["value"] = approx(f, slope);
  return d;
}

std::optional<GeodesicState> start_state(const PolysquareSurface& surface, const Slope& slope,
                                         const std::optional<std::tuple<int, std::string, std::string>>& start) {
  if (!start) return std::nullopt;
  const auto& [j, x, y] = *start;
  return GeodesicState(surface, slope, j - 1, parse_rational(x), parse_rational(y));
}

GeodesicState pick_start(const PolysquareSurface& surface, const Slope& slope,
                         const std::optional<std::tuple<int, std::string, std::string>>& start) {
  auto s = start_state(surface, slope, start);
  return s ? *s : default_start(surface, slope);
}

}  // namespace

PYBIND11_MODULE(_superdense, m) {
  m.doc() = "Continued fractions, polysquare surfaces, interval exchanges and superdensity certificates";

  static py::exception<Error> error(m, "SuperdenseError", PyExc_ValueError);
  static py::exception<BudgetError> budget_error(m, "BudgetError", error.ptr());
  static py::exception<SingularityError> singularity_error(m, "SingularityError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetError& e) {
      py::set_error(budget_error, e.what());
    } catch (const SingularityError& e) {
      py::set_error(singularity_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Slope>(m, "Slope")
      .def(py::init(&Slope::parse), py::arg("spec"))
      .def_static("parse", &Slope::parse)
      .def_property_readonly("spec", &Slope::spec)
      .def("digit", &Slope::require_digit)
      .def("approximate", &Slope::approximate)
      .def_property_readonly("is_rational", &Slope::is_rational)
      .def_property_readonly("digit_bound", &Slope::digit_bound)
      .def("__repr__", [](const Slope& s) { return "Slope('" + s.spec() + "')"; });

  m.def(
      "convergents",
      [](const Slope& slope, std::size_t k_max) {
        ConvergentTable t(slope, k_max);
        py::list rows;
        for (long k = 0; k <= static_cast<long>(k_max); ++k) {
          py::dict row;
          row["k"] = k;
          row["a"] = t.digit(static_cast<std::size_t>(k));
          row["p"] = to_py(t.p(k));
          row["q"] = to_py(t.q(k));
          row["eps"] = form(t.eps(k), slope);
          rows.append(row);
        }
        return rows;
      },
      py::arg("slope"), py::arg("k_max"));

  m.def(
      "gap_spectrum",
      [](const Slope& slope, std::uint64_t n) {
        const GapSpectrum g = gap_spectrum(n, slope);
        py::dict out;
        out["n"] = g.n;
        out["k"] = g.decomposition.k;
        out["mu"] = g.decomposition.mu;
        out["r"] = g.decomposition.r;
        py::list gaps;
        for (const auto& e : g.entries) {
          py::dict d = form(e.gap, slope);
          d["multiplicity"] = e.multiplicity;
          gaps.append(d);
        }
        out["gaps"] = gaps;
        return out;
      },
      py::arg("slope"), py::arg("n"));

  py::class_<PolysquareSurface>(m, "Surface")
      .def_static("load", &load_surface, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return parse_surface(text); }, py::arg("text"))
      .def_static("torus", &PolysquareSurface::torus)
      .def_static("l_surface", &PolysquareSurface::l_surface)
      .def_property_readonly("size", &PolysquareSurface::size)
      .def("perm_string", &PolysquareSurface::perm_string)
      .def("topology", [](const PolysquareSurface& s) {
        const SurfaceTopology t = s.topology();
        py::dict d;
        d["V"] = t.vertices;
        d["E"] = t.edges;
        d["F"] = t.faces;
        d["chi"] = t.chi;
        d["genus"] = t.genus;
        return d;
      });

  m.def(
      "iet_orbit",
      [](const PolysquareSurface& surface, const Slope& slope, const std::string& start, std::uint64_t steps) {
        const ExactPoint x0(LinearForm::parse(start), surface.size(), slope);
        const CompactOrbit orbit = IetMap(surface, slope).compact_orbit(x0, steps);
        py::list rows;
        for (std::uint64_t i = 0; i < orbit.size(); ++i)
          rows.append(py::make_tuple(orbit.square(i) + 1, orbit.offset(i, slope).str()));
        return rows;
      },
      py::arg("surface"), py::arg("slope"), py::arg("start"), py::arg("steps"),
      "Orbit of T as (square, offset) pairs, squares 1-based.");

  m.def(
      "chain_cover_audit",
      [](long k, const Slope& slope, int s) {
        const ChainCoverReport r = chain_cover_audit(k, slope, s);
        py::dict d;
        d["passed"] = r.passed();
        d["cover"] = r.cover;
        d["avoidance"] = r.avoidance;
        d["overlap"] = r.overlap;
        d["chains"] = r.chains;
        py::list uncovered;
        for (const auto& u : r.uncovered) uncovered.append(u.str());
        d["uncovered"] = uncovered;
        d["neighbor_identities"] = r.zones.neighbor_identities;
        d["failures"] = r.failures;
        return d;
      },
      py::arg("k"), py::arg("slope"), py::arg("s"));

  m.def(
      "certify",
      [](const PolysquareSurface& surface, const Slope& slope, long k, std::optional<std::uint64_t> budget,
         std::optional<std::tuple<int, std::string, std::string>> start) {
        CertificateOptions o;
        o.budget = budget ? *budget : default_budget();
        o.start = start_state(surface, slope, start);
        Certificate c;
        {
          py::gil_scoped_release release;
          c = superdensity_certificate(surface, slope, k, o);
        }
        py::dict d;
        d["k"] = c.k;
        d["s"] = c.s;
        d["m_star"] = c.m_star;
        d["gap"] = form(c.gap.gap, slope);
        d["gap_limit"] = to_string(c.gap_limit);
        d["gap_ok"] = c.gap_ok;
        d["product"] = c.product;
        d["length_product"] = c.length_product;
        d["ceiling"] = c.ceiling;
        d["product_ok"] = c.product_ok;
        d["passed"] = c.passed();
        return d;
      },
      py::arg("surface"), py::arg("slope"), py::arg("k"), py::arg("budget") = py::none(),
      py::arg("start") = py::none());

  m.def(
      "gap_product_scan",
      [](const PolysquareSurface& surface, const Slope& slope, std::vector<std::uint64_t> m_list,
         std::optional<std::tuple<int, std::string, std::string>> start) {
        std::sort(m_list.begin(), m_list.end());
        const auto rows = gap_product_scan(pick_start(surface, slope, start), m_list);
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(r.m, r.gap.str(), r.gap_value, r.product));
        return out;
      },
      py::arg("surface"), py::arg("slope"), py::arg("m_list"), py::arg("start") = py::none(),
      "Rows (m, g exact, g, m*g).");

  m.def(
      "covering_radius",
      [](const PolysquareSurface& surface, const Slope& slope, double t_max, int grid, int jobs,
         std::optional<std::tuple<int, std::string, std::string>> start) {
        const GeodesicState st = pick_start(surface, slope, start);
        py::gil_scoped_release release;
        return covering_radius(st, t_max, grid, jobs);
      },
      py::arg("surface"), py::arg("slope"), py::arg("t_max"), py::arg("grid") = 64, py::arg("jobs") = 1,
      py::arg("start") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (status, stdout, stderr).");
}
