#include "superdense/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "superdense/error.hpp"
#include "superdense/superdensity.hpp"
#include "superdense/three_distance.hpp"

namespace superdense::cli {

namespace {

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// 30 significant digits of an exact form.
std::string decimal(const LinearForm& f, const Slope& slope) {
  if (f.is_rational()) return to_decimal(f.constant(), 30);
  const Rational rel = Rational(1) / boost::multiprecision::pow(Integer(10), 35);
  Rational width = rel;
  for (;;) {
    const Enclosure e = enclose(f, slope, width);
    if (e.width() == 0) return to_decimal(e.lower, 30);
    const Rational mag = e.lower > 0 ? e.lower : -e.upper;
    if (mag > 0 && e.width() < mag * rel) return e.decimal(30);
    width *= rel;
  }
}

// "3/4", "-2", "0.25"
Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  Integer den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  if (digits.empty() || digits == "-" || digits == "+")
    throw Error(ErrorKind::parse_error, "malformed number '" + text + "'");
  return parse_rational(digits) / den;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// "j,x,y" with 1-based j
GeodesicState parse_state(const std::string& text, const PolysquareSurface& surface, const Slope& slope) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(ErrorKind::parse_error, "start must be 'j,x,y', got '" + text + "'");
  const Rational j = parse_rational(parts[0]);
  if (denominator(j) != 1 || j < 1 || j > surface.size())
    throw Error(ErrorKind::parse_error, "start square must be in 1.." + std::to_string(surface.size()));
  return GeodesicState(surface, slope, static_cast<int>(numerator(j)) - 1, parse_number(parts[1]), parse_number(parts[2]));
}

std::string digits_string(const Slope& slope, std::size_t count) {
  std::string text = "[0;";
  for (std::size_t i = 1; i <= count; ++i) {
    if (i > 1) text += ",";
    text += std::to_string(slope.require_digit(i));
  }
  if (!slope.length() || *slope.length() > count + 1) text += ",...";
  return text + "]";
}

std::string yes(bool b) { return b ? "pass" : "FAIL"; }

void write_svg(const PolysquareSurface& surface, const std::vector<Segment>& segments, const std::string& path) {
  const double unit = 120, pad = 24;
  std::vector<std::pair<double, double>> origin(surface.size());
  double width = 0, height = 1;
  const bool planar = surface.layout().has_value();
  if (planar) {
    for (const auto& c : *surface.layout()) height = std::max(height, c.y + 1.0);
    for (int j = 0; j < surface.size(); ++j) {
      const auto& c = (*surface.layout())[j];
      origin[j] = {c.x, c.y};
      width = std::max(width, c.x + 1.0);
    }
  } else {
    for (int j = 0; j < surface.size(); ++j) origin[j] = {1.25 * j, 0};
    width = 1.25 * surface.size() - 0.25;
  }
  auto px = [&](int j, double x) { return pad + (origin[j].first + x) * unit; };
  auto py = [&](int j, double y) { return pad + (height - origin[j].second - y) * unit; };

  std::ofstream svg(path);
  if (!svg) throw Error(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed3(2 * pad + width * unit) << "\" height=\""
      << fixed3(2 * pad + height * unit) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int j = 0; j < surface.size(); ++j) {
    svg << "<rect x=\"" << fixed3(px(j, 0)) << "\" y=\"" << fixed3(py(j, 1)) << "\" width=\"" << fixed3(unit)
        << "\" height=\"" << fixed3(unit) << "\" fill=\"#f4f4f4\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed3(px(j, 0.05)) << "\" y=\"" << fixed3(py(j, 0.05)) << "\" font-size=\"11\">" << j + 1
        << "</text>\n";
    if (!planar) {
      svg << "<text x=\"" << fixed3(px(j, 0.4)) << "\" y=\"" << fixed3(py(j, 1) - 4) << "\" font-size=\"10\">u:"
          << surface.top(j) + 1 << "</text>\n";
      svg << "<text x=\"" << fixed3(px(j, 1) + 2) << "\" y=\"" << fixed3(py(j, 0.5)) << "\" font-size=\"10\">r:"
          << surface.right(j) + 1 << "</text>\n";
    }
  }
  svg << "<g stroke=\"#1f4e9c\" stroke-width=\"0.6\">\n";
  for (const auto& s : segments)
    svg << "<line x1=\"" << fixed3(px(s.square, s.x0)) << "\" y1=\"" << fixed3(py(s.square, s.y0)) << "\" x2=\""
        << fixed3(px(s.square, s.x1)) << "\" y2=\"" << fixed3(py(s.square, s.y1)) << "\"/>\n";
  svg << "</g>\n</svg>\n";
}

// Parsed inputs, built before anything is computed.
struct Inputs {
  std::optional<Slope> slope;
  std::optional<PolysquareSurface> surface;
  std::optional<GeodesicState> state;
  std::optional<ExactPoint> point;
};

Inputs prepare(const RunConfig& c) {
  Inputs in;
  if (!c.slope.empty()) in.slope = Slope::parse(c.slope);
  if (!c.surface_path.empty()) in.surface = load_surface(c.surface_path);
  const std::string& cmd = c.command;
  if (cmd == "iet orbit") {
    in.point = ExactPoint(LinearForm::parse(c.start), in.surface->size(), *in.slope);
  } else if (cmd == "geodesic trace" || cmd == "geodesic cover" || cmd == "superdense certify" ||
             cmd == "superdense scan") {
    in.state = c.start.empty() ? default_start(*in.surface, *in.slope) : parse_state(c.start, *in.surface, *in.slope);
  }
  if (cmd == "three-distance" && c.n < 1) throw Error(ErrorKind::invalid_argument, "--n must be >= 1");
  if (cmd == "intervals audit" || cmd == "superdense certify") {
    if (c.k < 1) throw Error(ErrorKind::invalid_argument, "--k must be >= 1");
  }
  if (cmd == "geodesic trace" && !(c.t_max > 0)) throw Error(ErrorKind::invalid_argument, "--tmax must be positive");
  if (cmd == "geodesic cover") {
    if (c.t_max_list.empty()) throw Error(ErrorKind::invalid_argument, "--tmax-list is empty");
    for (double t : c.t_max_list)
      if (!(t > 0)) throw Error(ErrorKind::invalid_argument, "--tmax-list values must be positive");
  }
  return in;
}

int cmd_cf(const RunConfig& c, const Slope& slope, std::ostream& out) {
  std::size_t k_max = c.k >= 0 ? static_cast<std::size_t>(c.k) : 12;
  if (slope.length()) k_max = std::min(k_max, *slope.length() - 1);
  ConvergentTable t(slope, k_max);
  out << "# slope " << slope.spec() << "\n";
  out << "# digits " << digits_string(slope, k_max) << "\n";
  out << "k,a_k,p_k,q_k,eps_k,eps_k_exact\n";
  for (long k = 0; k <= static_cast<long>(k_max); ++k) {
    const LinearForm e = t.eps(k);
    out << k << "," << t.digit(static_cast<std::size_t>(k)) << "," << t.p(k) << "," << t.q(k) << ","
        << decimal(e, slope) << "," << e.str() << "\n";
  }
  return ok;
}

int cmd_three_distance(const RunConfig& c, const Slope& slope, std::ostream& out) {
  const GapSpectrum g = gap_spectrum(c.n, slope);
  out << "gap,gap_exact,multiplicity,k,mu,r\n";
  for (const auto& e : g.entries)
    out << decimal(e.gap, slope) << "," << e.gap.str() << "," << e.multiplicity << "," << g.decomposition.k << ","
        << g.decomposition.mu << "," << g.decomposition.r << "\n";
  return ok;
}

std::string cycles(const std::vector<std::vector<int>>& list) {
  std::string text;
  for (const auto& cyc : list) {
    text += "(";
    for (std::size_t i = 0; i < cyc.size(); ++i) text += (i ? " " : "") + std::to_string(cyc[i] + 1);
    text += ")";
  }
  return text;
}

int cmd_surface_info(const PolysquareSurface& surface, std::ostream& out) {
  const SurfaceTopology t = surface.topology();
  out << "s=" << surface.size() << "\n";
  out << "V=" << t.vertices << "\n";
  out << "E=" << t.edges << "\n";
  out << "F=" << t.faces << "\n";
  out << "chi=" << t.chi << "\n";
  out << "genus=" << t.genus << "\n";
  out << surface.perm_string() << "\n";
  out << "horizontal_streets=" << cycles(surface.horizontal_streets()) << "\n";
  out << "vertical_streets=" << cycles(surface.vertical_streets()) << "\n";
  for (std::size_t v = 0; v < t.vertex_classes.size(); ++v) {
    const auto n = t.vertex_classes[v].size();
    out << "vertex " << v + 1 << ": corners=" << n << " cone_angle=";
    if (n % 4 == 0)
      out << (n / 4 == 1 ? "" : std::to_string(n / 2)) << (n / 4 == 1 ? "2pi" : "pi");
    else
      out << n << "pi/2";
    out << "\n";
  }
  return ok;
}

int cmd_iet_orbit(const RunConfig& c, const Inputs& in, std::ostream& out) {
  const Slope& slope = *in.slope;
  const CompactOrbit orbit = IetMap(*in.surface, slope).compact_orbit(*in.point, c.steps);
  out << "i,square,offset,offset_exact\n";
  for (std::uint64_t i = 0; i < orbit.size(); ++i) {
    const LinearForm f = orbit.offset(i, slope);
    out << i + 1 << "," << orbit.square(i) + 1 << "," << decimal(f, slope) << "," << f.str() << "\n";
  }
  return ok;
}

int cmd_intervals_audit(const RunConfig& c, const Inputs& in, std::ostream& out) {
  const Slope& slope = *in.slope;
  const int s = in.surface->size();
  const ChainCoverReport r = chain_cover_audit(c.k, slope, s);
  const BufferZones& z = r.zones;
  out << "# level k=" << r.k << " s=" << r.s << " slope " << slope.spec() << "\n";
  out << "# buffer zones: d*=" << LinearForm(z.d_star).str() << " d**=" << LinearForm(z.d_star_star).str()
      << " neighbours " << z.left_neighbor << "," << z.right_neighbor << " identities " << yes(z.neighbor_identities)
      << "\n";
  out << "# intervals per copy: " << r.intervals << "\n";
  out << "# cover: " << yes(r.cover) << "\n";
  out << "# avoidance: " << yes(r.avoidance) << "\n";
  out << "# overlap: " << yes(r.overlap) << " (min " << decimal(r.min_overlap, slope) << ")\n";
  out << "# chains: " << r.chains << "\n";
  out << "# uncovered:";
  for (const auto& u : r.uncovered) out << " " << u.str();
  out << " " << yes(r.uncovered_matches) << "\n";
  out << "# cross-level: " << yes(r.cross_level) << " (" << r.cross_level_pairs << " pairs)\n";
  out << "# growth: " << yes(r.growth) << "\n";
  out << "# length bound: " << yes(r.length_bound) << "\n";
  for (const auto& f : r.failures) out << "# failure: " << f << "\n";
  out << "# result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  out << "q,copy,lower,lower_exact,upper,upper_exact,length\n";
  for (int copy = 0; copy < s; ++copy) {
    for (auto j : special_intervals(c.k, slope)) {
      j.copy = copy;
      out << j.q << "," << copy << "," << decimal(j.lower_value(), slope) << "," << j.lower_value().str() << ","
          << decimal(j.upper_value(), slope) << "," << j.upper_value().str() << ","
          << decimal(LinearForm(j.length()), slope) << "\n";
    }
  }
  return r.passed() ? ok : failed;
}

int cmd_geodesic_trace(const RunConfig& c, const Inputs& in, std::ostream& out) {
  const auto segments = trace_segments(*in.state, c.t_max);
  out << "square,x0,y0,x1,y1\n";
  for (const auto& s : segments)
    out << s.square + 1 << "," << real(s.x0) << "," << real(s.y0) << "," << real(s.x1) << "," << real(s.y1) << "\n";
  if (!c.svg_path.empty()) write_svg(*in.surface, segments, c.svg_path);
  return ok;
}

int cmd_geodesic_cover(const RunConfig& c, const Inputs& in, std::ostream& out) {
  out << "t_max,covering_radius\n";
  for (double t : c.t_max_list) out << real(t) << "," << real(covering_radius(*in.state, t, c.grid, c.jobs)) << "\n";
  return ok;
}

int cmd_certify(const RunConfig& c, const Inputs& in, std::ostream& out) {
  const Slope& slope = *in.slope;
  CertificateOptions o;
  o.budget = c.budget ? c.budget : default_budget();
  o.start = in.state;
  o.mode = c.mode == "interval" ? ComparisonMode::interval : ComparisonMode::exact;
  const Certificate cert = superdensity_certificate(*in.surface, slope, c.k, o);
  out << "# slope " << slope.spec() << " s=" << cert.s << " k=" << cert.k << " A=" << cert.digit_bound << "\n";
  out << "# crossings m*=" << cert.m_star << "\n";
  out << "# longest free gap " << decimal(cert.gap.gap, slope) << " on [" << cert.gap.lower.str() << ", "
      << cert.gap.upper.str() << ")\n";
  out << "# gap < 8/q_k = " << to_string(cert.gap_limit) << ": " << yes(cert.gap_ok) << "\n";
  out << "# m* g = " << real(cert.product) << ", M g = " << real(cert.length_product) << ", ceiling "
      << real(cert.ceiling) << ": " << yes(cert.product_ok) << "\n";
  out << "# result: " << (cert.passed() ? "PASS" : "FAIL") << "\n";
  out << "k,m_star,g,g_exact,gap_limit,product,length_product,ceiling,passed\n";
  out << cert.k << "," << cert.m_star << "," << decimal(cert.gap.gap, slope) << "," << cert.gap.gap.str() << ","
      << decimal(LinearForm(cert.gap_limit), slope) << "," << real(cert.product) << "," << real(cert.length_product)
      << "," << real(cert.ceiling) << "," << (cert.passed() ? 1 : 0) << "\n";
  return cert.passed() ? ok : failed;
}

int cmd_scan(const RunConfig& c, const Inputs& in, std::ostream& out) {
  auto m_list = c.m_list;
  std::sort(m_list.begin(), m_list.end());
  m_list.erase(std::unique(m_list.begin(), m_list.end()), m_list.end());
  const auto rows = gap_product_scan(*in.state, m_list);
  out << "m,g,g_exact,product\n";
  for (const auto& r : rows)
    out << r.m << "," << decimal(r.gap, *in.slope) << "," << r.gap.str() << "," << real(r.product) << "\n";
  return ok;
}

}  // namespace

int parse(const std::vector<std::string>& args, RunConfig& c, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued fractions, polysquare surfaces and superdensity certificates"};
  app.name("superdense");
  app.require_subcommand(1);

  auto slope_opt = [&](CLI::App* sub) {
    sub->add_option("--slope", c.slope, "cf:0;2,2,2 | cf:0;(1) | cf:0;1,3,(1,2) | rat:p/q")->required();
  };
  auto surface_opt = [&](CLI::App* sub) {
    sub->add_option("--surface", c.surface_path, "surface file (grid: or perm:)")->required()->check(CLI::ExistingFile);
  };
  auto start_opt = [&](CLI::App* sub) {
    sub->add_option("--start", c.start, "start j,x,y (square 1-based, default 1,1/3,1/2)");
  };

  auto* cf = app.add_subcommand("cf", "continued fraction digits, convergents and eps_k");
  slope_opt(cf);
  cf->add_option("--k", c.k, "largest index (default 12)")->check(CLI::NonNegativeNumber);

  auto* td = app.add_subcommand("three-distance", "gap spectrum of {0, alpha, ..., n alpha}");
  slope_opt(td);
  td->add_option("--n", c.n, "number of rotation steps")->required();

  auto* surface = app.add_subcommand("surface", "surface tools")->require_subcommand(1);
  auto* info = surface->add_subcommand("info", "vertices, Euler characteristic, genus, streets");
  info->add_option("file", c.surface_path, "surface file")->required()->check(CLI::ExistingFile);

  auto* iet = app.add_subcommand("iet", "interval exchange")->require_subcommand(1);
  auto* orbit = iet->add_subcommand("orbit", "orbit of T as exact points");
  surface_opt(orbit);
  slope_opt(orbit);
  orbit->add_option("--start", c.start, "point of [0,s) as a+b*alpha")->required();
  orbit->add_option("--steps", c.steps, "orbit length")->required();

  auto* intervals = app.add_subcommand("intervals", "special intervals")->require_subcommand(1);
  auto* audit = intervals->add_subcommand("audit", "cover, avoidance, overlap and chain-cover checks");
  surface_opt(audit);
  slope_opt(audit);
  audit->add_option("--k", c.k, "level")->required();

  auto* geo = app.add_subcommand("geodesic", "geodesic flow")->require_subcommand(1);
  auto* trace = geo->add_subcommand("trace", "segments up to time tmax, optional SVG");
  surface_opt(trace);
  slope_opt(trace);
  start_opt(trace);
  trace->add_option("--tmax", c.t_max, "flow time")->required();
  trace->add_option("--svg", c.svg_path, "SVG output path");
  auto* cover = geo->add_subcommand("cover", "covering radius for several tmax");
  surface_opt(cover);
  slope_opt(cover);
  start_opt(cover);
  cover->add_option("--grid", c.grid, "grid points per square side")->check(CLI::Range(1, 4096));
  cover->add_option("--tmax-list", c.t_max_list, "comma separated flow times")->required()->delimiter(',');
  cover->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256));

  auto* sd = app.add_subcommand("superdense", "superdensity")->require_subcommand(1);
  auto* certify = sd->add_subcommand("certify", "free-gap certificate at level k");
  surface_opt(certify);
  slope_opt(certify);
  start_opt(certify);
  certify->add_option("--k", c.k, "level")->required();
  certify->add_option("--budget", c.budget, "largest m* allowed (default SUPERDENSE_BUDGET or 10^7)")
      ->check(CLI::PositiveNumber);
  certify->add_option("--mode", c.mode, "exact or interval")->check(CLI::IsMember({"exact", "interval"}));
  auto* scan = sd->add_subcommand("scan", "m g(m) for several m");
  surface_opt(scan);
  slope_opt(scan);
  start_opt(scan);
  scan->add_option("--m-list", c.m_list, "comma separated crossing counts")->required()->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  const std::pair<CLI::App*, const char*> leaves[] = {
      {cf, "cf"},           {td, "three-distance"},    {info, "surface info"},  {orbit, "iet orbit"},
      {audit, "intervals audit"}, {trace, "geodesic trace"}, {cover, "geodesic cover"}, {certify, "superdense certify"},
      {scan, "superdense scan"}};
  for (const auto& [sub, name] : leaves)
    if (sub->parsed()) c.command = name;
  return -1;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Inputs in;
  try {
    in = prepare(c);
  } catch (const std::exception& e) {
    err << "superdense: " << e.what() << "\n";
    return usage;
  }
  try {
    const std::string& cmd = c.command;
    if (cmd == "cf") return cmd_cf(c, *in.slope, out);
    if (cmd == "three-distance") return cmd_three_distance(c, *in.slope, out);
    if (cmd == "surface info") return cmd_surface_info(*in.surface, out);
    if (cmd == "iet orbit") return cmd_iet_orbit(c, in, out);
    if (cmd == "intervals audit") return cmd_intervals_audit(c, in, out);
    if (cmd == "geodesic trace") return cmd_geodesic_trace(c, in, out);
    if (cmd == "geodesic cover") return cmd_geodesic_cover(c, in, out);
    if (cmd == "superdense certify") return cmd_certify(c, in, out);
    if (cmd == "superdense scan") return cmd_scan(c, in, out);
    err << "superdense: unknown command '" << cmd << "'\n";
    return usage;
  } catch (const BudgetError& e) {
    err << "superdense: " << e.what() << "\n";
    return budget;
  } catch (const std::exception& e) {
    err << "superdense: " << e.what() << "\n";
    return precondition;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  const int status = parse(args, c, out, err);
  if (status >= 0) return status;
  return run(c, out, err);
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace superdense::cli
