#include "superdense/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "superdense/error.hpp"

namespace superdense {

namespace {

enum class EventKind { horizontal, vertical, corner };

// Walks the straight line (x + alpha*tau, y + tau) in unfolded coordinates and
// reports the edges it crosses in order, tracking the current square.
class Walker {
 public:
  explicit Walker(const GeodesicState& st) : st_(st), square_(st.square) {}

  int square() const { return square_; }
  std::int64_t horizontal_count() const { return h_; }
  std::int64_t vertical_count() const { return v_; }

  Rational next_horizontal_tau() const { return Rational(h_ + 1) - st_.y; }

  EventKind peek() const {
    // Position of the next horizontal crossing relative to the next vertical line.
    LinearForm rel(st_.x - Rational(v_ + 1), next_horizontal_tau());
    int s = st_.slope.sign(rel);
    if (s < 0) return EventKind::horizontal;
    if (s > 0) return EventKind::vertical;
    return EventKind::corner;
  }

  // Is the next vertical line reached by vertical travel tau?
  bool vertical_reached_by(const Rational& tau) const {
    return st_.slope.sign(LinearForm(st_.x - Rational(v_ + 1), tau)) >= 0;
  }

  void cross(EventKind kind) {
    switch (kind) {
      case EventKind::horizontal:
        square_ = st_.surface.top(square_);
        ++h_;
        break;
      case EventKind::vertical:
        square_ = st_.surface.right(square_);
        ++v_;
        break;
      case EventKind::corner:
        square_ = st_.surface.top(st_.surface.right(square_));
        ++h_;
        ++v_;
        break;
    }
  }

  bool corner_is_cone() const { return !st_.surface.is_regular_corner(4 * square_ + top_right); }

  // Offset along the horizontal edge just crossed (valid after a horizontal
  // or corner event).
  LinearForm crossing_offset() const { return LinearForm(st_.x - Rational(v_), Rational(h_) - st_.y); }

 private:
  const GeodesicState& st_;
  int square_;
  std::int64_t h_ = 0, v_ = 0;
};

}  // namespace

GeodesicState::GeodesicState(PolysquareSurface surface_, Slope slope_, int square_, Rational x_, Rational y_)
    : surface(std::move(surface_)), slope(std::move(slope_)), square(square_), x(std::move(x_)), y(std::move(y_)) {
  if (square < 0 || square >= surface.size())
    throw Error(ErrorKind::out_of_range, "start square " + std::to_string(square + 1) + " out of range");
  if (x < 0 || x >= 1 || y < 0 || y >= 1)
    throw Error(ErrorKind::out_of_range, "start offsets must lie in [0, 1)");
}

double speed_factor(const Slope& slope) {
  const double a = slope.approximate();
  return std::sqrt(1.0 + a * a);
}

double CrossingSequence::time(std::uint64_t i, const Slope& slope) const {
  return static_cast<double>(tau(i)) * speed_factor(slope);
}

std::vector<ExactPoint> trace_crossings(const GeodesicState& st, std::size_t m) {
  std::vector<ExactPoint> out;
  if (m == 0) return out;
  out.reserve(m);
  const int s = st.surface.size();
  Walker w(st);
  if (st.y == 0) {
    if (st.x == 0 && !st.surface.is_regular_corner(4 * st.square + bottom_left))
      throw SingularityError(1, LinearForm(st.square).str());
    out.push_back(ExactPoint::on_square(st.square, LinearForm(st.x), s, st.slope));
  }
  while (out.size() < m) {
    EventKind kind = w.peek();
    if (kind == EventKind::corner && w.corner_is_cone()) {
      if (out.empty()) throw SingularityError(1, LinearForm(st.surface.top(st.surface.right(w.square()))).str());
      throw SingularityError(out.size(), (LinearForm(w.square()) + LinearForm(Rational(1), Rational(-1))).str());
    }
    w.cross(kind);
    if (kind != EventKind::vertical) out.push_back(ExactPoint::on_square(w.square(), w.crossing_offset(), s, st.slope));
  }
  return out;
}

CrossingSequence crossing_sequence(const GeodesicState& st, std::uint64_t m) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "need at least one crossing");
  ExactPoint y1 = trace_crossings(st, 1).front();
  CrossingSequence out;
  out.first_tau = st.y == 0 ? Rational(0) : Rational(1) - st.y;
  out.orbit = IetMap(st.surface, st.slope).compact_orbit(y1, m);
  return out;
}

ExactPosition position_at_tau(const GeodesicState& st, const Rational& tau) {
  if (tau < 0) throw Error(ErrorKind::invalid_argument, "time must be non-negative");
  Walker w(st);
  for (;;) {
    EventKind kind = w.peek();
    bool due = kind == EventKind::vertical ? w.vertical_reached_by(tau) : w.next_horizontal_tau() <= tau;
    if (!due) break;
    if (kind == EventKind::corner && w.corner_is_cone())
      throw SingularityError(static_cast<std::size_t>(w.horizontal_count()) + 1, "vertex before requested time");
    w.cross(kind);
  }
  return {w.square(), LinearForm(st.x - Rational(w.vertical_count()), tau),
          st.y + tau - Rational(w.horizontal_count())};
}

Position position_at(const GeodesicState& st, double t) {
  if (!(t >= 0)) throw Error(ErrorKind::invalid_argument, "time must be non-negative");
  const double tau = t / speed_factor(st.slope);
  const double a = st.slope.approximate();
  const double x0 = static_cast<double>(st.x), y0 = static_cast<double>(st.y);
  Walker w(st);
  for (;;) {
    EventKind kind = w.peek();
    double event_tau = kind == EventKind::vertical
                           ? (static_cast<double>(w.vertical_count() + 1) - x0) / a
                           : static_cast<double>(w.next_horizontal_tau());
    if (event_tau > tau) break;
    if (kind == EventKind::corner && w.corner_is_cone())
      throw SingularityError(static_cast<std::size_t>(w.horizontal_count()) + 1, "vertex before requested time");
    w.cross(kind);
  }
  double x = x0 + a * tau - static_cast<double>(w.vertical_count());
  double y = y0 + tau - static_cast<double>(w.horizontal_count());
  return {w.square(), std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)};
}

std::vector<Segment> trace_segments(const GeodesicState& st, double t_max) {
  if (!(t_max >= 0)) throw Error(ErrorKind::invalid_argument, "t_max must be non-negative");
  const double tau_max = t_max / speed_factor(st.slope);
  const double a = st.slope.approximate();
  const double x0 = static_cast<double>(st.x), y0 = static_cast<double>(st.y);
  auto local = [&](const Walker& w, double tau) {
    double x = x0 + a * tau - static_cast<double>(w.vertical_count());
    double y = y0 + tau - static_cast<double>(w.horizontal_count());
    return std::pair{std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)};
  };

  std::vector<Segment> out;
  Walker w(st);
  double start_tau = 0;
  for (;;) {
    EventKind kind = w.peek();
    double event_tau = kind == EventKind::vertical
                           ? (static_cast<double>(w.vertical_count() + 1) - x0) / a
                           : static_cast<double>(w.next_horizontal_tau());
    if (event_tau >= tau_max) break;
    if (kind == EventKind::corner && w.corner_is_cone())
      throw SingularityError(static_cast<std::size_t>(w.horizontal_count()) + 1, "vertex before t_max");
    auto [ax, ay] = local(w, start_tau);
    double bx = kind == EventKind::horizontal ? std::clamp(x0 + a * event_tau - static_cast<double>(w.vertical_count()), 0.0, 1.0) : 1.0;
    double by = kind == EventKind::vertical ? std::clamp(y0 + event_tau - static_cast<double>(w.horizontal_count()), 0.0, 1.0) : 1.0;
    out.push_back({w.square(), ax, ay, bx, by});
    w.cross(kind);
    start_tau = event_tau;
  }
  auto [ax, ay] = local(w, start_tau);
  auto [bx, by] = local(w, tau_max);
  out.push_back({w.square(), ax, ay, bx, by});
  return out;
}

double covering_radius(const PolysquareSurface& surface, const Slope& slope, const std::vector<Segment>& segments,
                       int grid, int jobs) {
  if (grid < 1) throw Error(ErrorKind::invalid_argument, "grid resolution must be >= 1");
  const int s = surface.size();
  const double a = slope.approximate();
  const double len = std::sqrt(1 + a * a);
  const double dx = a / len, dy = 1 / len;   // direction
  const double nx = 1 / len, ny = -a / len;  // normal

  struct Piece {
    double c, s0, s1;
  };
  std::vector<std::vector<const Segment*>> by_square(s);
  for (const auto& seg : segments) by_square[seg.square].push_back(&seg);

  // For each square, the segments of its own chart and of the four charts
  // across its edges, keyed by offset along the common normal.
  std::vector<std::vector<Piece>> charts(s);
  for (int q = 0; q < s; ++q) {
    const std::pair<int, std::pair<double, double>> sources[] = {
        {q, {0, 0}},
        {surface.right(q), {1, 0}},
        {surface.right_inverse(q), {-1, 0}},
        {surface.top(q), {0, 1}},
        {surface.top_inverse(q), {0, -1}},
    };
    for (const auto& [src, shift] : sources) {
      for (const Segment* seg : by_square[src]) {
        double px = seg->x0 + shift.first, py = seg->y0 + shift.second;
        double qx = seg->x1 + shift.first, qy = seg->y1 + shift.second;
        double c = nx * px + ny * py;
        double s0 = dx * px + dy * py, s1 = dx * qx + dy * qy;
        if (s1 < s0) std::swap(s0, s1);
        charts[q].push_back({c, s0, s1});
      }
    }
    std::sort(charts[q].begin(), charts[q].end(), [](const Piece& u, const Piece& v) { return u.c < v.c; });
  }

  const long rows = static_cast<long>(s) * grid;
  std::vector<double> row_max(rows, 0.0);
  auto work = [&](long first, long step) {
    for (long row = first; row < rows; row += step) {
      const int q = static_cast<int>(row / grid);
      const int iy = static_cast<int>(row % grid);
      const auto& pieces = charts[q];
      double worst = 0;
      for (int ix = 0; ix < grid; ++ix) {
        const double px = (ix + 0.5) / grid, py = (iy + 0.5) / grid;
        const double cp = nx * px + ny * py, sp = dx * px + dy * py;
        double best = std::numeric_limits<double>::infinity();
        auto it = std::lower_bound(pieces.begin(), pieces.end(), cp, [](const Piece& u, double v) { return u.c < v; });
        for (auto r = it; r != pieces.end() && r->c - cp < best; ++r) {
          double along = std::max({0.0, r->s0 - sp, sp - r->s1});
          best = std::min(best, std::hypot(r->c - cp, along));
        }
        for (auto l = it; l != pieces.begin();) {
          --l;
          if (cp - l->c >= best) break;
          double along = std::max({0.0, l->s0 - sp, sp - l->s1});
          best = std::min(best, std::hypot(l->c - cp, along));
        }
        worst = std::max(worst, best);
      }
      row_max[row] = worst;
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& t : pool) t.join();
  }
  return *std::max_element(row_max.begin(), row_max.end());
}

double covering_radius(const GeodesicState& st, double t_max, int grid, int jobs) {
  return covering_radius(st.surface, st.slope, trace_segments(st, t_max), grid, jobs);
}

}  // namespace superdense
