#include "superdense/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "superdense/error.hpp"

namespace superdense {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<int> inverse_of(const std::vector<int>& p, const char* name) {
  const int s = static_cast<int>(p.size());
  std::vector<int> inv(s, -1);
  for (int j = 0; j < s; ++j) {
    if (p[j] < 0 || p[j] >= s)
      throw Error(ErrorKind::invalid_gluing, std::string(name) + " maps square " + std::to_string(j + 1) +
                                                 " outside 1.." + std::to_string(s));
    if (inv[p[j]] != -1)
      throw Error(ErrorKind::invalid_gluing, std::string(name) + " is not a bijection (square " +
                                                 std::to_string(p[j] + 1) + " hit twice)");
    inv[p[j]] = j;
  }
  return inv;
}

std::vector<std::vector<int>> cycles(const std::vector<int>& p) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (seen[j]) continue;
    std::vector<int> c;
    for (int x = static_cast<int>(j); !seen[x]; x = p[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    auto tok = trim(s.substr(pos, comma - pos));
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorKind::parse_error, "malformed permutation list '" + std::string(s) + "'");
    out.push_back(std::stoi(std::string(tok)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

PolysquareSurface::PolysquareSurface(std::vector<int> top, std::vector<int> right)
    : top_(std::move(top)), right_(std::move(right)) {
  if (top_.empty()) throw Error(ErrorKind::invalid_gluing, "a surface needs at least one square");
  if (top_.size() != right_.size()) throw Error(ErrorKind::invalid_gluing, "u and r must have the same length");
  top_inv_ = inverse_of(top_, "u");
  right_inv_ = inverse_of(right_, "r");

  const int s = size();
  DisjointSets squares(s);
  for (int j = 0; j < s; ++j) {
    squares.unite(j, top_[j]);
    squares.unite(j, right_[j]);
  }
  for (int j = 0; j < s; ++j)
    if (squares.find(j) != 0)
      throw Error(ErrorKind::disconnected_surface,
                  "u and r do not act transitively (square " + std::to_string(j + 1) + " unreachable)");

  DisjointSets corners(4 * s);
  for (int j = 0; j < s; ++j) {
    corners.unite(4 * j + top_left, 4 * top_[j] + bottom_left);
    corners.unite(4 * j + top_right, 4 * top_[j] + bottom_right);
    corners.unite(4 * j + top_right, 4 * right_[j] + top_left);
    corners.unite(4 * j + bottom_right, 4 * right_[j] + bottom_left);
  }
  std::map<int, int> index;
  corner_class_.resize(4 * s);
  for (int c = 0; c < 4 * s; ++c) {
    auto [it, inserted] = index.try_emplace(corners.find(c), static_cast<int>(index.size()));
    corner_class_[c] = it->second;
  }
  class_size_.assign(index.size(), 0);
  for (int c : corner_class_) ++class_size_[c];
}

PolysquareSurface PolysquareSurface::from_permutations(const std::vector<int>& u, const std::vector<int>& r) {
  std::vector<int> top(u.size()), right(r.size());
  for (std::size_t j = 0; j < u.size(); ++j) top[j] = u[j] - 1;
  for (std::size_t j = 0; j < r.size(); ++j) right[j] = r[j] - 1;
  return PolysquareSurface(std::move(top), std::move(right));
}

PolysquareSurface PolysquareSurface::from_grid(std::vector<GridCell> cells) {
  if (cells.empty()) throw Error(ErrorKind::invalid_argument, "empty cell set");
  std::sort(cells.begin(), cells.end(),
            [](const GridCell& a, const GridCell& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::map<std::pair<int, int>, int> id;
  for (std::size_t i = 0; i < cells.size(); ++i) id[{cells[i].x, cells[i].y}] = static_cast<int>(i);
  auto at = [&](int x, int y) {
    auto it = id.find({x, y});
    return it == id.end() ? -1 : it->second;
  };

  // Edge connectivity of the region itself.
  std::vector<bool> seen(cells.size(), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const auto [x, y] = cells[todo.front()];
    todo.pop();
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      int n = at(x + dx, y + dy);
      if (n >= 0 && !seen[n]) {
        seen[n] = true;
        ++reached;
        todo.push(n);
      }
    }
  }
  if (reached != cells.size()) throw Error(ErrorKind::disconnected_surface, "cell set is not edge-connected");

  std::vector<int> top(cells.size()), right(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [x, y] = cells[i];
    int r = at(x + 1, y);
    if (r < 0) {
      int start = x;
      while (at(start - 1, y) >= 0) --start;
      r = at(start, y);
    }
    int u = at(x, y + 1);
    if (u < 0) {
      int start = y;
      while (at(x, start - 1) >= 0) --start;
      u = at(x, start);
    }
    right[i] = r;
    top[i] = u;
  }
  PolysquareSurface out(std::move(top), std::move(right));
  out.layout_ = std::move(cells);
  return out;
}

SurfaceTopology PolysquareSurface::topology() const {
  SurfaceTopology t;
  t.vertices = static_cast<int>(class_size_.size());
  t.vertex_classes.resize(t.vertices);
  for (int c = 0; c < 4 * size(); ++c) t.vertex_classes[corner_class_[c]].push_back(c);
  t.edges = 2 * size();
  t.faces = size();
  t.chi = t.vertices - t.edges + t.faces;
  t.genus = 1 - t.chi / 2;
  return t;
}

std::vector<int> PolysquareSurface::corner_classes() const { return corner_class_; }

bool PolysquareSurface::is_regular_corner(int corner_id) const {
  return class_size_[corner_class_[corner_id]] == 4;
}

std::vector<std::vector<int>> PolysquareSurface::horizontal_streets() const { return cycles(right_); }
std::vector<std::vector<int>> PolysquareSurface::vertical_streets() const { return cycles(top_); }

std::string PolysquareSurface::perm_string() const {
  std::ostringstream os;
  os << "perm: s=" << size() << " u=";
  for (int j = 0; j < size(); ++j) os << (j ? "," : "") << top_[j] + 1;
  os << " r=";
  for (int j = 0; j < size(); ++j) os << (j ? "," : "") << right_[j] + 1;
  return os.str();
}

PolysquareSurface parse_surface(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto t = trim(line);
    if (t.empty() || t.front() == '%' || t.substr(0, 2) == "//") continue;
    lines.emplace_back(t);
  }
  if (lines.empty()) throw Error(ErrorKind::parse_error, "empty surface description");

  if (lines[0].rfind("grid:", 0) == 0) {
    std::vector<std::string> rows;
    auto rest = trim(std::string_view(lines[0]).substr(5));
    if (!rest.empty()) rows.emplace_back(rest);
    rows.insert(rows.end(), lines.begin() + 1, lines.end());
    std::vector<GridCell> cells;
    for (std::size_t y = 0; y < rows.size(); ++y) {
      for (std::size_t x = 0; x < rows[y].size(); ++x) {
        char c = rows[y][x];
        if (c == '#') cells.push_back({static_cast<int>(x), static_cast<int>(y)});
        else if (c != '.') throw Error(ErrorKind::parse_error, std::string("unexpected character '") + c + "' in grid");
      }
    }
    return PolysquareSurface::from_grid(std::move(cells));
  }

  if (lines[0].rfind("perm:", 0) == 0) {
    if (lines.size() != 1) throw Error(ErrorKind::parse_error, "perm: description must be a single line");
    std::istringstream fields(lines[0].substr(5));
    std::optional<int> s;
    std::optional<std::vector<int>> u, r;
    for (std::string field; fields >> field;) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::parse_error, "expected key=value, got '" + field + "'");
      auto key = field.substr(0, eq), value = field.substr(eq + 1);
      if (key == "s") {
        auto list = parse_int_list(value);
        if (list.size() != 1) throw Error(ErrorKind::parse_error, "malformed s='" + value + "'");
        s = list[0];
      } else if (key == "u") {
        u = parse_int_list(value);
      } else if (key == "r") {
        r = parse_int_list(value);
      } else {
        throw Error(ErrorKind::parse_error, "unknown key '" + key + "'");
      }
    }
    if (!u || !r) throw Error(ErrorKind::parse_error, "perm: needs both u= and r=");
    if (s && (static_cast<std::size_t>(*s) != u->size() || static_cast<std::size_t>(*s) != r->size()))
      throw Error(ErrorKind::invalid_gluing, "s does not match the permutation lengths");
    return PolysquareSurface::from_permutations(*u, *r);
  }
  throw Error(ErrorKind::parse_error, "surface description must start with 'grid:' or 'perm:'");
}

PolysquareSurface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open surface file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_surface(buf.str());
}

}  // namespace superdense
