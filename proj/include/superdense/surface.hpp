#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superdense {

struct GridCell {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Corner of an atomic square; corner id of square j is 4*j + Corner.
enum Corner { bottom_left = 0, bottom_right = 1, top_left = 2, top_right = 3 };

struct SurfaceTopology {
  std::vector<std::vector<int>> vertex_classes;  // corner ids, sorted
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int chi = 0;
  int genus = 0;
};

/// s unit squares glued by two permutations. Squares are numbered 0..s-1
/// here; files, the CLI and from_permutations use 1..s. Square j covers the
/// horizontal edge [j, j+1) of [0, s).
class PolysquareSurface {
 public:
  /// u(j): square above j, r(j): square right of j, both 1-based.
  static PolysquareSurface from_permutations(const std::vector<int>& u, const std::vector<int>& r);
  /// Cells are numbered row-major from the bottom row up; every maximal
  /// horizontal or vertical run of cells closes up into a cylinder.
  static PolysquareSurface from_grid(std::vector<GridCell> cells);

  static PolysquareSurface torus() { return from_permutations({1}, {1}); }
  static PolysquareSurface l_surface() { return from_grid({{0, 0}, {1, 0}, {0, 1}}); }

  int size() const { return static_cast<int>(top_.size()); }
  int top(int j) const { return top_[j]; }
  int right(int j) const { return right_[j]; }
  int top_inverse(int j) const { return top_inv_[j]; }
  int right_inverse(int j) const { return right_inv_[j]; }
  const std::vector<int>& top_permutation() const { return top_; }
  const std::vector<int>& right_permutation() const { return right_; }
  const std::optional<std::vector<GridCell>>& layout() const { return layout_; }

  SurfaceTopology topology() const;
  /// Vertex class index of every corner id.
  std::vector<int> corner_classes() const;
  /// True when the vertex at this corner has cone angle 2*pi, i.e. the flow
  /// passes through it.
  bool is_regular_corner(int corner_id) const;

  /// Cycles of r (horizontal cylinders) and of u (vertical), 0-based.
  std::vector<std::vector<int>> horizontal_streets() const;
  std::vector<std::vector<int>> vertical_streets() const;

  /// Text form: "perm: s=3 u=3,2,1 r=2,1,3".
  std::string perm_string() const;

  friend bool operator==(const PolysquareSurface& a, const PolysquareSurface& b) {
    return a.top_ == b.top_ && a.right_ == b.right_;
  }

 private:
  PolysquareSurface(std::vector<int> top, std::vector<int> right);

  std::vector<int> top_, right_, top_inv_, right_inv_;
  std::optional<std::vector<GridCell>> layout_;
  std::vector<int> corner_class_;
  std::vector<int> class_size_;
};

/// Parses the surface file format: either a line "grid:" followed by rows
/// of '#'/'.' (the first row listed is the bottom row), or a single line
/// "perm: s=<s> u=<list> r=<list>". Lines starting with '%' or '//' are
/// comments.
PolysquareSurface parse_surface(std::string_view text);
PolysquareSurface load_surface(const std::string& path);

}  // namespace superdense
