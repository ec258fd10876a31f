#pragma once
// Trapezoid cells of the decomposed visibility map and the perturbed
// membership rule shared by every module.
//
// A query point q stands for q_eps = (x + eps^2, y + eps). That makes
// membership half-open on both axes: x_left <= x < x_right and
// bottom(x) <= y < top(x).

#include <array>
#include <string>
#include <vector>

#include "sampvis/geometry.hpp"
#include "sampvis/scene.hpp"

namespace sampvis {

enum class BoundaryKind { OwnEdge, Curtain, ViewportWall };
enum class ViewportSide { Bottom, Top, Left, Right };

// Compact, scene-relative identity of a top or bottom boundary.
struct BoundaryRef {
  BoundaryKind kind = BoundaryKind::ViewportWall;
  int triangle_id = -1;  // owner of the edge (own/curtain)
  int edge_index = -1;
  ViewportSide side = ViewportSide::Top;  // viewport walls only

  friend bool operator==(const BoundaryRef&, const BoundaryRef&) = default;
};

enum class WallCause { TopStop, BottomStop, BlockingVertex, Viewport };

struct Provenance {
  BoundaryRef top;
  BoundaryRef bottom;
  WallCause left = WallCause::Viewport;
  WallCause right = WallCause::Viewport;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Trapezoid {
  int triangle_id = -1;
  Scalar x_left;
  Scalar x_right;
  Line2 top;
  Line2 bottom;
  Provenance provenance;

  // Corners in order: bottom-left, bottom-right, top-right, top-left.
  std::array<Point2, 4> corners() const;
};

bool contains(const Trapezoid& trap, const Point2& q);

// Canonical indices of the pixels inside trap, ascending. Grids are handled
// column by column with exact lattice bounds, lists by an x-sorted scan.
std::vector<std::size_t> pixels_inside(const Trapezoid& trap, const PixelSet& pixels);

// Identity used for deduplication and set comparison.
struct TrapKey {
  int triangle_id;
  Scalar x_left;
  Scalar x_right;
  Line2 top;
  Line2 bottom;
};

TrapKey key_of(const Trapezoid& trap);
int compare(const TrapKey& a, const TrapKey& b);
bool same_geometry(const Trapezoid& a, const Trapezoid& b);

struct TrapKeyLess {
  bool operator()(const TrapKey& a, const TrapKey& b) const { return compare(a, b) < 0; }
};

// Sorts into canonical order (by key).
void sort_canonical(std::vector<Trapezoid>& traps);

std::string to_string(BoundaryKind k);
std::string to_string(ViewportSide s);
std::string to_string(WallCause c);
std::string to_string(const BoundaryRef& b);
BoundaryRef parse_boundary_ref(const std::string& text);
WallCause parse_wall_cause(const std::string& text);

}  // namespace sampvis
