#pragma once
// Scenes (triangles + viewport), pixel sets and their text formats.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sampvis/geometry.hpp"

namespace sampvis {

// Id reported for the implicit background plane.
inline constexpr int kBackgroundId = -1;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class SceneError : public std::runtime_error {
 public:
  SceneError(const std::string& what, std::vector<int> ids = {})
      : std::runtime_error(what), ids_(std::move(ids)) {}
  const std::vector<int>& ids() const { return ids_; }

 private:
  std::vector<int> ids_;
};

/// Axis-aligned rectangle in the image plane. Membership is half-open
/// ([xmin, xmax) x [ymin, ymax)), matching the perturbed point convention.
struct Viewport {
  Scalar xmin, ymin, xmax, ymax;

  bool contains(const Point2& q) const {
    return xmin <= q.x && q.x < xmax && ymin <= q.y && q.y < ymax;
  }
  friend bool operator==(const Viewport& a, const Viewport& b) {
    return a.xmin == b.xmin && a.ymin == b.ymin && a.xmax == b.xmax && a.ymax == b.ymax;
  }
};

struct Scene {
  std::vector<Triangle> triangles;
  std::optional<Viewport> viewport;

  std::size_t size() const { return triangles.size(); }
  // Depth of the implicit background plane: one unit behind the deepest vertex.
  Scalar background_z() const;
  const Viewport& view() const;
};

struct GridSpec {
  Point2 origin;
  Scalar dx;
  Scalar dy;
  int width = 0;
  int height = 0;
};

struct LatticeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Exact affine map between grid indices and plane coordinates.
class LatticeMap {
 public:
  explicit LatticeMap(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  Point2 pixel_at(int i, int j) const;
  std::optional<LatticeIndex> locate_pixel(const Point2& q) const;
  // Continuous lattice coordinates (i, j) of an arbitrary plane point.
  Point2 to_lattice(const Point2& q) const;
  Point2 from_lattice(const Point2& ij) const;

 private:
  GridSpec grid_;
};

/// Either a regular grid or an explicit, duplicate-free list of points.
/// Pixels are numbered canonically: grid row-major by (j, i), explicit in list order.
class PixelSet {
 public:
  PixelSet() = default;
  explicit PixelSet(GridSpec grid);
  explicit PixelSet(std::vector<Point2> points);

  bool is_grid() const { return std::holds_alternative<GridSpec>(data_); }
  const GridSpec& grid() const { return std::get<GridSpec>(data_); }
  const std::vector<Point2>& points() const { return std::get<std::vector<Point2>>(data_); }
  std::size_t size() const;
  Point2 point(std::size_t k) const;
  LatticeIndex grid_index(std::size_t k) const;
  // Explicit lists only: indices sorted by (x, y).
  const std::vector<std::size_t>& x_order() const { return x_order_; }
  // Closed bounding box of all pixels (requires size() > 0).
  Viewport bounds() const;

 private:
  std::variant<GridSpec, std::vector<Point2>> data_{std::vector<Point2>{}};
  std::vector<std::size_t> x_order_;
};

struct LoadOptions {
  bool validate_disjoint = true;
};

Scene load_scene(const std::string& text, const LoadOptions& options = {});
Scene load_scene_file(const std::string& path, const LoadOptions& options = {});
std::string serialize_scene(const Scene& scene);

PixelSet parse_pixels(const std::string& text);
PixelSet load_pixels_file(const std::string& path);
std::string serialize_pixels(const PixelSet& pixels);

// Exact pairwise test in 3-space. Triangles may share boundary points; any
// other common point makes the pair offending. Returns the first offending
// pair (lower id first) or nothing.
std::optional<std::pair<int, int>> validate_disjoint(const Scene& scene);
bool triangles_disjoint(const Triangle& a, const Triangle& b);

// Viewport: the scene's own when set, else the pixel bounding box padded by
// one grid spacing (one unit for explicit lists). Throws SceneError when a
// pixel falls outside the half-open viewport.
Viewport resolve_viewport(const Scene& scene, const PixelSet& pixels);
Scene with_viewport(Scene scene, const PixelSet& pixels);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sampvis
