#pragma once
// The query primitives used to build one trapezoid: ray shooting, vertical
// and oblique ray dragging, blocking-vertex search, and pixel reporting.
//
// All predicates are evaluated at the perturbed point (x + eps^2, y + eps).
// Engines differ only in how candidates are gathered; the exact selection
// rules live in the base class, so every engine answers identically.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sampvis/geometry.hpp"
#include "sampvis/interval_index.hpp"
#include "sampvis/scene.hpp"
#include "sampvis/trapezoid.hpp"

namespace sampvis {

enum class VDir { Up, Down };
enum class HDir { Left, Right };

struct HitRecord {
  int triangle_id = kBackgroundId;
  Scalar z;  // depth at the unperturbed point

  friend bool operator==(const HitRecord&, const HitRecord&) = default;
};

struct Boundary {
  BoundaryKind kind = BoundaryKind::ViewportWall;
  std::optional<Edge3> source;  // own/curtain only
  ViewportSide side = ViewportSide::Top;
  Line2 line;
  Scalar crossing_y;
  bool is_top = true;               // the face lies below the line
  int surface_id = kBackgroundId;   // triangle visible in the face

  BoundaryRef ref() const;
  friend bool operator==(const Boundary& a, const Boundary& b);
};

enum class StopCause { Endpoint, Crossing, ViewportWall };

struct EdgeStop {
  Scalar x;
  StopCause cause = StopCause::ViewportWall;
  std::optional<Point3> vertex;  // Endpoint
  std::optional<Edge3> edge;     // Crossing

  friend bool operator==(const EdgeStop& a, const EdgeStop& b);
};

// x-range is (x_lo, x_hi), or (x_lo, x_hi] when hi_inclusive.
struct Beam {
  Scalar x_lo;
  Scalar x_hi;
  bool hi_inclusive = false;
  Line2 top;
  Line2 bottom;
  Plane front;
};

struct BlockingVertex {
  Scalar x;
  Point3 vertex;
  int triangle_id = 0;
  int vertex_index = 0;

  friend bool operator==(const BlockingVertex& a, const BlockingVertex& b) {
    return a.x == b.x && a.vertex == b.vertex && a.triangle_id == b.triangle_id &&
           a.vertex_index == b.vertex_index;
  }
};

struct QueryCounts {
  std::uint64_t ray_shoot = 0;
  std::uint64_t drag_vertical = 0;
  std::uint64_t drag_oblique = 0;
  std::uint64_t max_blocking_vertex = 0;
  std::uint64_t pixels_in_trapezoid = 0;

  std::uint64_t total() const {
    return ray_shoot + drag_vertical + drag_oblique + max_blocking_vertex + pixels_in_trapezoid;
  }
};

class QueryEngine {
 public:
  // The scene's viewport must already be resolved.
  explicit QueryEngine(const Scene& scene);
  virtual ~QueryEngine() = default;
  QueryEngine(const QueryEngine&) = delete;
  QueryEngine& operator=(const QueryEngine&) = delete;

  virtual std::string name() const = 0;

  const Scene& scene() const { return scene_; }
  const Viewport& viewport() const { return scene_.view(); }

  HitRecord ray_shoot(const Point2& pi) const;
  Boundary drag_vertical(const Point2& pi, const HitRecord& hit, VDir dir) const;
  EdgeStop drag_oblique(const Boundary& b, const Scalar& start_x, HDir dir) const;
  std::optional<BlockingVertex> max_blocking_vertex(const Beam& beam, HDir dir) const;
  // Canonical indices of the pixels inside trap, ascending.
  std::vector<std::size_t> pixels_in_trapezoid(const Trapezoid& trap, const PixelSet& pixels) const;

  // Plane of a triangle, or the background plane for kBackgroundId.
  const Plane& surface_plane(int triangle_id) const;

  QueryCounts counts() const;
  void reset_counts();

 protected:
  struct EdgeInfo {
    Edge3 edge;
    Point3 lo;  // endpoint with smaller x (smaller y if vertical)
    Point3 hi;
    bool vertical = false;
    Line2 line;   // projected supporting line
    Scalar dzdx;  // non-vertical edges only
  };
  struct VertexInfo {
    Point3 p;
    int tri = 0;  // index into scene().triangles
    int k = 0;
  };

  const std::vector<EdgeInfo>& edges() const { return edges_; }
  const std::vector<VertexInfo>& vertices() const { return vertices_; }

  // Candidate gathering; results must be supersets of the exact answers.
  // Triangle indices whose closed projected x-span contains x.
  virtual std::vector<int> triangles_near(const Scalar& x) const = 0;
  // Edge indices whose closed projected x-span contains x.
  virtual std::vector<int> edges_near(const Scalar& x) const = 0;
  // Edge indices whose closed projected x-span meets [lo, hi].
  virtual std::vector<int> edges_meeting(const Scalar& lo, const Scalar& hi) const = 0;
  // Best admitted vertex for the beam, by beam_admits and nearer.
  virtual std::optional<int> find_blocking(const Beam& beam, HDir dir) const = 0;

  bool beam_admits(const Beam& beam, const VertexInfo& v) const;
  // True when a is preferred over b: nearer in dir, then higher, then lower
  // triangle id, then lower vertex index.
  bool nearer(const VertexInfo& a, const VertexInfo& b, HDir dir) const;

 private:
  Scene scene_;
  std::vector<Plane> planes_;
  std::vector<int> orientation_;
  Plane background_;
  std::vector<EdgeInfo> edges_;
  std::vector<VertexInfo> vertices_;

  mutable std::atomic<std::uint64_t> n_ray_shoot_{0};
  mutable std::atomic<std::uint64_t> n_drag_vertical_{0};
  mutable std::atomic<std::uint64_t> n_drag_oblique_{0};
  mutable std::atomic<std::uint64_t> n_blocking_{0};
  mutable std::atomic<std::uint64_t> n_pixels_{0};
};

// Exhaustive scans.
class BaselineEngine final : public QueryEngine {
 public:
  explicit BaselineEngine(const Scene& scene) : QueryEngine(scene) {}
  std::string name() const override { return "baseline"; }

 protected:
  std::vector<int> triangles_near(const Scalar& x) const override;
  std::vector<int> edges_near(const Scalar& x) const override;
  std::vector<int> edges_meeting(const Scalar& lo, const Scalar& hi) const override;
  std::optional<int> find_blocking(const Beam& beam, HDir dir) const override;
};

// Interval trees over projected x-spans and an x-sorted vertex array.
class AcceleratedEngine final : public QueryEngine {
 public:
  explicit AcceleratedEngine(const Scene& scene);
  std::string name() const override { return "accel"; }

 protected:
  std::vector<int> triangles_near(const Scalar& x) const override;
  std::vector<int> edges_near(const Scalar& x) const override;
  std::vector<int> edges_meeting(const Scalar& lo, const Scalar& hi) const override;
  std::optional<int> find_blocking(const Beam& beam, HDir dir) const override;

 private:
  IntervalIndex triangle_index_;
  IntervalIndex edge_index_;
  std::vector<int> vertex_order_;  // ascending (x, y, tri, k)
};

enum class EngineKind { Baseline, Accelerated };

std::unique_ptr<QueryEngine> make_engine(EngineKind kind, const Scene& scene);
EngineKind parse_engine_kind(const std::string& text);

}  // namespace sampvis
