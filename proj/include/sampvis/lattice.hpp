#pragma once
// Lowest leftmost integer point in a convex region, plus a brute-force scan.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sampvis/geometry.hpp"

namespace sampvis {

struct LatticePoint {
  Integer x;
  Integer y;
  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

// a*x + b*y <= c when closed, a*x + b*y < c when open.
struct HalfPlane {
  Scalar a;
  Scalar b;
  Scalar c;
  bool closed = true;

  bool admits(const Scalar& x, const Scalar& y) const;
};

// Closed integer box [xlo, xhi] x [ylo, yhi].
struct LatticeBox {
  Integer xlo, xhi, ylo, yhi;
  bool empty() const { return xlo > xhi || ylo > yhi; }
};

/// Convex polygon with vertices in counterclockwise order. closed[i] tells
/// whether edge (v[i], v[i+1]) belongs to the polygon. Two vertices describe
/// a segment and one vertex a point; both are kept only when all flags are closed.
struct ConvexPolygon {
  std::vector<Point2> vertices;
  std::vector<bool> closed;

  static ConvexPolygon all_closed(std::vector<Point2> vertices);
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sum of floor((a*i + b) / m) for i in [0, n), m > 0, n >= 0.
Integer floor_sum(Integer n, Integer m, Integer a, Integer b);

// Minimum (x, then y) integer point of the box satisfying every half-plane.
std::optional<LatticePoint> lowest_leftmost(const std::vector<HalfPlane>& constraints,
                                            const LatticeBox& box);

std::vector<HalfPlane> half_planes_of(const ConvexPolygon& poly);
LatticeBox bounding_box(const ConvexPolygon& poly);

std::optional<LatticePoint> lowest_leftmost_lattice_point(const ConvexPolygon& poly);

// Exhaustive scan of the bounding box; throws BudgetExceeded when the box
// holds more than budget integer points.
std::optional<LatticePoint> lattice_point_brute(const ConvexPolygon& poly,
                                                std::uint64_t budget = 1'000'000);

}  // namespace sampvis
