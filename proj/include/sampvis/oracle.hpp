#pragma once
// Brute-force ground truth: per-pixel ray casting, the analytic visibility
// map by slab decomposition, its trapezoidal decomposition, and the
// reference sampled visibility map. None of this shares code paths with the
// query engines.

#include <string>
#include <vector>

#include "sampvis/lattice.hpp"
#include "sampvis/scene.hpp"
#include "sampvis/svm_builder.hpp"
#include "sampvis/trapezoid.hpp"

namespace sampvis {

inline constexpr int kOutsideLabel = -2;

struct OracleOptions {
  std::size_t max_triangles = 64;
};

// Triangle visible at the perturbed point q_eps, or kBackgroundId.
int raycast_point(const Scene& scene, const Point2& q);
std::vector<int> raycast_image(const Scene& scene, const PixelSet& pixels);

struct VisPiece {
  int label;
  Line2 bottom;
  Line2 top;
};

/// The visibility map restricted to the viewport, stored as vertical slabs
/// between consecutive critical abscissae. Each slab lists its maximal
/// same-label pieces bottom to top.
struct VisMap {
  Viewport viewport;
  std::vector<Scalar> xs;                    // ascending; front = xmin, back = xmax
  std::vector<std::vector<VisPiece>> slabs;  // slabs[k] spans [xs[k], xs[k+1])
  std::vector<Point2> vertices;              // lexicographic order
  std::size_t face_count = 0;

  std::size_t vertex_count() const { return vertices.size(); }
  // Label of the face containing q_eps (q inside the viewport).
  int label_at(const Point2& q) const;
};

// Throws BudgetExceeded when the scene has more than max_triangles triangles.
VisMap analytic_vismap(const Scene& scene, const OracleOptions& options = {});
std::vector<Trapezoid> analytic_trap_decomp(const VisMap& vismap);

SampledVisibilityMap reference_svm(const std::vector<Trapezoid>& decomposition,
                                   const PixelSet& pixels);
SampledVisibilityMap reference_svm(const Scene& scene, const PixelSet& pixels,
                                   const OracleOptions& options = {});

struct SvmDiff {
  std::vector<Trapezoid> missing;  // expected but absent
  std::vector<Trapezoid> extra;    // present but not expected
  std::vector<std::pair<Trapezoid, Trapezoid>> mismatched;  // same cell, other triangle

  bool empty() const { return missing.empty() && extra.empty() && mismatched.empty(); }
  std::string summary() const;  // "missing=a extra=b mismatched=c"
  std::string report() const;
};

SvmDiff compare_svm(const std::vector<Trapezoid>& expected, const std::vector<Trapezoid>& actual);

}  // namespace sampvis
