#pragma once
// Construction of the single trapezoid of the decomposed visibility map that
// contains a given pixel.

#include <optional>

#include "sampvis/query_engine.hpp"
#include "sampvis/trapezoid.hpp"

namespace sampvis {

// Intermediate results of one construction, for inspection and tests.
struct BuildTrace {
  HitRecord hit;
  Boundary top;
  Boundary bottom;
  EdgeStop top_left, top_right, bottom_left, bottom_right;
  std::optional<BlockingVertex> left_vertex, right_vertex;
};

Trapezoid build_trapezoid(const Point2& pi, const QueryEngine& engine, BuildTrace* trace = nullptr);

}  // namespace sampvis
