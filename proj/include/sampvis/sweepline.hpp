#pragma once
// Traps-and-gaps sweep over a regular pixel grid.

#include <optional>

#include "sampvis/lattice.hpp"
#include "sampvis/query_engine.hpp"
#include "sampvis/svm_builder.hpp"

namespace sampvis {

/// Not-yet-resolved region right of the sweepline: x >= left_x, on or above
/// lower, strictly below upper. Missing lines stand for the viewport.
struct Gap {
  Scalar left_x;
  std::optional<Line2> upper;
  std::optional<Line2> lower;
};

// Grid point of the gap minimizing (x, y), if any.
std::optional<LatticeIndex> gap_leftmost_pixel(const Gap& gap, const GridSpec& grid);

struct SweepOptions {
  // Check alternation and pixel ownership after every event (slow).
  bool check_invariants = false;
};

SampledVisibilityMap sweep_build(const QueryEngine& engine, const PixelSet& pixels,
                                 const SweepOptions& options = {});

}  // namespace sampvis
