#pragma once
// Seeded random scene families. Every family keeps triangles in disjoint
// z-slabs, so scenes are pairwise disjoint by construction, and rejects
// candidates that would break general position in the projection.

#include <cstdint>
#include <string>

#include "sampvis/scene.hpp"

namespace sampvis {

enum class Family { Layers, BoundaryClutter, Fence };

struct GenerateParams {
  Family family = Family::Layers;
  int n = 10;
  std::uint64_t seed = 1;
  int extent = 16;       // viewport is [0, extent]^2
  int denominator = 64;  // coordinates are multiples of 1/denominator
};

// Throws PreconditionError for invalid params and std::runtime_error when a
// triangle cannot be placed in general position.
Scene generate_scene(const GenerateParams& params);

Family parse_family(const std::string& name);
std::string to_string(Family f);

}  // namespace sampvis
