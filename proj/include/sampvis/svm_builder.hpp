#pragma once
// Sampled visibility map: offline construction with pixel marking, online
// construction with a semi-dynamic point locator.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sampvis/query_engine.hpp"
#include "sampvis/scene.hpp"
#include "sampvis/trapezoid.hpp"

namespace sampvis {

struct SvmStats {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t t = 0;
  std::uint64_t build_calls = 0;
  std::uint64_t marked_pixels = 0;  // offline: total pixels reported by marking
  std::uint64_t locator_queries = 0;
  std::uint64_t locator_hits = 0;
  // sweep only
  std::uint64_t gaps_created = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t gap_events = 0;
  std::uint64_t trap_expiries = 0;
  std::uint64_t lattice_queries = 0;
  QueryCounts queries;
};

struct SampledVisibilityMap {
  std::vector<Trapezoid> trapezoids;  // canonical order
  SvmStats stats;
};

SampledVisibilityMap build_svm_offline(const QueryEngine& engine, const PixelSet& pixels);

// Pixels are inserted in the given order (indices into pixels).
SampledVisibilityMap build_svm_online(const QueryEngine& engine, const PixelSet& pixels,
                                      const std::vector<std::size_t>& order);
SampledVisibilityMap build_svm_online(const QueryEngine& engine, const PixelSet& pixels);

class TrapezoidLocator {
 public:
  // Throws InternalError when trap overlaps an inserted trapezoid.
  void insert(const Trapezoid& trap);
  std::optional<Trapezoid> query(const Point2& q) const;
  std::size_t size() const { return traps_.size(); }
  const std::vector<Trapezoid>& trapezoids() const { return traps_; }

 private:
  // Slab starting at the key and ending at the next key; ids ordered bottom to top.
  std::map<Scalar, std::vector<int>> slabs_;
  std::vector<Trapezoid> traps_;

  void split_at(const Scalar& x);
};

// For every pixel, the index of the trapezoid that contains it (or -1).
// Throws InternalError when a pixel lies in two trapezoids.
std::vector<int> assign_pixels(const std::vector<Trapezoid>& traps, const PixelSet& pixels);

}  // namespace sampvis
