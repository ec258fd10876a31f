#include "sampvis/svm_builder.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sampvis/builder.hpp"

namespace sampvis {

namespace {

QueryCounts since(const QueryCounts& before, const QueryCounts& after) {
  QueryCounts d;
  d.ray_shoot = after.ray_shoot - before.ray_shoot;
  d.drag_vertical = after.drag_vertical - before.drag_vertical;
  d.drag_oblique = after.drag_oblique - before.drag_oblique;
  d.max_blocking_vertex = after.max_blocking_vertex - before.max_blocking_vertex;
  d.pixels_in_trapezoid = after.pixels_in_trapezoid - before.pixels_in_trapezoid;
  return d;
}

void finish(SampledVisibilityMap& svm, const QueryEngine& engine, const PixelSet& pixels,
            const QueryCounts& before) {
  std::set<TrapKey, TrapKeyLess> keys;
  for (const auto& t : svm.trapezoids) {
    if (!keys.insert(key_of(t)).second) throw InternalError("trapezoid emitted twice");
  }
  sort_canonical(svm.trapezoids);
  svm.stats.n = engine.scene().size();
  svm.stats.p = pixels.size();
  svm.stats.t = svm.trapezoids.size();
  svm.stats.queries = since(before, engine.counts());
}

}  // namespace

SampledVisibilityMap build_svm_offline(const QueryEngine& engine, const PixelSet& pixels) {
  const QueryCounts before = engine.counts();
  SampledVisibilityMap svm;
  std::vector<bool> marked(pixels.size(), false);
  for (std::size_t k = 0; k < pixels.size(); ++k) {
    if (marked[k]) continue;
    Trapezoid trap = build_trapezoid(pixels.point(k), engine);
    ++svm.stats.build_calls;
    const auto inside = engine.pixels_in_trapezoid(trap, pixels);
    for (std::size_t m : inside) {
      if (marked[m]) throw InternalError("pixel marked by two trapezoids");
      marked[m] = true;
    }
    if (!marked[k]) throw InternalError("trapezoid does not report its own pixel");
    svm.stats.marked_pixels += inside.size();
    svm.trapezoids.push_back(std::move(trap));
  }
  finish(svm, engine, pixels, before);
  return svm;
}

SampledVisibilityMap build_svm_online(const QueryEngine& engine, const PixelSet& pixels,
                                      const std::vector<std::size_t>& order) {
  const QueryCounts before = engine.counts();
  SampledVisibilityMap svm;
  TrapezoidLocator locator;
  for (std::size_t k : order) {
    const Point2 q = pixels.point(k);
    ++svm.stats.locator_queries;
    if (locator.query(q)) {
      ++svm.stats.locator_hits;
      continue;
    }
    Trapezoid trap = build_trapezoid(q, engine);
    ++svm.stats.build_calls;
    locator.insert(trap);
  }
  svm.trapezoids = locator.trapezoids();
  finish(svm, engine, pixels, before);
  return svm;
}

SampledVisibilityMap build_svm_online(const QueryEngine& engine, const PixelSet& pixels) {
  std::vector<std::size_t> order(pixels.size());
  std::iota(order.begin(), order.end(), 0);
  return build_svm_online(engine, pixels, order);
}

// --- locator ---------------------------------------------------------------

void TrapezoidLocator::split_at(const Scalar& x) {
  auto it = slabs_.lower_bound(x);
  if (it != slabs_.end() && it->first == x) return;
  std::vector<int> covering;
  if (it != slabs_.begin()) covering = std::prev(it)->second;
  slabs_.emplace_hint(it, x, std::move(covering));
}

void TrapezoidLocator::insert(const Trapezoid& trap) {
  if (!(trap.x_left < trap.x_right)) throw InternalError("locator: empty trapezoid");
  split_at(trap.x_left);
  split_at(trap.x_right);
  const auto first = slabs_.find(trap.x_left);
  const auto last = slabs_.find(trap.x_right);

  // Validate every slab before touching any of them.
  std::vector<std::size_t> positions;
  for (auto it = first; it != last; ++it) {
    const Scalar& lo = it->first;
    const Scalar& hi = std::next(it)->first;
    const Scalar mid = (lo + hi) / 2;
    const auto& ids = it->second;
    const auto pos = std::lower_bound(ids.begin(), ids.end(), trap.bottom.y_at(mid),
                                      [&](int id, const Scalar& y) {
                                        return traps_[id].bottom.y_at(mid) < y;
                                      });
    auto below_ok = [&](const Trapezoid& below) {
      return below.top.y_at(lo) <= trap.bottom.y_at(lo) && below.top.y_at(hi) <= trap.bottom.y_at(hi);
    };
    auto above_ok = [&](const Trapezoid& above) {
      return trap.top.y_at(lo) <= above.bottom.y_at(lo) && trap.top.y_at(hi) <= above.bottom.y_at(hi);
    };
    if ((pos != ids.begin() && !below_ok(traps_[*std::prev(pos)])) ||
        (pos != ids.end() && !above_ok(traps_[*pos]))) {
      throw InternalError("locator: trapezoid overlaps an inserted one near x=" + to_string(mid));
    }
    positions.push_back(static_cast<std::size_t>(pos - ids.begin()));
  }
  const int id = static_cast<int>(traps_.size());
  traps_.push_back(trap);
  std::size_t k = 0;
  for (auto it = first; it != last; ++it, ++k) {
    it->second.insert(it->second.begin() + static_cast<std::ptrdiff_t>(positions[k]), id);
  }
}

std::optional<Trapezoid> TrapezoidLocator::query(const Point2& q) const {
  auto it = slabs_.upper_bound(q.x);
  if (it == slabs_.begin()) return std::nullopt;
  const auto& ids = std::prev(it)->second;
  const auto pos = std::partition_point(ids.begin(), ids.end(), [&](int id) {
    return traps_[id].bottom.y_at(q.x) <= q.y;
  });
  if (pos == ids.begin()) return std::nullopt;
  const Trapezoid& cand = traps_[*std::prev(pos)];
  if (contains(cand, q)) return cand;
  return std::nullopt;
}

std::vector<int> assign_pixels(const std::vector<Trapezoid>& traps, const PixelSet& pixels) {
  std::vector<int> owner(pixels.size(), -1);
  for (std::size_t i = 0; i < traps.size(); ++i) {
    for (std::size_t k : pixels_inside(traps[i], pixels)) {
      if (owner[k] != -1) throw InternalError("pixel lies in two trapezoids");
      owner[k] = static_cast<int>(i);
    }
  }
  return owner;
}

}  // namespace sampvis
