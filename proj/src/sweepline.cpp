#include "sampvis/sweepline.hpp"

#include <list>
#include <set>

#include "sampvis/builder.hpp"

namespace sampvis {

std::optional<LatticeIndex> gap_leftmost_pixel(const Gap& gap, const GridSpec& grid) {
  const Scalar& x0 = grid.origin.x;
  const Scalar& y0 = grid.origin.y;
  std::vector<HalfPlane> hs;
  // i >= (left_x - x0) / dx
  hs.push_back({-1, 0, -(gap.left_x - x0) / grid.dx, true});
  // A line a*x + b*y = c becomes (a dx) i + (b dy) j = c - a x0 - b y0.
  if (gap.lower) {
    const Line2& l = *gap.lower;
    hs.push_back({-(l.a() * grid.dx), -(l.b() * grid.dy), -(l.c() - l.a() * x0 - l.b() * y0), true});
  }
  if (gap.upper) {
    const Line2& l = *gap.upper;
    hs.push_back({l.a() * grid.dx, l.b() * grid.dy, l.c() - l.a() * x0 - l.b() * y0, false});
  }
  const LatticeBox box{0, grid.width - 1, 0, grid.height - 1};
  const auto hit = lowest_leftmost(hs, box);
  if (!hit) return std::nullopt;
  return LatticeIndex{static_cast<int>(hit->x.get_si()), static_cast<int>(hit->y.get_si())};
}

namespace {

struct Node;
using NodeIt = std::list<Node>::iterator;

struct Event {
  Scalar x;
  int kind;      // 0 trap expiry, 1 gap; a trapezoid is gone at its x_right
  Scalar order;  // top to bottom: negated height
  std::uint64_t seq;
  NodeIt node;
};

struct EventLess {
  bool operator()(const Event& a, const Event& b) const {
    if (int c = cmp(a.x, b.x); c != 0) return c < 0;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (int c = cmp(a.order, b.order); c != 0) return c < 0;
    return a.seq < b.seq;
  }
};

using Queue = std::set<Event, EventLess>;

struct Node {
  bool is_gap = true;
  Gap gap;
  std::optional<LatticeIndex> leftmost;
  int trap = -1;
  std::optional<Queue::iterator> event;
};

class Sweep {
 public:
  Sweep(const QueryEngine& engine, const PixelSet& pixels, const SweepOptions& options)
      : engine_(engine), pixels_(pixels), grid_(pixels.grid()), map_(grid_), options_(options) {}

  SampledVisibilityMap run() {
    const QueryCounts before = engine_.counts();
    max_x_ = grid_.origin.x + (grid_.width - 1) * grid_.dx;
    status_.push_back(Node{true, Gap{grid_.origin.x, std::nullopt, std::nullopt}, {}, -1, {}});
    ++svm_.stats.gaps_created;
    schedule_gap(status_.begin());

    while (!queue_.empty()) {
      const Event ev = *queue_.begin();
      queue_.erase(queue_.begin());
      ev.node->event.reset();
      ++svm_.stats.events_processed;
      if (ev.kind == 1) {
        ++svm_.stats.gap_events;
        on_gap_event(ev.node);
      } else {
        ++svm_.stats.trap_expiries;
        on_trap_expiry(ev.node, ev.x);
      }
      if (options_.check_invariants) check_alternation();
    }

    std::set<TrapKey, TrapKeyLess> keys;
    for (const auto& t : svm_.trapezoids) {
      if (!keys.insert(key_of(t)).second) throw InternalError("sweep emitted a trapezoid twice");
    }
    sort_canonical(svm_.trapezoids);
    auto& s = svm_.stats;
    s.n = engine_.scene().size();
    s.p = pixels_.size();
    s.t = svm_.trapezoids.size();
    const QueryCounts after = engine_.counts();
    s.queries.ray_shoot = after.ray_shoot - before.ray_shoot;
    s.queries.drag_vertical = after.drag_vertical - before.drag_vertical;
    s.queries.drag_oblique = after.drag_oblique - before.drag_oblique;
    s.queries.max_blocking_vertex = after.max_blocking_vertex - before.max_blocking_vertex;
    s.queries.pixels_in_trapezoid = after.pixels_in_trapezoid - before.pixels_in_trapezoid;
    return std::move(svm_);
  }

 private:
  void schedule_gap(NodeIt node) {
    ++svm_.stats.lattice_queries;
    node->leftmost = gap_leftmost_pixel(node->gap, grid_);
    if (!node->leftmost) return;
    const Point2 p = map_.pixel_at(node->leftmost->i, node->leftmost->j);
    node->event = queue_.insert(Event{p.x, 1, -p.y, seq_++, node}).first;
  }

  void schedule_trap(NodeIt node) {
    const Trapezoid& t = svm_.trapezoids[node->trap];
    if (t.x_right > max_x_) return;  // outlives the grid
    const Scalar mid = (t.top.y_at(t.x_right) + t.bottom.y_at(t.x_right)) / 2;
    node->event = queue_.insert(Event{t.x_right, 0, -mid, seq_++, node}).first;
  }

  void cancel(NodeIt node) {
    if (node->event) {
      queue_.erase(*node->event);
      node->event.reset();
    }
  }

  void on_gap_event(NodeIt node) {
    const Point2 pi = map_.pixel_at(node->leftmost->i, node->leftmost->j);
    if (options_.check_invariants) {
      for (const auto& n : status_) {
        if (!n.is_gap && contains(svm_.trapezoids[n.trap], pi)) {
          throw InternalError("gap pixel already covered by a live trapezoid");
        }
      }
    }
    Trapezoid trap = build_trapezoid(pi, engine_);
    ++svm_.stats.build_calls;
    if (!contains(trap, pi)) throw InternalError("gap trapezoid misses its pixel");

    const Gap old = node->gap;
    svm_.trapezoids.push_back(trap);
    const int id = static_cast<int>(svm_.trapezoids.size()) - 1;

    // Above the new trap, the trap itself, then the old node becomes the gap below.
    NodeIt above = status_.insert(node, Node{true, Gap{pi.x, old.upper, trap.top}, {}, -1, {}});
    NodeIt mid = status_.insert(node, Node{false, {}, {}, id, {}});
    node->gap = Gap{pi.x, trap.bottom, old.lower};
    svm_.stats.gaps_created += 2;
    schedule_trap(mid);
    schedule_gap(above);
    schedule_gap(node);
  }

  void on_trap_expiry(NodeIt node, const Scalar& x) {
    if (node == status_.begin() || std::next(node) == status_.end()) {
      throw InternalError("sweep status lost its alternation");
    }
    NodeIt above = std::prev(node);
    NodeIt below = std::next(node);
    cancel(above);
    cancel(below);
    below->gap = Gap{x, above->gap.upper, below->gap.lower};
    status_.erase(above);
    status_.erase(node);
    ++svm_.stats.gaps_created;
    schedule_gap(below);
  }

  void check_alternation() const {
    bool want_gap = true;
    for (const auto& n : status_) {
      if (n.is_gap != want_gap) throw InternalError("sweep status does not alternate");
      want_gap = !want_gap;
    }
    if (want_gap) throw InternalError("sweep status must end with a gap");
  }

  const QueryEngine& engine_;
  const PixelSet& pixels_;
  const GridSpec& grid_;
  LatticeMap map_;
  SweepOptions options_;
  Scalar max_x_;
  std::list<Node> status_;
  Queue queue_;
  std::uint64_t seq_ = 0;
  SampledVisibilityMap svm_;
};

}  // namespace

SampledVisibilityMap sweep_build(const QueryEngine& engine, const PixelSet& pixels,
                                 const SweepOptions& options) {
  if (!pixels.is_grid()) throw PreconditionError("sweep requires a grid pixel set");
  return Sweep(engine, pixels, options).run();
}

}  // namespace sampvis
