#include "sampvis/builder.hpp"

namespace sampvis {

namespace {

WallCause stop_cause(const EdgeStop& stop, WallCause edge_cause) {
  return stop.cause == StopCause::ViewportWall ? WallCause::Viewport : edge_cause;
}

}  // namespace

Trapezoid build_trapezoid(const Point2& pi, const QueryEngine& engine, BuildTrace* trace) {
  if (!engine.viewport().contains(pi)) throw PreconditionError("pixel outside the viewport");

  const HitRecord hit = engine.ray_shoot(pi);
  Boundary top = engine.drag_vertical(pi, hit, VDir::Up);
  Boundary bottom = engine.drag_vertical(pi, hit, VDir::Down);

  const EdgeStop tl = engine.drag_oblique(top, pi.x, HDir::Left);
  const EdgeStop tr = engine.drag_oblique(top, pi.x, HDir::Right);
  const EdgeStop bl = engine.drag_oblique(bottom, pi.x, HDir::Left);
  const EdgeStop br = engine.drag_oblique(bottom, pi.x, HDir::Right);

  Trapezoid trap;
  trap.triangle_id = hit.triangle_id;
  trap.top = top.line;
  trap.bottom = bottom.line;
  trap.provenance.top = top.ref();
  trap.provenance.bottom = bottom.ref();

  // Walls from the edge stops; the top wins ties.
  if (tl.x >= bl.x) {
    trap.x_left = tl.x;
    trap.provenance.left = stop_cause(tl, WallCause::TopStop);
  } else {
    trap.x_left = bl.x;
    trap.provenance.left = stop_cause(bl, WallCause::BottomStop);
  }
  if (tr.x <= br.x) {
    trap.x_right = tr.x;
    trap.provenance.right = stop_cause(tr, WallCause::TopStop);
  } else {
    trap.x_right = br.x;
    trap.provenance.right = stop_cause(br, WallCause::BottomStop);
  }

  const Plane& front = engine.surface_plane(hit.triangle_id);
  const auto lv = engine.max_blocking_vertex(
      Beam{trap.x_left, pi.x, true, top.line, bottom.line, front}, HDir::Left);
  const auto rv = engine.max_blocking_vertex(
      Beam{pi.x, trap.x_right, false, top.line, bottom.line, front}, HDir::Right);
  if (lv) {
    trap.x_left = lv->x;
    trap.provenance.left = WallCause::BlockingVertex;
  }
  if (rv) {
    trap.x_right = rv->x;
    trap.provenance.right = WallCause::BlockingVertex;
  }

  if (!(trap.x_left < trap.x_right)) throw InternalError("zero-width trapezoid");
  if (!contains(trap, pi)) throw InternalError("constructed trapezoid misses its pixel");

  if (trace) {
    *trace = BuildTrace{hit, std::move(top), std::move(bottom), tl, tr, bl, br, lv, rv};
  }
  return trap;
}

}  // namespace sampvis
