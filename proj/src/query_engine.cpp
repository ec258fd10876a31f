#include "sampvis/query_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace sampvis {

namespace {

// Orientation of (a, b, q_eps) with q_eps = (x + eps^2, y + eps).
int orient_eps(const Point2& a, const Point2& b, const Point2& q) {
  const Scalar dx = b.x - a.x;
  const Scalar dy = b.y - a.y;
  if (int s = sgn(dx * (q.y - a.y) - dy * (q.x - a.x)); s != 0) return s;
  if (int s = sgn(dx); s != 0) return s;
  return -sgn(dy);
}

// Sign of (p.z - q.z) at the perturbed point.
int depth_cmp_eps(const Plane& p, const Plane& q, const Point2& at) {
  if (int c = cmp(p.z_at(at), q.z_at(at)); c != 0) return c;
  if (int c = cmp(p.b, q.b); c != 0) return c;
  return cmp(p.a, q.a);
}

int kind_rank(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::OwnEdge: return 0;
    case BoundaryKind::Curtain: return 1;
    case BoundaryKind::ViewportWall: return 2;
  }
  return 3;
}

int cause_rank(StopCause c) {
  switch (c) {
    case StopCause::Endpoint: return 0;
    case StopCause::Crossing: return 1;
    case StopCause::ViewportWall: return 2;
  }
  return 3;
}

bool same_edge(const Edge3& a, const Edge3& b) { return a.owner == b.owner && a.index == b.index; }

}  // namespace

BoundaryRef Boundary::ref() const {
  BoundaryRef r;
  r.kind = kind;
  if (source) {
    r.triangle_id = source->owner;
    r.edge_index = source->index;
  } else {
    r.side = side;
  }
  return r;
}

bool operator==(const Boundary& a, const Boundary& b) {
  return a.ref() == b.ref() && a.line == b.line && a.crossing_y == b.crossing_y &&
         a.is_top == b.is_top && a.surface_id == b.surface_id;
}

bool operator==(const EdgeStop& a, const EdgeStop& b) {
  if (a.x != b.x || a.cause != b.cause) return false;
  if (a.vertex.has_value() != b.vertex.has_value()) return false;
  if (a.vertex && !(*a.vertex == *b.vertex)) return false;
  if (a.edge.has_value() != b.edge.has_value()) return false;
  if (a.edge && !same_edge(*a.edge, *b.edge)) return false;
  return true;
}

QueryEngine::QueryEngine(const Scene& scene) : scene_(scene) {
  scene_.view();  // throws when unresolved
  for (std::size_t i = 0; i < scene_.triangles.size(); ++i) {
    const Triangle& t = scene_.triangles[i];
    if (t.id != static_cast<int>(i)) throw PreconditionError("triangle ids must equal their index");
    planes_.push_back(t.plane());
    orientation_.push_back(t.projected_orientation());
    for (int k = 0; k < 3; ++k) {
      EdgeInfo e;
      e.edge = triangle_edge(t, k);
      e.lo = e.edge.a;
      e.hi = e.edge.b;
      if (lex_less(e.hi.xy(), e.lo.xy())) std::swap(e.lo, e.hi);
      e.vertical = e.lo.x == e.hi.x;
      e.line = Line2::through(e.lo.xy(), e.hi.xy());
      if (!e.vertical) e.dzdx = (e.hi.z - e.lo.z) / (e.hi.x - e.lo.x);
      edges_.push_back(std::move(e));
      vertices_.push_back({t.v[k], static_cast<int>(i), k});
    }
  }
  background_ = Plane{0, 0, scene_.background_z()};
}

const Plane& QueryEngine::surface_plane(int triangle_id) const {
  if (triangle_id == kBackgroundId) return background_;
  return planes_.at(static_cast<std::size_t>(triangle_id));
}

QueryCounts QueryEngine::counts() const {
  QueryCounts c;
  c.ray_shoot = n_ray_shoot_.load();
  c.drag_vertical = n_drag_vertical_.load();
  c.drag_oblique = n_drag_oblique_.load();
  c.max_blocking_vertex = n_blocking_.load();
  c.pixels_in_trapezoid = n_pixels_.load();
  return c;
}

void QueryEngine::reset_counts() {
  n_ray_shoot_ = 0;
  n_drag_vertical_ = 0;
  n_drag_oblique_ = 0;
  n_blocking_ = 0;
  n_pixels_ = 0;
}

HitRecord QueryEngine::ray_shoot(const Point2& pi) const {
  ++n_ray_shoot_;
  int best = -1;
  for (int ti : triangles_near(pi.x)) {
    const Triangle& t = scene_.triangles[ti];
    const int o = orientation_[ti];
    bool inside = true;
    for (int k = 0; k < 3 && inside; ++k) {
      inside = orient_eps(t.v[k].xy(), t.v[(k + 1) % 3].xy(), pi) * o > 0;
    }
    if (!inside) continue;
    if (best < 0) {
      best = ti;
      continue;
    }
    const int c = depth_cmp_eps(planes_[ti], planes_[best], pi);
    if (c < 0 || (c == 0 && ti < best)) best = ti;
  }
  if (best < 0) return {kBackgroundId, background_.c};
  return {best, planes_[best].z_at(pi)};
}

Boundary QueryEngine::drag_vertical(const Point2& pi, const HitRecord& hit, VDir dir) const {
  ++n_drag_vertical_;
  const Viewport& vp = viewport();
  const Plane& surface = surface_plane(hit.triangle_id);
  const bool up = dir == VDir::Up;

  Boundary best;
  best.kind = BoundaryKind::ViewportWall;
  best.side = up ? ViewportSide::Top : ViewportSide::Bottom;
  best.line = Line2::horizontal(up ? vp.ymax : vp.ymin);
  best.crossing_y = up ? vp.ymax : vp.ymin;
  Scalar best_slope = 0;

  // Nearer means smaller (y, slope) going up and larger going down.
  auto nearer = [&](const Scalar& y, const Scalar& m) {
    int c = cmp(y, best.crossing_y);
    if (c == 0) c = cmp(m, best_slope);
    return up ? c : -c;
  };

  for (int ei : edges_near(pi.x)) {
    const EdgeInfo& e = edges_[ei];
    if (e.vertical || !(e.lo.x <= pi.x && pi.x < e.hi.x)) continue;
    Scalar y = e.line.y_at(pi.x);
    if (up ? !(y > pi.y) : !(y <= pi.y)) continue;
    const Scalar m = e.line.slope();
    const bool own = hit.triangle_id != kBackgroundId && e.edge.owner == hit.triangle_id;
    if (!own) {
      const Scalar ze = e.lo.z + e.dzdx * (pi.x - e.lo.x);
      const int c = cmp(ze, surface.z_at(pi.x, y));
      if (c > 0 || (c == 0 && e.dzdx > surface.a + surface.b * m)) continue;
    }
    const BoundaryKind kind = own ? BoundaryKind::OwnEdge : BoundaryKind::Curtain;
    int c = nearer(y, m);
    if (c == 0) c = kind_rank(kind) - kind_rank(best.kind);
    if (c == 0 && best.source) {
      c = e.edge.owner != best.source->owner ? e.edge.owner - best.source->owner
                                             : e.edge.index - best.source->index;
    }
    if (c < 0) {
      best.kind = kind;
      best.source = e.edge;
      best.line = e.line;
      best.crossing_y = std::move(y);
      best_slope = m;
    }
  }
  best.is_top = up;
  best.surface_id = hit.triangle_id;
  return best;
}

EdgeStop QueryEngine::drag_oblique(const Boundary& b, const Scalar& start_x, HDir dir) const {
  ++n_drag_oblique_;
  const Viewport& vp = viewport();
  const bool left = dir == HDir::Left;

  std::optional<Point3> lo_end, hi_end;
  if (b.source) {
    lo_end = b.source->a;
    hi_end = b.source->b;
    if (lex_less(hi_end->xy(), lo_end->xy())) std::swap(lo_end, hi_end);
    if (!(lo_end->x <= start_x && start_x < hi_end->x)) {
      throw PreconditionError("drag_oblique: start outside the boundary edge's x-span");
    }
  } else if (!(vp.xmin <= start_x && start_x < vp.xmax)) {
    throw PreconditionError("drag_oblique: start outside the viewport");
  }
  if (b.line.is_vertical()) throw PreconditionError("drag_oblique along a vertical line");

  // Limit of the drag: the edge's endpoint or the viewport wall.
  EdgeStop best;
  if (left) {
    best.x = vp.xmin;
    if (lo_end && lo_end->x >= vp.xmin) {
      best.x = lo_end->x;
      best.cause = StopCause::Endpoint;
      best.vertex = lo_end;
    }
  } else {
    best.x = vp.xmax;
    if (hi_end && hi_end->x <= vp.xmax) {
      best.x = hi_end->x;
      best.cause = StopCause::Endpoint;
      best.vertex = hi_end;
    }
  }
  // An edge boundary may leave the viewport through the wall on its own side.
  if (b.source && b.line.slope() != 0) {
    const Scalar& wall_y = b.is_top ? vp.ymax : vp.ymin;
    const int rising = sgn(b.line.slope()) * (left ? -1 : 1);
    if (rising == (b.is_top ? 1 : -1)) {
      const Scalar X = (b.line.c() - wall_y) / b.line.a();
      const bool within = left ? (X <= start_x && X > best.x) : (X > start_x && X < best.x);
      if (within) {
        best.x = X;
        best.cause = StopCause::ViewportWall;
        best.vertex.reset();
      }
    }
  }
  const Scalar range_lo = left ? best.x : start_x;
  const Scalar range_hi = left ? start_x : best.x;

  const Plane& surface = surface_plane(b.surface_id);
  const int face_side = b.is_top ? -1 : 1;

  for (int ei : edges_meeting(range_lo, range_hi)) {
    const EdgeInfo& e = edges_[ei];
    if (b.source && same_edge(e.edge, *b.source)) continue;
    if (b.line.side(e.lo.xy()) != face_side && b.line.side(e.hi.xy()) != face_side) continue;

    Scalar X, Y, ze;
    if (e.vertical) {
      X = e.lo.x;
      Y = b.line.y_at(X);
      if (Y < e.lo.y || Y > e.hi.y) continue;
      ze = e.lo.z + (Y - e.lo.y) / (e.hi.y - e.lo.y) * (e.hi.z - e.lo.z);
    } else {
      auto p = intersect(b.line, e.line);
      if (!p) continue;
      X = std::move(p->x);
      Y = std::move(p->y);
      if (X < e.lo.x || X > e.hi.x) continue;
      ze = e.lo.z + e.dzdx * (X - e.lo.x);
    }
    if (left ? (X < range_lo || X > range_hi) : (X <= range_lo || X > range_hi)) continue;
    const bool own = b.surface_id != kBackgroundId && e.edge.owner == b.surface_id;
    if (!own && ze > surface.z_at(X, Y)) continue;

    int c = cmp(X, best.x);
    if (left) c = -c;
    if (c == 0) c = cause_rank(StopCause::Crossing) - cause_rank(best.cause);
    if (c == 0) {
      c = e.edge.owner != best.edge->owner ? e.edge.owner - best.edge->owner
                                           : e.edge.index - best.edge->index;
    }
    if (c < 0) {
      best.x = std::move(X);
      best.cause = StopCause::Crossing;
      best.vertex.reset();
      best.edge = e.edge;
    }
  }
  return best;
}

bool QueryEngine::beam_admits(const Beam& beam, const VertexInfo& v) const {
  if (!(v.p.x > beam.x_lo)) return false;
  if (beam.hi_inclusive ? v.p.x > beam.x_hi : v.p.x >= beam.x_hi) return false;
  const Point2 q = v.p.xy();
  if (beam.top.side(q) >= 0 || beam.bottom.side(q) <= 0) return false;
  return v.p.z < beam.front.z_at(q);
}

bool QueryEngine::nearer(const VertexInfo& a, const VertexInfo& b, HDir dir) const {
  if (int c = cmp(a.p.x, b.p.x); c != 0) return dir == HDir::Left ? c > 0 : c < 0;
  if (int c = cmp(a.p.y, b.p.y); c != 0) return c > 0;
  const int ia = scene_.triangles[a.tri].id;
  const int ib = scene_.triangles[b.tri].id;
  if (ia != ib) return ia < ib;
  return a.k < b.k;
}

std::optional<BlockingVertex> QueryEngine::max_blocking_vertex(const Beam& beam, HDir dir) const {
  ++n_blocking_;
  const auto found = find_blocking(beam, dir);
  if (!found) return std::nullopt;
  const VertexInfo& v = vertices_[*found];
  return BlockingVertex{v.p.x, v.p, scene_.triangles[v.tri].id, v.k};
}

std::vector<std::size_t> QueryEngine::pixels_in_trapezoid(const Trapezoid& trap,
                                                          const PixelSet& pixels) const {
  ++n_pixels_;
  return pixels_inside(trap, pixels);
}

// --- baseline --------------------------------------------------------------

std::vector<int> BaselineEngine::triangles_near(const Scalar&) const {
  std::vector<int> out(scene().triangles.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<int> BaselineEngine::edges_near(const Scalar&) const {
  std::vector<int> out(edges().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<int> BaselineEngine::edges_meeting(const Scalar&, const Scalar&) const {
  return edges_near(0);
}

std::optional<int> BaselineEngine::find_blocking(const Beam& beam, HDir dir) const {
  std::optional<int> best;
  const auto& vs = vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!beam_admits(beam, vs[i])) continue;
    if (!best || nearer(vs[i], vs[*best], dir)) best = static_cast<int>(i);
  }
  return best;
}

// --- accelerated -----------------------------------------------------------

AcceleratedEngine::AcceleratedEngine(const Scene& scene) : QueryEngine(scene) {
  std::vector<IntervalIndex::Item> tris;
  for (std::size_t i = 0; i < this->scene().triangles.size(); ++i) {
    const Triangle& t = this->scene().triangles[i];
    Scalar lo = t.v[0].x, hi = t.v[0].x;
    for (const auto& p : t.v) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
    tris.push_back({lo, hi, static_cast<int>(i)});
  }
  triangle_index_ = IntervalIndex(std::move(tris));

  std::vector<IntervalIndex::Item> es;
  for (std::size_t i = 0; i < edges().size(); ++i) {
    es.push_back({edges()[i].lo.x, edges()[i].hi.x, static_cast<int>(i)});
  }
  edge_index_ = IntervalIndex(std::move(es));

  vertex_order_.resize(vertices().size());
  for (std::size_t i = 0; i < vertex_order_.size(); ++i) vertex_order_[i] = static_cast<int>(i);
  std::sort(vertex_order_.begin(), vertex_order_.end(), [&](int a, int b) {
    return lex_less(vertices()[a].p.xy(), vertices()[b].p.xy());
  });
}

std::vector<int> AcceleratedEngine::triangles_near(const Scalar& x) const {
  return triangle_index_.stab(x);
}

std::vector<int> AcceleratedEngine::edges_near(const Scalar& x) const { return edge_index_.stab(x); }

std::vector<int> AcceleratedEngine::edges_meeting(const Scalar& lo, const Scalar& hi) const {
  return edge_index_.overlap(lo, hi);
}

std::optional<int> AcceleratedEngine::find_blocking(const Beam& beam, HDir dir) const {
  const auto& vs = vertices();
  auto x_of = [&](int i) -> const Scalar& { return vs[i].p.x; };
  std::optional<int> best;
  if (dir == HDir::Left) {
    // Walk down from the last vertex with x <= x_hi.
    auto it = std::upper_bound(vertex_order_.begin(), vertex_order_.end(), beam.x_hi,
                               [&](const Scalar& x, int i) { return x < x_of(i); });
    while (it != vertex_order_.begin()) {
      --it;
      if (!(x_of(*it) > beam.x_lo)) break;
      if (best && x_of(*it) != x_of(*best)) break;
      if (beam_admits(beam, vs[*it]) && (!best || nearer(vs[*it], vs[*best], dir))) best = *it;
    }
  } else {
    auto it = std::upper_bound(vertex_order_.begin(), vertex_order_.end(), beam.x_lo,
                               [&](const Scalar& x, int i) { return x < x_of(i); });
    for (; it != vertex_order_.end(); ++it) {
      if (beam.hi_inclusive ? x_of(*it) > beam.x_hi : x_of(*it) >= beam.x_hi) break;
      if (best && x_of(*it) != x_of(*best)) break;
      if (beam_admits(beam, vs[*it]) && (!best || nearer(vs[*it], vs[*best], dir))) best = *it;
    }
  }
  return best;
}

std::unique_ptr<QueryEngine> make_engine(EngineKind kind, const Scene& scene) {
  if (kind == EngineKind::Baseline) return std::make_unique<BaselineEngine>(scene);
  return std::make_unique<AcceleratedEngine>(scene);
}

EngineKind parse_engine_kind(const std::string& text) {
  if (text == "baseline") return EngineKind::Baseline;
  if (text == "accel") return EngineKind::Accelerated;
  throw std::invalid_argument("unknown engine '" + text + "' (expected baseline or accel)");
}

}  // namespace sampvis
