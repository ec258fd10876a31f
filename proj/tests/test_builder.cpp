#include <doctest.h>

#include <random>

#include "sampvis/builder.hpp"
#include "sampvis/oracle.hpp"
#include "support.hpp"

using namespace sampvis;
using namespace sampvis::test;

namespace {

const Trapezoid* cell_containing(const std::vector<Trapezoid>& cells, const Point2& q) {
  const Trapezoid* found = nullptr;
  for (const auto& c : cells) {
    if (contains(c, q)) {
      if (found) return nullptr;
      found = &c;
    }
  }
  return found;
}

}  // namespace

TEST_CASE("S1: the whole viewport is one cell") {
  const Scene s = scene_s1();
  const auto e = make_engine(EngineKind::Accelerated, s);
  for (const Point2& pi : {P(0, 0), P(7, 3), P(15, 15), Point2{S("31/2"), S("1/3")}}) {
    const Trapezoid t = build_trapezoid(pi, *e);
    CHECK(t.triangle_id == 0);
    CHECK(t.x_left == 0);
    CHECK(t.x_right == 16);
    CHECK(t.top == Line2::horizontal(Scalar(16)));
    CHECK(t.bottom == Line2::horizontal(Scalar(0)));
    CHECK(t.provenance.left == WallCause::Viewport);
    CHECK(t.provenance.right == WallCause::Viewport);
    CHECK(t.provenance.top.kind == BoundaryKind::ViewportWall);
    CHECK(t.provenance.bottom.kind == BoundaryKind::ViewportWall);
  }
}

TEST_CASE("S2: trapezoid under T1") {
  const Scene s = scene_s2();
  for (auto kind : {EngineKind::Baseline, EngineKind::Accelerated}) {
    const auto e = make_engine(kind, s);
    BuildTrace trace;
    const Trapezoid t = build_trapezoid(P(3, 1), *e, &trace);
    CHECK(t.triangle_id == 0);
    CHECK(t.x_left == 2);
    CHECK(t.x_right == 6);
    CHECK(t.top == Line2::horizontal(Scalar(2)));
    CHECK(t.bottom == Line2::horizontal(Scalar(-5)));
    CHECK(t.provenance.top.kind == BoundaryKind::Curtain);
    CHECK(t.provenance.top.triangle_id == 1);
    CHECK(t.provenance.bottom.kind == BoundaryKind::OwnEdge);
    CHECK(t.provenance.bottom.triangle_id == 0);
    CHECK(trace.hit.triangle_id == 0);
    CHECK(trace.top_left.x == 2);
    CHECK(trace.top_right.x == 6);

    const QueryCounts c = e->counts();
    CHECK(c.ray_shoot == 1);
    CHECK(c.drag_vertical == 2);
    CHECK(c.drag_oblique == 4);
    CHECK(c.max_blocking_vertex == 2);
  }

  const auto decomp = analytic_trap_decomp(analytic_vismap(s));
  const Trapezoid* ref = cell_containing(decomp, P(3, 1));
  REQUIRE(ref);
  const auto e = make_engine(EngineKind::Accelerated, s);
  CHECK(same_geometry(*ref, build_trapezoid(P(3, 1), *e)));
  CHECK(ref->triangle_id == 0);
}

TEST_CASE("a point on the top line belongs to the cell above") {
  const Scene s = scene_s2();
  const auto e = make_engine(EngineKind::Accelerated, s);
  const Trapezoid below = build_trapezoid(P(3, 1), *e);
  CHECK_FALSE(contains(below, P(3, 2)));
  const Trapezoid above = build_trapezoid(P(3, 2), *e);
  CHECK(contains(above, P(3, 2)));
  CHECK(above.triangle_id == 1);
  CHECK(above.bottom == below.top);

  // the right wall belongs to the neighbour
  CHECK_FALSE(contains(below, P(6, 1)));
  const Trapezoid right = build_trapezoid(P(6, 1), *e);
  CHECK(contains(right, P(6, 1)));
  CHECK(right.x_left == 6);
}

TEST_CASE("random pixels: build_trapezoid equals the oracle cell") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Family fam = seed % 3 == 0 ? Family::Fence : seed % 3 == 1 ? Family::Layers : Family::BoundaryClutter;
    const Scene s = layers(static_cast<int>(4 + seed % 13), seed, fam);
    const auto decomp = analytic_trap_decomp(analytic_vismap(s));
    const auto e = make_engine(EngineKind::Accelerated, s);
    for (int rep = 0; rep < 30; ++rep) {
      const Point2 q = random_point(rng, s.view(), rep % 2 ? 64 : 101);
      const Trapezoid* ref = cell_containing(decomp, q);
      REQUIRE(ref);
      const Trapezoid got = build_trapezoid(q, *e);
      CHECK_MESSAGE(same_geometry(*ref, got), "seed ", seed, " q ", to_string(q.x), " ", to_string(q.y));
      CHECK(ref->triangle_id == got.triangle_id);
    }
  }
}

TEST_CASE("every oracle cell is rebuilt from its own witness") {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const Scene s = layers(10, seed);
    const auto decomp = analytic_trap_decomp(analytic_vismap(s));
    const auto e = make_engine(EngineKind::Baseline, s);
    for (const auto& cell : decomp) {
      const Scalar x = Scalar((cell.x_left + cell.x_right) / 2);
      const Scalar y = Scalar((cell.top.y_at(x) + cell.bottom.y_at(x)) / 2);
      const Trapezoid got = build_trapezoid({x, y}, *e);
      CHECK(same_geometry(cell, got));
      CHECK(cell.triangle_id == got.triangle_id);
    }
  }
}
