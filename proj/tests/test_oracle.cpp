#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sampvis/oracle.hpp"
#include "sampvis/query_engine.hpp"
#include "support.hpp"

using namespace sampvis;
using namespace sampvis::test;

namespace {

std::size_t cells_of(const std::vector<Trapezoid>& cells, int id) {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [&](const Trapezoid& t) { return t.triangle_id == id; }));
}

// Three nested horizontal occluders inside [0,10]^2.
Scene nested() {
  Scene s;
  s.triangles.push_back(flat(0, 10, P(1, 1), P(9, 1), P(1, 9)));
  s.triangles.push_back(flat(1, 5, P(2, 2), P(6, 2), P(2, 6)));
  s.triangles.push_back(flat(2, 1, P(3, 3), P(4, 3), P(3, 4)));
  s.viewport = box(0, 0, 10, 10);
  return s;
}

}  // namespace

TEST_CASE("raycast examples") {
  const Scene s1 = scene_s1();
  const auto img = raycast_image(s1, centered_grid(8));
  CHECK(std::all_of(img.begin(), img.end(), [](int id) { return id == 0; }));

  const Scene s2 = scene_s2();
  CHECK(raycast_point(s2, P(3, 3)) == 1);
  CHECK(raycast_point(s2, P(15, 1)) == 0);
  CHECK(raycast_point(s2, P(30, 30)) == kBackgroundId);
  // perturbed point: on T1's bottom edge is inside T1, on its left edge too
  CHECK(raycast_point(s2, P(3, 2)) == 1);
  CHECK(raycast_point(s2, P(2, 3)) == 1);
  // on the hypotenuse the point is pushed outside
  CHECK(raycast_point(s2, P(4, 4)) == 0);
}

TEST_CASE("raycast matches ray_shoot pixelwise") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scene s = layers(15, seed, seed % 2 ? Family::Layers : Family::Fence);
    const PixelSet px = centered_grid(24);
    const auto img = raycast_image(s, px);
    const auto e = make_engine(EngineKind::Baseline, s);
    for (std::size_t k = 0; k < px.size(); ++k) REQUIRE(img[k] == e->ray_shoot(px.point(k)).triangle_id);
  }
}

TEST_CASE("S1 map: one face, four corners") {
  const VisMap vm = analytic_vismap(scene_s1());
  CHECK(vm.face_count == 1);
  CHECK(vm.vertex_count() == 4);
  const auto decomp = analytic_trap_decomp(vm);
  REQUIRE(decomp.size() == 1);
  CHECK(decomp[0].triangle_id == 0);
  CHECK(reference_svm(scene_s1(), centered_grid(5)).stats.t == 1);
  CHECK(reference_svm(scene_s1(), PixelSet(std::vector<Point2>{P(3, 3)})).stats.t == 1);
}

TEST_CASE("S2 map: background, T0 and T1") {
  const Scene s = scene_s2();
  const VisMap vm = analytic_vismap(s);
  CHECK(vm.face_count == 3);
  // T0's three corners, T1's three, the viewport's four
  CHECK(vm.vertex_count() == 10);
  const auto decomp = analytic_trap_decomp(vm);
  std::set<int> labels;
  for (const auto& t : decomp) labels.insert(t.triangle_id);
  CHECK(labels == std::set<int>{kBackgroundId, 0, 1});
  CHECK(cells_of(decomp, 1) == 1);
  CHECK(decomp.size() <= 2 * vm.vertex_count());
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 500; ++rep) {
    const Point2 q = random_point(rng, s.view());
    CHECK(vm.label_at(q) == raycast_point(s, q));
  }
}

TEST_CASE("nested occluders") {
  const Scene s = nested();
  const VisMap vm = analytic_vismap(s);
  CHECK(vm.face_count == 4);
  CHECK(vm.vertex_count() == 13);
  CHECK(vm.label_at(Point2{S("1/2"), S("1/2")}) == kBackgroundId);
  CHECK(vm.label_at(Point2{Scalar(7), S("3/2")}) == 0);
  CHECK(vm.label_at(Point2{Scalar(5), S("5/2")}) == 1);
  CHECK(vm.label_at(Point2{S("16/5"), S("16/5")}) == 2);
  const auto decomp = analytic_trap_decomp(vm);
  CHECK(cells_of(decomp, 2) == 1);
  CHECK(decomp.size() <= 2 * vm.vertex_count());
}

TEST_CASE("a face corner pointing into the background splits it at that abscissa") {
  Scene s;
  s.triangles.push_back(flat(0, 4, P(-1, 0), P(5, 5), P(-1, 10)));
  s.viewport = box(0, 0, 10, 10);
  const VisMap vm = analytic_vismap(s);
  CHECK(vm.face_count == 2);
  const auto decomp = analytic_trap_decomp(vm);
  CHECK(cells_of(decomp, 0) == 1);
  CHECK(cells_of(decomp, kBackgroundId) == 3);
  for (const auto& t : decomp) {
    const bool at_tip = t.x_left == 5 || t.x_right == 5;
    CHECK(at_tip);
  }
}

TEST_CASE("reference_svm filters cells without pixels") {
  const Scene s = scene_s2(box(-1, -1, 10, 10));
  const auto decomp = analytic_trap_decomp(analytic_vismap(s));
  // one pixel far from T1 misses most cells
  const auto ref = reference_svm(decomp, PixelSet(std::vector<Point2>{P(8, 8)}));
  CHECK(ref.stats.t == 1);
  CHECK(ref.stats.t < decomp.size());
  CHECK(ref.trapezoids[0].triangle_id == 0);
}

TEST_CASE("compare_svm") {
  const Scene s = scene_s2(box(-1, -1, 10, 10));
  const auto ref = reference_svm(s, unit_grid(0, 0, 10, 10));
  CHECK(compare_svm(ref.trapezoids, ref.trapezoids).empty());
  auto fewer = ref.trapezoids;
  fewer.erase(fewer.begin() + 1);
  const SvmDiff d = compare_svm(ref.trapezoids, fewer);
  CHECK(d.missing.size() == 1);
  CHECK(d.extra.empty());
  CHECK(d.summary() == "missing=1 extra=0 mismatched=0");
  auto relabel = ref.trapezoids;
  relabel[0].triangle_id = 99;
  CHECK(compare_svm(ref.trapezoids, relabel).mismatched.size() == 1);
}

TEST_CASE("budget") {
  OracleOptions tight;
  tight.max_triangles = 3;
  CHECK_THROWS_AS(analytic_vismap(layers(5, 1), tight), BudgetExceeded);
}

TEST_CASE("random scenes: faces and cells partition the viewport") {
  std::mt19937_64 rng(72);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Family fam = seed % 3 == 0 ? Family::Fence : seed % 3 == 1 ? Family::Layers : Family::BoundaryClutter;
    const Scene s = layers(static_cast<int>(5 + seed), seed, fam);
    const VisMap vm = analytic_vismap(s);
    const auto decomp = analytic_trap_decomp(vm);
    CHECK(decomp.size() <= 2 * vm.vertex_count());
    for (int rep = 0; rep < 200; ++rep) {
      const Point2 q = random_point(rng, s.view(), rep % 2 ? 64 : 89);
      const int label = raycast_point(s, q);
      CHECK(vm.label_at(q) == label);
      int owners = 0;
      for (const auto& t : decomp) {
        if (contains(t, q)) {
          ++owners;
          CHECK(t.triangle_id == label);
        }
      }
      CHECK(owners == 1);
    }
  }
}
