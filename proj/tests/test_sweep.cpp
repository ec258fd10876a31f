#include <doctest.h>

#include <random>

#include "sampvis/builder.hpp"
#include "sampvis/oracle.hpp"
#include "sampvis/sweepline.hpp"
#include "support.hpp"

using namespace sampvis;
using namespace sampvis::test;

namespace {

std::optional<LatticeIndex> brute_leftmost(const Gap& gap, const GridSpec& g) {
  const PixelSet px(g);
  for (int i = 0; i < g.width; ++i) {
    for (int j = 0; j < g.height; ++j) {
      const Point2 q = px.point(static_cast<std::size_t>(j) * g.width + i);
      if (q.x < gap.left_x) continue;
      if (gap.lower && gap.lower->side(q) < 0) continue;
      if (gap.upper && gap.upper->side(q) >= 0) continue;
      return LatticeIndex{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("S1: one gap event, one trapezoid") {
  const Scene s = scene_s1();
  const auto e = make_engine(EngineKind::Accelerated, s);
  const auto m = sweep_build(*e, centered_grid(16), SweepOptions{true});
  CHECK(m.stats.t == 1);
  CHECK(m.stats.gap_events == 1);
  CHECK(m.stats.trap_expiries == 0);
  CHECK(m.stats.events_processed == 1);
  CHECK(m.stats.build_calls == 1);
}

TEST_CASE("S2: sweep equals offline") {
  const Scene s = scene_s2(box(-1, -1, 10, 10));
  const PixelSet px = unit_grid(0, 0, 10, 10);
  for (auto kind : {EngineKind::Baseline, EngineKind::Accelerated}) {
    const auto e = make_engine(kind, s);
    const auto off = build_svm_offline(*e, px);
    const auto sw = sweep_build(*e, px, SweepOptions{true});
    const SvmDiff d = compare_svm(off.trapezoids, sw.trapezoids);
    CHECK_MESSAGE(d.empty(), d.report());
    CHECK(sw.stats.build_calls == sw.stats.t);
    CHECK(sw.stats.gaps_created <= 3 * sw.stats.t + 1);
  }
}

TEST_CASE("single-column grid") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Scene s = layers(10, seed);
    const PixelSet px(grid(S("37/5"), S("1/8"), Scalar(1), S("1/4"), 1, 63));
    const auto e = make_engine(EngineKind::Accelerated, s);
    const auto off = build_svm_offline(*e, px);
    const auto sw = sweep_build(*e, px, SweepOptions{true});
    CHECK(compare_svm(off.trapezoids, sw.trapezoids).empty());
    for (const auto& t : sw.trapezoids) {
      CHECK(t.x_left <= S("37/5"));
      CHECK(S("37/5") < t.x_right);
    }
  }
}

TEST_CASE("sweep on explicit lists is refused") {
  const Scene s = scene_s1();
  const auto e = make_engine(EngineKind::Accelerated, s);
  CHECK_THROWS_AS(sweep_build(*e, PixelSet(std::vector<Point2>{P(1, 1)})), PreconditionError);
}

TEST_CASE("gap_leftmost_pixel examples") {
  const GridSpec g = grid(Scalar(0), Scalar(0), Scalar(1), Scalar(1), 8, 8);
  const Gap band{Scalar(0), Line2::horizontal(S("5/2")), Line2::horizontal(S("3/2"))};
  const auto hit = gap_leftmost_pixel(band, g);
  REQUIRE(hit);
  CHECK(*hit == LatticeIndex{0, 2});
  const Gap empty{Scalar(0), Line2::horizontal(S("9/5")), Line2::horizontal(S("6/5"))};
  CHECK_FALSE(gap_leftmost_pixel(empty, g));
  const Gap whole{S("7/2"), std::nullopt, std::nullopt};
  CHECK(*gap_leftmost_pixel(whole, g) == LatticeIndex{4, 0});
  const Gap past{Scalar(8), std::nullopt, std::nullopt};
  CHECK_FALSE(gap_leftmost_pixel(past, g));
}

TEST_CASE("gap_leftmost_pixel equals a grid scan on random wedges") {
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 1500; ++rep) {
    const GridSpec g = grid(random_scalar(rng, -3, 3, 7), random_scalar(rng, -3, 3, 5),
                            random_scalar(rng, 1, 3, 4), random_scalar(rng, 1, 3, 6),
                            1 + static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 20));
    Gap gap{random_scalar(rng, -4, 30, 9), std::nullopt, std::nullopt};
    auto random_line = [&]() {
      return Line2::from_slope(random_scalar(rng, -3, 3, 7), random_scalar(rng, -10, 40, 11));
    };
    if (rep % 4 != 0) gap.upper = random_line();
    if (rep % 4 != 1) gap.lower = random_line();
    if (rep % 7 == 0 && gap.upper && gap.lower) {
      // thin sliver along the upper line
      gap.lower = Line2::from_slope(gap.upper->slope(), Scalar(gap.upper->c() - frac(1, 50)));
    }
    CHECK(gap_leftmost_pixel(gap, g) == brute_leftmost(gap, g));
  }
}

TEST_CASE("random scenes: sweep equals the reference, checked after every event") {
  for (std::uint64_t seed = 1; seed <= 14; ++seed) {
    const Family fam = seed % 3 == 0 ? Family::Fence : seed % 3 == 1 ? Family::Layers : Family::BoundaryClutter;
    const Scene s = layers(static_cast<int>(4 + seed), seed, fam);
    const PixelSet px = centered_grid(seed % 2 ? 16 : 24);
    const auto e = make_engine(EngineKind::Accelerated, s);
    const auto ref = reference_svm(s, px);
    const auto sw = sweep_build(*e, px, SweepOptions{true});
    const SvmDiff d = compare_svm(ref.trapezoids, sw.trapezoids);
    CHECK_MESSAGE(d.empty(), "seed ", seed, " ", d.summary());
    CHECK(sw.stats.build_calls == sw.stats.t);
    CHECK(sw.stats.gaps_created <= 3 * sw.stats.t + 1);

    // replay: rebuilding from any covered pixel reproduces the emitted cell
    const auto owner = assign_pixels(sw.trapezoids, px);
    std::vector<bool> done(sw.trapezoids.size(), false);
    for (std::size_t k = 0; k < owner.size(); ++k) {
      if (owner[k] < 0 || done[owner[k]]) continue;
      done[owner[k]] = true;
      const Trapezoid again = build_trapezoid(px.point(k), *e);
      CHECK(same_geometry(again, sw.trapezoids[owner[k]]));
    }
  }
}

TEST_CASE("grids aligned with scene coordinates") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenerateParams p;
    p.n = 8;
    p.seed = seed;
    p.denominator = 2;
    const Scene s = generate_scene(p);
    const PixelSet px(grid(Scalar(0), Scalar(0), S("1/2"), S("1/2"), 32, 32));
    const auto e = make_engine(EngineKind::Accelerated, s);
    const auto ref = reference_svm(s, px);
    CHECK_MESSAGE(compare_svm(ref.trapezoids, sweep_build(*e, px, SweepOptions{true}).trapezoids).empty(),
                  "seed ", seed);
  }
}
