#include <doctest.h>

#include <random>

#include "sampvis/scene.hpp"
#include "support.hpp"

using namespace sampvis;
using namespace sampvis::test;

TEST_CASE("load a one-triangle scene") {
  const Scene s = load_scene("# comment\nt 0 0 1  4 0 1  0 4 2\nviewport -1 -1 5 5\n");
  CHECK(s.size() == 1);
  CHECK(s.triangles[0].id == 0);
  CHECK(s.triangles[0].v[2] == Point3{0, 4, 2});
  REQUIRE(s.viewport);
  CHECK(*s.viewport == box(-1, -1, 5, 5));
  CHECK(s.background_z() == 3);
}

TEST_CASE("scene load errors") {
  try {
    load_scene("t 0 0 1 4 0 0 0 4 2\n");
    FAIL("expected an error");
  } catch (const SceneError& e) {
    CHECK(std::string(e.what()).find("nonpositive z") != std::string::npos);
  }
  CHECK_THROWS_AS(load_scene("t 0 0 1 1 1 1 2 2 1\n"), SceneError);
  CHECK_THROWS_AS(load_scene("t 0 0 1 4 0 1\n"), ParseError);
  CHECK_THROWS_AS(load_scene("viewport 0 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(load_scene("quad 0 0\n"), ParseError);
  try {
    load_scene("t 0 0 1 4 0 1 0 4 1\nt 1 x 1 4 0 1 0 4 1\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

namespace {

// Does segment ab cross the closed triangle t (exact, via the plane)?
bool segment_hits_triangle(const Point3& a, const Point3& b, const Triangle& t) {
  const int sa = orient3d(t.v[0], t.v[1], t.v[2], a);
  const int sb = orient3d(t.v[0], t.v[1], t.v[2], b);
  if (sa == sb || sa == 0 || sb == 0) return false;
  const Plane pl = t.plane();
  const Scalar da = Scalar(a.z - pl.z_at(a.x, a.y));
  const Scalar db = Scalar(b.z - pl.z_at(b.x, b.y));
  const Scalar s = Scalar(da / (da - db));
  const Point2 hit{Scalar(a.x + s * (b.x - a.x)), Scalar(a.y + s * (b.y - a.y))};
  return point_in_projected_triangle(hit, t) == Containment::Inside;
}

}  // namespace

TEST_CASE("interpenetrating triangles are rejected with both ids") {
  const std::string text =
      "t 0 0 5  10 0 5  0 10 5\n"
      "t 2 2 1  3 2 9  2 3 9\n";
  const Scene raw = load_scene(text, LoadOptions{false});
  REQUIRE(raw.size() == 2);
  bool crossing = false;
  for (int k = 0; k < 3; ++k) {
    const Edge3 e = triangle_edge(raw.triangles[1], k);
    crossing = crossing || segment_hits_triangle(e.a, e.b, raw.triangles[0]);
  }
  REQUIRE(crossing);

  try {
    load_scene(text);
    FAIL("expected an error");
  } catch (const SceneError& e) {
    CHECK(e.ids() == std::vector<int>{0, 1});
    const std::string msg = e.what();
    CHECK(msg.find('0') != std::string::npos);
    CHECK(msg.find('1') != std::string::npos);
  }
}

TEST_CASE("validate_disjoint") {
  Scene s;
  s.triangles.push_back(flat(0, 5, P(0, 0), P(4, 0), P(0, 4)));
  s.triangles.push_back(flat(1, 10, P(0, 0), P(4, 0), P(0, 4)));
  CHECK_FALSE(validate_disjoint(s));

  Scene twin;
  twin.triangles.push_back(flat(0, 5, P(0, 0), P(4, 0), P(0, 4)));
  twin.triangles.push_back(flat(1, 5, P(0, 0), P(4, 0), P(0, 4)));
  const auto bad = validate_disjoint(twin);
  REQUIRE(bad);
  CHECK(*bad == std::pair<int, int>{0, 1});

  // sharing a single vertex is allowed
  Scene touch;
  touch.triangles.push_back(flat(0, 5, P(0, 0), P(4, 0), P(0, 4)));
  touch.triangles.push_back(Triangle{1, {Point3{4, 0, 5}, Point3{8, 0, 9}, Point3{8, 4, 9}}});
  CHECK_FALSE(validate_disjoint(touch));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK_FALSE(validate_disjoint(layers(20, seed)));
    CHECK_FALSE(validate_disjoint(layers(12, seed, Family::Fence)));
    CHECK_FALSE(validate_disjoint(layers(12, seed, Family::BoundaryClutter)));
  }
}

TEST_CASE("serialized scenes reload identically") {
  const Scene s = layers(15, 4);
  const Scene back = load_scene(serialize_scene(s));
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int k = 0; k < 3; ++k) CHECK(back.triangles[i].v[k] == s.triangles[i].v[k]);
  }
  CHECK(*back.viewport == *s.viewport);
}

TEST_CASE("grid pixel_at and locate_pixel") {
  const LatticeMap unit(grid(Scalar(0), Scalar(0), Scalar(1), Scalar(1), 8, 8));
  CHECK(unit.pixel_at(3, 2) == P(3, 2));
  CHECK_FALSE(unit.locate_pixel(Point2{S("13/10"), Scalar(0)}));
  CHECK_FALSE(unit.locate_pixel(P(8, 0)));
  CHECK_THROWS_AS(unit.pixel_at(8, 0), std::out_of_range);

  const LatticeMap half(grid(S("1/2"), S("1/2"), Scalar(2), Scalar(2), 4, 4));
  const auto ij = half.locate_pixel(Point2{S("5/2"), S("9/2")});
  REQUIRE(ij);
  CHECK(*ij == LatticeIndex{1, 2});

  const LatticeMap odd(grid(S("-3/7"), S("2/9"), S("5/11"), S("1/3"), 13, 9));
  for (int j = 0; j < 9; ++j) {
    for (int i = 0; i < 13; ++i) {
      const auto back = odd.locate_pixel(odd.pixel_at(i, j));
      REQUIRE(back);
      CHECK(*back == LatticeIndex{i, j});
      CHECK(odd.from_lattice(odd.to_lattice(odd.pixel_at(i, j))) == odd.pixel_at(i, j));
    }
  }
}

TEST_CASE("pixel sets") {
  const PixelSet g = parse_pixels("grid 0 0 1 1 3 2\n");
  REQUIRE(g.is_grid());
  CHECK(g.size() == 6);
  CHECK(g.point(4) == P(1, 1));
  CHECK(g.grid_index(4) == LatticeIndex{1, 1});

  const PixelSet list = parse_pixels("points\n3 1\n1 2\n1 1\n");
  REQUIRE_FALSE(list.is_grid());
  CHECK(list.size() == 3);
  CHECK(list.x_order() == std::vector<std::size_t>{2, 1, 0});
  CHECK(parse_pixels(serialize_pixels(list)).points() == list.points());

  CHECK_THROWS_AS(parse_pixels("points\n1 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_pixels(""), ParseError);
  CHECK_THROWS_AS(parse_pixels("grid 0 0 0 1 3 3\n"), ParseError);
  CHECK_THROWS_AS(parse_pixels("grid 0 0 1 1 3\n"), ParseError);
}

TEST_CASE("viewport resolution") {
  Scene s = scene_s2();
  s.viewport.reset();
  const PixelSet px = unit_grid(0, 0, 4, 3);
  const Viewport vp = resolve_viewport(s, px);
  CHECK(vp == box(-1, -1, 4, 3));
  for (std::size_t k = 0; k < px.size(); ++k) CHECK(vp.contains(px.point(k)));

  Scene tight = scene_s2(box(0, 0, 3, 3));
  CHECK_THROWS_AS(resolve_viewport(tight, px), SceneError);
  CHECK(with_viewport(scene_s2(), px).view() == box(-10, -10, 40, 40));
}
