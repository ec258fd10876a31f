#include <doctest.h>

#include "sampvis/io.hpp"
#include "sampvis/oracle.hpp"
#include "sampvis/svm_builder.hpp"
#include "support.hpp"

using namespace sampvis;
using namespace sampvis::test;

namespace {

std::size_t count_of(const std::string& text, const std::string& word) {
  std::size_t n = 0;
  for (auto pos = text.find(word); pos != std::string::npos; pos = text.find(word, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("trapezoid files round-trip exactly") {
  const Scene s = layers(14, 5);
  const auto e = make_engine(EngineKind::Accelerated, s);
  const auto m = build_svm_offline(*e, centered_grid(20));
  const std::string text = serialize_trapezoids(m.trapezoids);
  const auto back = parse_trapezoids(text);
  REQUIRE(back.size() == m.trapezoids.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(same_geometry(back[i], m.trapezoids[i]));
    CHECK(back[i].triangle_id == m.trapezoids[i].triangle_id);
    CHECK(back[i].provenance == m.trapezoids[i].provenance);
  }
  CHECK(serialize_trapezoids(back) == text);
}

TEST_CASE("malformed trapezoid records") {
  const std::string good =
      "trap 0 2 6 top 0 1 2 bottom 0 1 -5 corners 2 -5 6 -5 6 2 2 2 "
      "prov curtain:T1.0 own:T0.0 top-stop top-stop\n";
  const auto ok = parse_trapezoids(good);
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].x_right == 6);

  auto bad = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(parse_trapezoids(bad("6 2 2 2", "6 2 2 3")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("trap 0 2 6", "trap 0 6 2")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("trap 0", "trap x")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("trap 0", "trap -3")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("top-stop\n", "top-stop extra\n")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("own:T0.0", "sideways")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids(bad("bottom 0 1 -5", "bottom 1 0 -5")), ParseError);
  CHECK_THROWS_AS(parse_trapezoids("trap 0 2\n"), ParseError);
  try {
    parse_trapezoids("# header\n" + good + bad("6 2 2 2", "6 2 2 3"));
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("stats round-trip") {
  const Scene s = scene_s2(box(-1, -1, 10, 10));
  const auto e = make_engine(EngineKind::Accelerated, s);
  const auto m = build_svm_offline(*e, unit_grid(0, 0, 10, 10));
  const StatsMap st = stats_entries(m.stats);
  const StatsMap back = parse_stats(serialize_stats(st));
  CHECK(back == st);
  CHECK(stats_value(back, "t") == std::to_string(m.stats.t));
  CHECK(stats_value(back, "q_ray_shoot") == std::to_string(m.stats.queries.ray_shoot));
  CHECK_FALSE(stats_value(back, "nope"));
  CHECK_THROWS_AS(parse_stats("t 5\n"), ParseError);
}

TEST_CASE("csv round-trip") {
  CsvTable t;
  t.header = {"scene", "n", "t"};
  t.rows = {{"layers-1", "10", "57"}, {"s1", "1", "1"}};
  const CsvTable back = parse_csv(serialize_csv(t));
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.at(1, "t") == "1");
  CHECK_THROWS_AS(back.at(0, "zzz"), std::out_of_range);

  CsvTable comma = t;
  comma.rows[0][0] = "a,b";
  CHECK_THROWS_AS(serialize_csv(comma), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ParseError);
}

TEST_CASE("PPM of S2 equals the ray-cast image") {
  const Scene s = scene_s2(box(-1, -1, 10, 10));
  const PixelSet px = unit_grid(0, 0, 10, 10);
  const auto e = make_engine(EngineKind::Accelerated, s);
  const auto m = build_svm_offline(*e, px);
  const std::string built = render_ppm(px, pixel_ids(m.trapezoids, px));
  const std::string cast = render_ppm(px, raycast_image(s, px));
  CHECK(built == cast);
  CHECK(built.rfind("P6\n10 10\n255\n", 0) == 0);
  CHECK(built.size() == std::string("P6\n10 10\n255\n").size() + 300);
  CHECK_THROWS_AS(render_ppm(PixelSet(std::vector<Point2>{P(1, 1)}), {0}), PreconditionError);
}

TEST_CASE("PPM rows run top to bottom") {
  Scene s;
  s.triangles.push_back(flat(0, 5, P(-1, -1), P(9, -1), Point2{Scalar(-1), S("1/2")}));
  s.viewport = box(-1, -1, 2, 2);
  const PixelSet px = unit_grid(0, 0, 2, 2);
  const auto ids = raycast_image(s, px);
  REQUIRE(ids == std::vector<int>{0, 0, kBackgroundId, kBackgroundId});
  const std::string ppm = render_ppm(px, ids);
  const std::size_t head = std::string("P6\n2 2\n255\n").size();
  CHECK(static_cast<unsigned char>(ppm[head]) == color_of(kBackgroundId).r);
  CHECK(static_cast<unsigned char>(ppm[head + 6]) == color_of(0).r);
}

TEST_CASE("SVG output") {
  const Scene s = scene_s1();
  const auto e = make_engine(EngineKind::Accelerated, s);
  const PixelSet px = centered_grid(4);
  const auto m = build_svm_offline(*e, px);
  const std::string svg = render_svg(s.view(), m.trapezoids, &px);
  CHECK(count_of(svg, "<polygon") == 1);
  CHECK(count_of(svg, "<circle") == 16);
  CHECK(count_of(render_svg(s.view(), m.trapezoids, &px, 8), "<circle") == 0);
  CHECK(color_of(kBackgroundId) == Rgb{24, 24, 32});
  CHECK(color_of(3) == color_of(3));
  CHECK_FALSE(color_of(3) == color_of(4));
}
