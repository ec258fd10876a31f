#pragma once
// Fixtures shared by the unit tests.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sampvis/generate.hpp"
#include "sampvis/geometry.hpp"
#include "sampvis/scene.hpp"

namespace sampvis::test {

inline Scalar S(const std::string& text) { return parse_scalar(text); }

inline Scalar frac(long num, long den) {
  Scalar v(num, den);
  v.canonicalize();
  return v;
}

inline Point2 P(long x, long y) { return {Scalar(x), Scalar(y)}; }

inline Triangle flat(int id, long z, Point2 a, Point2 b, Point2 c) {
  return Triangle{id, {Point3{a.x, a.y, z}, Point3{b.x, b.y, z}, Point3{c.x, c.y, z}}};
}

inline Viewport box(long x0, long y0, long x1, long y1) {
  return Viewport{Scalar(x0), Scalar(y0), Scalar(x1), Scalar(y1)};
}

// One horizontal triangle at z=10 covering [0,16]^2.
inline Scene scene_s1() {
  Scene s;
  s.triangles.push_back(flat(0, 10, P(-1, -1), P(40, -1), P(-1, 40)));
  s.viewport = box(0, 0, 16, 16);
  return s;
}

inline Scene scene_s2(Viewport vp = box(-10, -10, 40, 40)) {
  Scene s;
  s.triangles.push_back(flat(0, 10, P(-5, -5), P(25, -5), P(-5, 25)));
  s.triangles.push_back(flat(1, 5, P(2, 2), P(6, 2), P(2, 6)));
  s.viewport = vp;
  return s;
}

inline GridSpec grid(Scalar x0, Scalar y0, Scalar dx, Scalar dy, int w, int h) {
  return GridSpec{{std::move(x0), std::move(y0)}, std::move(dx), std::move(dy), w, h};
}

inline PixelSet unit_grid(long x0, long y0, int w, int h) {
  return PixelSet(grid(Scalar(x0), Scalar(y0), Scalar(1), Scalar(1), w, h));
}

// g x g grid centered in [0, extent]^2.
inline PixelSet centered_grid(int g, int extent = 16) {
  const Scalar d = frac(extent, g);
  return PixelSet(grid(Scalar(d / 2), Scalar(d / 2), d, d, g, g));
}

inline Scene layers(int n, std::uint64_t seed, Family family = Family::Layers) {
  GenerateParams p;
  p.family = family;
  p.n = n;
  p.seed = seed;
  return generate_scene(p);
}

// Random rational in [lo, hi] with the given denominator.
inline Scalar random_scalar(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return frac(d(rng), den);
}

inline Point2 random_point(std::mt19937_64& rng, const Viewport& vp, long den = 97) {
  auto pick = [&](const Scalar& a, const Scalar& b) -> Scalar {
    std::uniform_int_distribution<long> d(0, den - 1);
    return Scalar(a + (b - a) * frac(d(rng), den));
  };
  return {pick(vp.xmin, vp.xmax), pick(vp.ymin, vp.ymax)};
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sampvis_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sampvis::test
