#include "sampvis/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace sampvis {

namespace {

struct Seg {
  Point2 lo, hi;
  Line2 line;
};

// Keeps every critical abscissa (vertex, edge crossing, edge/viewport
// crossing) distinct, which rules out shared x, collinear triples and
// concurrent lines at once.
class Placer {
 public:
  explicit Placer(const Viewport& vp) : vp_(vp) {
    xs_.insert(vp.xmin);
    xs_.insert(vp.xmax);
    segs_.push_back({{vp.xmin, vp.ymin}, {vp.xmax, vp.ymin}, Line2::horizontal(vp.ymin)});
    segs_.push_back({{vp.xmin, vp.ymax}, {vp.xmax, vp.ymax}, Line2::horizontal(vp.ymax)});
  }

  bool try_add(const std::array<Point2, 3>& p) {
    if (orient2d(p[0], p[1], p[2]) == 0) return false;
    std::vector<Scalar> fresh;
    for (const auto& v : p) fresh.push_back(v.x);
    std::vector<Seg> mine;
    for (int e = 0; e < 3; ++e) {
      Point2 a = p[e], b = p[(e + 1) % 3];
      if (lex_less(b, a)) std::swap(a, b);
      mine.push_back({a, b, Line2::through(a, b)});
    }
    for (const auto& s : mine) {
      for (const auto& o : segs_) {
        if (s.line == o.line) return false;
        const auto q = intersect(s.line, o.line);
        if (!q) continue;
        if (q->x < s.lo.x || q->x > s.hi.x || q->x < o.lo.x || q->x > o.hi.x) continue;
        fresh.push_back(q->x);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    if (std::adjacent_find(fresh.begin(), fresh.end()) != fresh.end()) return false;
    for (const auto& x : fresh) {
      if (xs_.count(x)) return false;
    }
    xs_.insert(fresh.begin(), fresh.end());
    segs_.insert(segs_.end(), mine.begin(), mine.end());
    return true;
  }

 private:
  Viewport vp_;
  std::set<Scalar> xs_;
  std::vector<Seg> segs_;
};

class Sampler {
 public:
  Sampler(std::uint64_t seed, int denominator) : rng_(seed), den_(denominator) {}

  // Uniform multiple of 1/den in [lo, hi].
  Scalar coord(const Scalar& lo, const Scalar& hi) {
    const Integer a = ceil_of(lo * den_), b = floor_of(hi * den_);
    std::uniform_int_distribution<long> d(a.get_si(), b.get_si());
    Scalar r(d(rng_), den_);
    r.canonicalize();
    return r;
  }
  Scalar real(double lo, double hi) { return coord(Scalar(lo), Scalar(hi)); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  int den_;
};

}  // namespace

Scene generate_scene(const GenerateParams& params) {
  if (params.n < 0) throw PreconditionError("generate: n must be nonnegative");
  if (params.extent < 2) throw PreconditionError("generate: extent must be at least 2");
  if (params.denominator < 1) throw PreconditionError("generate: denominator must be positive");

  Scene scene;
  const Scalar E(params.extent);
  scene.viewport = Viewport{0, 0, E, E};
  Sampler rng(params.seed, params.denominator);
  Placer placer(*scene.viewport);

  // Depth slab per triangle, shuffled so ids carry no depth order.
  std::vector<int> slab(params.n);
  std::iota(slab.begin(), slab.end(), 0);
  std::shuffle(slab.begin(), slab.end(), rng.rng());

  const double e = params.extent;
  for (int i = 0; i < params.n; ++i) {
    bool placed = false;
    std::array<Point2, 3> p;
    for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
      switch (params.family) {
        case Family::Layers: {
          const Scalar cx = rng.real(-1, e + 1), cy = rng.real(-1, e + 1);
          const double r = 1 + (e / 16) * 5 * std::uniform_real_distribution<double>(0, 1)(rng.rng());
          for (auto& v : p) v = {cx + rng.real(-r, r), cy + rng.real(-r, r)};
          break;
        }
        case Family::BoundaryClutter: {
          // Small triangles hugging one of the four viewport sides.
          const int side = std::uniform_int_distribution<int>(0, 3)(rng.rng());
          Scalar along = rng.real(-0.5, e + 0.5), off = rng.real(-0.75, 0.75);
          if (side >= 2) off += E;
          const Point2 c = side % 2 == 0 ? Point2{along, off} : Point2{off, along};
          for (auto& v : p) v = {c.x + rng.real(-0.5, 0.5), c.y + rng.real(-0.5, 0.5)};
          break;
        }
        case Family::Fence: {
          // Tall thin posts leaning slightly.
          const Scalar x = rng.real(0.25, e - 0.25);
          const Scalar w = rng.real(0.05, 0.3);
          const Scalar lean = rng.real(-0.5, 0.5);
          p[0] = {x, rng.real(-1, 1)};
          p[1] = {x + w, rng.real(-1, 1)};
          p[2] = {x + w / 2 + lean, rng.real(e - 1, e + 1)};
          break;
        }
      }
      if (orient2d(p[0], p[1], p[2]) == 0) continue;
      const Scalar area = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[1].y - p[0].y) * (p[2].x - p[0].x);
      if (params.family == Family::Layers && abs(area) < 1) continue;
      placed = placer.try_add(p);
    }
    if (!placed) throw std::runtime_error("generate: could not place triangle " + std::to_string(i));

    Triangle t;
    t.id = i;
    const Scalar base(10 + 3 * slab[i]);
    for (int k = 0; k < 3; ++k) t.v[k] = {p[k].x, p[k].y, base + rng.real(0, 2)};
    scene.triangles.push_back(t);
  }
  return scene;
}

Family parse_family(const std::string& name) {
  if (name == "layers") return Family::Layers;
  if (name == "boundary-clutter") return Family::BoundaryClutter;
  if (name == "fence") return Family::Fence;
  throw std::invalid_argument("unknown scene family: " + name);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Layers: return "layers";
    case Family::BoundaryClutter: return "boundary-clutter";
    case Family::Fence: return "fence";
  }
  return "?";
}

}  // namespace sampvis
