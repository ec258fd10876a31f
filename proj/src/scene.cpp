#include "sampvis/scene.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sampvis {

Scalar Scene::background_z() const {
  Scalar zmax = 0;
  for (const auto& t : triangles) {
    for (const auto& v : t.v) zmax = std::max(zmax, v.z);
  }
  return zmax + 1;
}

const Viewport& Scene::view() const {
  if (!viewport) throw PreconditionError("scene viewport has not been resolved");
  return *viewport;
}

// --- lattice ---------------------------------------------------------------

LatticeMap::LatticeMap(GridSpec grid) : grid_(std::move(grid)) {
  if (grid_.dx <= 0 || grid_.dy <= 0) throw SceneError("grid spacing must be positive");
  if (grid_.width <= 0 || grid_.height <= 0) throw SceneError("grid dimensions must be positive");
}

Point2 LatticeMap::pixel_at(int i, int j) const {
  if (i < 0 || i >= grid_.width || j < 0 || j >= grid_.height) {
    throw std::out_of_range("grid index out of range");
  }
  return {grid_.origin.x + i * grid_.dx, grid_.origin.y + j * grid_.dy};
}

Point2 LatticeMap::to_lattice(const Point2& q) const {
  return {(q.x - grid_.origin.x) / grid_.dx, (q.y - grid_.origin.y) / grid_.dy};
}

Point2 LatticeMap::from_lattice(const Point2& ij) const {
  return {grid_.origin.x + ij.x * grid_.dx, grid_.origin.y + ij.y * grid_.dy};
}

std::optional<LatticeIndex> LatticeMap::locate_pixel(const Point2& q) const {
  const Point2 ij = to_lattice(q);
  if (ij.x.get_den() != 1 || ij.y.get_den() != 1) return std::nullopt;
  const Integer& i = ij.x.get_num();
  const Integer& j = ij.y.get_num();
  if (i < 0 || i >= grid_.width || j < 0 || j >= grid_.height) return std::nullopt;
  return LatticeIndex{static_cast<int>(i.get_si()), static_cast<int>(j.get_si())};
}

// --- pixel sets ------------------------------------------------------------

PixelSet::PixelSet(GridSpec grid) {
  LatticeMap check(grid);  // validates spacing and dimensions
  data_ = std::move(grid);
}

PixelSet::PixelSet(std::vector<Point2> points) {
  x_order_.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) x_order_[k] = k;
  std::sort(x_order_.begin(), x_order_.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });
  for (std::size_t k = 1; k < x_order_.size(); ++k) {
    if (points[x_order_[k - 1]] == points[x_order_[k]]) {
      throw SceneError("duplicate pixel (" + to_string(points[x_order_[k]].x) + ", " +
                       to_string(points[x_order_[k]].y) + ")");
    }
  }
  data_ = std::move(points);
}

std::size_t PixelSet::size() const {
  if (is_grid()) {
    const auto& g = grid();
    return static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height);
  }
  return points().size();
}

LatticeIndex PixelSet::grid_index(std::size_t k) const {
  const auto& g = grid();
  return {static_cast<int>(k % g.width), static_cast<int>(k / g.width)};
}

Point2 PixelSet::point(std::size_t k) const {
  if (is_grid()) {
    const auto& g = grid();
    const LatticeIndex ij = grid_index(k);
    return {g.origin.x + ij.i * g.dx, g.origin.y + ij.j * g.dy};
  }
  return points().at(k);
}

Viewport PixelSet::bounds() const {
  if (size() == 0) throw PreconditionError("bounds of an empty pixel set");
  if (is_grid()) {
    const auto& g = grid();
    return {g.origin.x, g.origin.y, g.origin.x + (g.width - 1) * g.dx,
            g.origin.y + (g.height - 1) * g.dy};
  }
  const auto& pts = points();
  Viewport b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

// --- text formats ----------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Scalar scalar_at(const std::vector<std::string>& toks, std::size_t k, int line) {
  try {
    return parse_scalar(toks[k]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

int positive_int_at(const std::vector<std::string>& toks, std::size_t k, int line) {
  const Scalar v = scalar_at(toks, k, line);
  if (v.get_den() != 1 || v <= 0 || !v.get_num().fits_sint_p()) {
    throw ParseError(line, "expected a positive integer, got '" + toks[k] + "'");
  }
  return static_cast<int>(v.get_num().get_si());
}

template <typename F>
void for_each_line(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    f(number, tokenize(line));
  }
}

}  // namespace

Scene load_scene(const std::string& text, const LoadOptions& options) {
  Scene scene;
  for_each_line(text, [&](int line, const std::vector<std::string>& toks) {
    if (toks[0] == "t") {
      if (toks.size() != 10) throw ParseError(line, "triangle needs 9 coordinates");
      Triangle t;
      t.id = static_cast<int>(scene.triangles.size());
      for (int k = 0; k < 3; ++k) {
        t.v[k] = {scalar_at(toks, 1 + 3 * k, line), scalar_at(toks, 2 + 3 * k, line),
                  scalar_at(toks, 3 + 3 * k, line)};
        if (t.v[k].z <= 0) {
          throw SceneError("line " + std::to_string(line) + ": nonpositive z in triangle " +
                               std::to_string(t.id),
                           {t.id});
        }
      }
      if (t.projection_degenerate()) {
        throw SceneError("line " + std::to_string(line) + ": degenerate triangle " +
                             std::to_string(t.id) + " (collinear projection)",
                         {t.id});
      }
      scene.triangles.push_back(std::move(t));
    } else if (toks[0] == "viewport") {
      if (toks.size() != 5) throw ParseError(line, "viewport needs 4 values");
      Viewport v{scalar_at(toks, 1, line), scalar_at(toks, 2, line), scalar_at(toks, 3, line),
                 scalar_at(toks, 4, line)};
      if (v.xmax <= v.xmin || v.ymax <= v.ymin) {
        throw ParseError(line, "viewport must have positive width and height");
      }
      scene.viewport = v;
    } else {
      throw ParseError(line, "unknown record '" + toks[0] + "'");
    }
  });
  if (options.validate_disjoint) {
    if (auto bad = validate_disjoint(scene)) {
      throw SceneError("triangles " + std::to_string(bad->first) + " and " +
                           std::to_string(bad->second) + " intersect",
                       {bad->first, bad->second});
    }
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  std::ostringstream out;
  if (scene.viewport) {
    const auto& v = *scene.viewport;
    out << "viewport " << to_string(v.xmin) << ' ' << to_string(v.ymin) << ' '
        << to_string(v.xmax) << ' ' << to_string(v.ymax) << '\n';
  }
  for (const auto& t : scene.triangles) {
    out << 't';
    for (const auto& p : t.v) {
      out << ' ' << to_string(p.x) << ' ' << to_string(p.y) << ' ' << to_string(p.z);
    }
    out << '\n';
  }
  return out.str();
}

PixelSet parse_pixels(const std::string& text) {
  std::optional<GridSpec> grid;
  bool in_points = false;
  std::vector<Point2> points;
  int header_line = 0;
  for_each_line(text, [&](int line, const std::vector<std::string>& toks) {
    if (grid) throw ParseError(line, "unexpected content after grid record");
    if (in_points) {
      if (toks.size() != 2) throw ParseError(line, "point needs x and y");
      points.push_back({scalar_at(toks, 0, line), scalar_at(toks, 1, line)});
      return;
    }
    header_line = line;
    if (toks[0] == "grid") {
      if (toks.size() != 7) throw ParseError(line, "grid needs x0 y0 dx dy W H");
      GridSpec g{{scalar_at(toks, 1, line), scalar_at(toks, 2, line)},
                 scalar_at(toks, 3, line),
                 scalar_at(toks, 4, line),
                 positive_int_at(toks, 5, line),
                 positive_int_at(toks, 6, line)};
      if (g.dx <= 0 || g.dy <= 0) throw ParseError(line, "grid spacing must be positive");
      grid = std::move(g);
    } else if (toks[0] == "points") {
      if (toks.size() != 1) throw ParseError(line, "'points' takes no arguments");
      in_points = true;
    } else {
      throw ParseError(line, "expected 'grid' or 'points', got '" + toks[0] + "'");
    }
  });
  if (grid) return PixelSet(std::move(*grid));
  if (!in_points) throw ParseError(header_line, "empty pixel specification");
  try {
    return PixelSet(std::move(points));
  } catch (const SceneError& e) {
    throw ParseError(header_line, e.what());
  }
}

std::string serialize_pixels(const PixelSet& pixels) {
  std::ostringstream out;
  if (pixels.is_grid()) {
    const auto& g = pixels.grid();
    out << "grid " << to_string(g.origin.x) << ' ' << to_string(g.origin.y) << ' '
        << to_string(g.dx) << ' ' << to_string(g.dy) << ' ' << g.width << ' ' << g.height << '\n';
  } else {
    out << "points\n";
    for (const auto& p : pixels.points()) out << to_string(p.x) << ' ' << to_string(p.y) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

Scene load_scene_file(const std::string& path, const LoadOptions& options) {
  return load_scene(read_text_file(path), options);
}

PixelSet load_pixels_file(const std::string& path) { return parse_pixels(read_text_file(path)); }

// --- disjointness ----------------------------------------------------------

namespace {

Scalar volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Scalar ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  const Scalar vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  const Scalar wx = d.x - a.x, wy = d.y - a.y, wz = d.z - a.z;
  return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
}

struct Chord {
  std::vector<Point3> points;  // 1 or 2 points
  bool on_boundary = false;    // chord lies entirely in the triangle boundary
};

// Intersection of triangle t with the plane whose signed volumes at t's
// vertices are d[0..2]; assumes the triangle meets the plane.
Chord plane_chord(const Triangle& t, const std::array<Scalar, 3>& d) {
  Chord c;
  int zeros = 0;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0) {
      ++zeros;
      c.points.push_back(t.v[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (sgn(d[i]) * sgn(d[j]) < 0) {
      const Scalar s = d[i] / (d[i] - d[j]);
      c.points.push_back({t.v[i].x + s * (t.v[j].x - t.v[i].x), t.v[i].y + s * (t.v[j].y - t.v[i].y),
                          t.v[i].z + s * (t.v[j].z - t.v[i].z)});
    }
  }
  if (zeros == 2) c.on_boundary = true;
  if (zeros == 1 && c.points.size() == 1) c.on_boundary = true;
  return c;
}

bool coplanar_interiors_overlap(const Triangle& a, const Triangle& b) {
  // Drop the coordinate along which the common normal is nonzero.
  const Point3& p0 = a.v[0];
  const Point3& p1 = a.v[1];
  const Point3& p2 = a.v[2];
  const Scalar nx = (p1.y - p0.y) * (p2.z - p0.z) - (p1.z - p0.z) * (p2.y - p0.y);
  const Scalar ny = (p1.z - p0.z) * (p2.x - p0.x) - (p1.x - p0.x) * (p2.z - p0.z);
  auto project = [&](const Point3& p) -> Point2 {
    if (nx != 0) return {p.y, p.z};
    if (ny != 0) return {p.x, p.z};
    return {p.x, p.y};
  };
  std::array<Point2, 3> ta, tb;
  for (int i = 0; i < 3; ++i) {
    ta[i] = project(a.v[i]);
    tb[i] = project(b.v[i]);
  }
  const int oa = orient2d(ta[0], ta[1], ta[2]);
  const int ob = orient2d(tb[0], tb[1], tb[2]);
  auto separated_by_edges = [](const std::array<Point2, 3>& s, int os, const std::array<Point2, 3>& o) {
    for (int i = 0; i < 3; ++i) {
      bool all_outside = true;
      for (const auto& q : o) {
        if (orient2d(s[i], s[(i + 1) % 3], q) * os > 0) {
          all_outside = false;
          break;
        }
      }
      if (all_outside) return true;
    }
    return false;
  };
  return !separated_by_edges(ta, oa, tb) && !separated_by_edges(tb, ob, ta);
}

}  // namespace

bool triangles_disjoint(const Triangle& a, const Triangle& b) {
  std::array<Scalar, 3> da, db;
  for (int i = 0; i < 3; ++i) {
    da[i] = volume(b.v[0], b.v[1], b.v[2], a.v[i]);
    db[i] = volume(a.v[0], a.v[1], a.v[2], b.v[i]);
  }
  auto one_side = [](const std::array<Scalar, 3>& d) {
    return (d[0] > 0 && d[1] > 0 && d[2] > 0) || (d[0] < 0 && d[1] < 0 && d[2] < 0);
  };
  if (one_side(da) || one_side(db)) return true;
  if (da[0] == 0 && da[1] == 0 && da[2] == 0) return !coplanar_interiors_overlap(a, b);

  const Chord ca = plane_chord(a, da);
  const Chord cb = plane_chord(b, db);
  // Both chords lie on the line common to the two planes; parametrize it by
  // a coordinate along which it is not constant.
  auto normal = [](const Triangle& t) {
    const Point3& p0 = t.v[0];
    const Point3& p1 = t.v[1];
    const Point3& p2 = t.v[2];
    return std::array<Scalar, 3>{
        (p1.y - p0.y) * (p2.z - p0.z) - (p1.z - p0.z) * (p2.y - p0.y),
        (p1.z - p0.z) * (p2.x - p0.x) - (p1.x - p0.x) * (p2.z - p0.z),
        (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x)};
  };
  const auto na = normal(a);
  const auto nb = normal(b);
  const std::array<Scalar, 3> dir{na[1] * nb[2] - na[2] * nb[1], na[2] * nb[0] - na[0] * nb[2],
                                  na[0] * nb[1] - na[1] * nb[0]};
  const int k = dir[0] != 0 ? 0 : (dir[1] != 0 ? 1 : 2);
  auto param = [k](const Point3& p) -> const Scalar& { return k == 0 ? p.x : (k == 1 ? p.y : p.z); };
  auto range = [&](const Chord& c) {
    Scalar lo = param(c.points[0]);
    Scalar hi = lo;
    for (const auto& p : c.points) {
      lo = std::min(lo, param(p));
      hi = std::max(hi, param(p));
    }
    return std::pair<Scalar, Scalar>{lo, hi};
  };
  const auto [alo, ahi] = range(ca);
  const auto [blo, bhi] = range(cb);
  const Scalar lo = std::max(alo, blo);
  const Scalar hi = std::min(ahi, bhi);
  if (lo > hi) return true;
  const bool in_boundary_a = ca.on_boundary || (lo == hi && (lo == alo || lo == ahi));
  const bool in_boundary_b = cb.on_boundary || (lo == hi && (lo == blo || lo == bhi));
  return in_boundary_a && in_boundary_b;
}

std::optional<std::pair<int, int>> validate_disjoint(const Scene& scene) {
  const auto& ts = scene.triangles;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      if (!triangles_disjoint(ts[i], ts[j])) {
        const int a = std::min(ts[i].id, ts[j].id);
        const int b = std::max(ts[i].id, ts[j].id);
        return std::pair{a, b};
      }
    }
  }
  return std::nullopt;
}

Viewport resolve_viewport(const Scene& scene, const PixelSet& pixels) {
  Viewport v;
  if (scene.viewport) {
    v = *scene.viewport;
  } else if (pixels.size() > 0) {
    const Viewport b = pixels.bounds();
    const Scalar px = pixels.is_grid() ? pixels.grid().dx : Scalar(1);
    const Scalar py = pixels.is_grid() ? pixels.grid().dy : Scalar(1);
    v = {b.xmin - px, b.ymin - py, b.xmax + px, b.ymax + py};
  } else {
    v = {0, 0, 1, 1};
  }
  if (pixels.size() > 0) {
    const Viewport b = pixels.bounds();
    if (!v.contains({b.xmin, b.ymin}) || !v.contains({b.xmax, b.ymax})) {
      throw SceneError("pixels must lie inside the half-open viewport");
    }
  }
  return v;
}

Scene with_viewport(Scene scene, const PixelSet& pixels) {
  scene.viewport = resolve_viewport(scene, pixels);
  return scene;
}

}  // namespace sampvis
