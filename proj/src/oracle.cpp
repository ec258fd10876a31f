#include "sampvis/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace sampvis {

namespace {

Scalar cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Affine interpolation of the vertex depths, evaluated anywhere in the plane.
Scalar bary_depth(const Triangle& t, const Scalar& x, const Scalar& y) {
  const Point2 p0 = t.v[0].xy(), p1 = t.v[1].xy(), p2 = t.v[2].xy();
  const Point2 w{x, y};
  const Scalar area = cross(p0, p1, p2);
  return (cross(w, p1, p2) * t.v[0].z + cross(p0, w, p2) * t.v[1].z + cross(p0, p1, w) * t.v[2].z) /
         area;
}

bool flat(const Triangle& t) { return cross(t.v[0].xy(), t.v[1].xy(), t.v[2].xy()) == 0; }

// q_eps strictly left of the directed segment a -> b.
bool eps_left(const Point2& a, const Point2& b, const Point2& q) {
  const Scalar d = cross(a, b, q);
  if (d != 0) return d > 0;
  if (b.x != a.x) return b.x > a.x;
  return b.y < a.y;
}

bool eps_inside(const Triangle& t, const Point2& q) {
  Point2 p[3] = {t.v[0].xy(), t.v[1].xy(), t.v[2].xy()};
  if (cross(p[0], p[1], p[2]) < 0) std::swap(p[1], p[2]);
  return eps_left(p[0], p[1], q) && eps_left(p[1], p[2], q) && eps_left(p[2], p[0], q);
}

struct Seg {
  Point2 lo, hi;
  Line2 line;
  bool vertical = false;
  int owner = -1;  // -1 marks a viewport line
};

struct SlabEdge {
  Line2 line;
  Scalar ymid;
  std::vector<int> owners;
  int viewport_lines = 0;
};

struct SlabData {
  std::vector<Line2> lines;  // boundaries bottom to top
  std::vector<int> labels;   // lines.size() + 1 cells
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<VisPiece> pieces_of(const SlabData& s) {
  std::vector<VisPiece> out;
  for (std::size_t c = 1; c + 1 < s.labels.size(); ++c) {
    if (s.labels[c] == kOutsideLabel) continue;
    if (!out.empty() && out.back().label == s.labels[c] && out.back().top == s.lines[c - 1]) {
      out.back().top = s.lines[c];
    } else {
      out.push_back({s.labels[c], s.lines[c - 1], s.lines[c]});
    }
  }
  return out;
}

}  // namespace

int raycast_point(const Scene& scene, const Point2& q) {
  int best = kBackgroundId;
  Scalar bz, bgy, bgx;
  for (const auto& t : scene.triangles) {
    if (flat(t) || !eps_inside(t, q)) continue;
    const Scalar z = bary_depth(t, q.x, q.y);
    const Scalar gy = bary_depth(t, q.x, q.y + 1) - z;
    const Scalar gx = bary_depth(t, q.x + 1, q.y) - z;
    bool take = best == kBackgroundId;
    if (!take) {
      int c = cmp(z, bz);
      if (c == 0) c = cmp(gy, bgy);
      if (c == 0) c = cmp(gx, bgx);
      take = c < 0 || (c == 0 && t.id < best);
    }
    if (take) {
      best = t.id;
      bz = z;
      bgy = gy;
      bgx = gx;
    }
  }
  return best;
}

std::vector<int> raycast_image(const Scene& scene, const PixelSet& pixels) {
  std::vector<int> out(pixels.size());
  for (std::size_t k = 0; k < pixels.size(); ++k) out[k] = raycast_point(scene, pixels.point(k));
  return out;
}

int VisMap::label_at(const Point2& q) const {
  if (!viewport.contains(q)) return kOutsideLabel;
  const auto it = std::upper_bound(xs.begin(), xs.end(), q.x);
  const std::size_t k = static_cast<std::size_t>(it - xs.begin()) - 1;
  for (const auto& p : slabs[k]) {
    if (p.bottom.y_at(q.x) <= q.y && q.y < p.top.y_at(q.x)) return p.label;
  }
  throw InternalError("point not covered by any slab piece");
}

VisMap analytic_vismap(const Scene& scene, const OracleOptions& options) {
  if (scene.size() > options.max_triangles) {
    throw BudgetExceeded("oracle limited to " + std::to_string(options.max_triangles) +
                         " triangles, scene has " + std::to_string(scene.size()));
  }
  VisMap vm;
  vm.viewport = scene.view();
  const Viewport& vp = vm.viewport;

  std::vector<Seg> segs;
  for (const auto& t : scene.triangles) {
    for (int e = 0; e < 3; ++e) {
      Point2 a = t.v[e].xy(), b = t.v[(e + 1) % 3].xy();
      if (lex_less(b, a)) std::swap(a, b);
      segs.push_back({a, b, Line2::through(a, b), a.x == b.x, t.id});
    }
  }
  for (const Scalar& y : {vp.ymin, vp.ymax}) {
    segs.push_back({{vp.xmin, y}, {vp.xmax, y}, Line2::horizontal(y), false, -1});
  }

  std::vector<Scalar>& xs = vm.xs;
  xs = {vp.xmin, vp.xmax};
  auto add_x = [&](const Scalar& x) {
    if (vp.xmin < x && x < vp.xmax) xs.push_back(x);
  };
  for (const auto& s : segs) {
    add_x(s.lo.x);
    add_x(s.hi.x);
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].vertical) continue;
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[j].vertical) continue;
      const auto p = intersect(segs[i].line, segs[j].line);
      if (!p) continue;
      if (p->x < segs[i].lo.x || p->x > segs[i].hi.x) continue;
      if (p->x < segs[j].lo.x || p->x > segs[j].hi.x) continue;
      add_x(p->x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t K = xs.size() - 1;

  // Label every cell of every slab.
  std::vector<SlabData> slabs(K);
  std::vector<char> covered(scene.size(), 0);
  for (std::size_t k = 0; k < K; ++k) {
    const Scalar mid = (xs[k] + xs[k + 1]) / 2;
    std::vector<SlabEdge> bs;
    for (const auto& s : segs) {
      if (s.vertical || s.lo.x > xs[k] || s.hi.x < xs[k + 1]) continue;
      bs.push_back({s.line, s.line.y_at(mid), {}, 0});
      if (s.owner < 0) ++bs.back().viewport_lines;
      else bs.back().owners.push_back(s.owner);
    }
    std::sort(bs.begin(), bs.end(), [](const SlabEdge& a, const SlabEdge& b) { return a.ymid < b.ymid; });
    std::vector<SlabEdge> merged;
    for (auto& b : bs) {
      if (!merged.empty() && merged.back().ymid == b.ymid) {
        if (!(merged.back().line == b.line)) throw InternalError("lines cross inside a slab");
        merged.back().viewport_lines += b.viewport_lines;
        merged.back().owners.insert(merged.back().owners.end(), b.owners.begin(), b.owners.end());
      } else {
        merged.push_back(std::move(b));
      }
    }

    SlabData& sd = slabs[k];
    sd.labels.push_back(kOutsideLabel);
    std::fill(covered.begin(), covered.end(), 0);
    bool inside = false;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      for (int o : merged[i].owners) covered[o] ^= 1;
      if (merged[i].viewport_lines % 2 == 1) inside = !inside;
      sd.lines.push_back(merged[i].line);
      int label = kOutsideLabel;
      if (inside) {
        if (i + 1 >= merged.size()) throw InternalError("open cell inside the viewport");
        const Scalar wy = (merged[i].ymid + merged[i + 1].ymid) / 2;
        label = kBackgroundId;
        Scalar best;
        for (std::size_t t = 0; t < covered.size(); ++t) {
          if (!covered[t]) continue;
          const Scalar z = bary_depth(scene.triangles[t], mid, wy);
          if (label == kBackgroundId || z < best) {
            label = static_cast<int>(t);
            best = z;
          }
        }
      }
      sd.labels.push_back(label);
    }
    vm.slabs.push_back(pieces_of(sd));
  }

  // Vertices: points on the vertical line x = X where the incident visible
  // edges are not a single straight pass-through.
  for (std::size_t k = 0; k <= K; ++k) {
    const Scalar& X = xs[k];
    const SlabData* left = k > 0 ? &slabs[k - 1] : nullptr;
    const SlabData* right = k < K ? &slabs[k] : nullptr;
    std::vector<Scalar> ly, ry;
    if (left) for (const auto& l : left->lines) ly.push_back(l.y_at(X));
    if (right) for (const auto& l : right->lines) ry.push_back(l.y_at(X));
    std::vector<Scalar> ys = ly;
    ys.insert(ys.end(), ry.begin(), ry.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (ys.empty()) continue;

    auto label_in = [](const SlabData* s, const std::vector<Scalar>& y_at_x, const Scalar& y) {
      if (!s) return kOutsideLabel;
      const std::size_t c = std::upper_bound(y_at_x.begin(), y_at_x.end(), y) - y_at_x.begin();
      return s->labels[c];
    };
    // vertical[m]: a visible vertical edge spans the m-th open interval of ys.
    std::vector<char> vertical(ys.size() + 1);
    for (std::size_t m = 0; m <= ys.size(); ++m) {
      Scalar y;
      if (m == 0) y = ys.front() - 1;
      else if (m == ys.size()) y = ys.back() + 1;
      else y = (ys[m - 1] + ys[m]) / 2;
      vertical[m] = label_in(left, ly, y) != label_in(right, ry, y);
    }
    // Visible edges of a slab ending at y on x = X.
    auto edges_at = [](const SlabData* s, const std::vector<Scalar>& y_at_x, const Scalar& y) {
      std::vector<const Line2*> out;
      if (!s) return out;
      for (std::size_t i = 0; i < y_at_x.size(); ++i) {
        if (y_at_x[i] == y && s->labels[i] != s->labels[i + 1]) out.push_back(&s->lines[i]);
      }
      return out;
    };
    for (std::size_t m = 0; m < ys.size(); ++m) {
      const bool down = vertical[m], up = vertical[m + 1];
      const auto le = edges_at(left, ly, ys[m]);
      const auto re = edges_at(right, ry, ys[m]);
      const std::size_t degree = le.size() + re.size() + up + down;
      if (degree == 0) continue;
      const bool straight_line = !up && !down && le.size() == 1 && re.size() == 1 && *le[0] == *re[0];
      const bool straight_wall = up && down && le.empty() && re.empty();
      if (!straight_line && !straight_wall) vm.vertices.push_back({X, ys[m]});
    }
  }

  // Faces: same-label pieces touching across a slab border along a segment.
  std::vector<std::size_t> base(K + 1, 0);
  for (std::size_t k = 0; k < K; ++k) base[k + 1] = base[k] + vm.slabs[k].size();
  UnionFind uf(base[K]);
  for (std::size_t k = 1; k < K; ++k) {
    const auto& L = vm.slabs[k - 1];
    const auto& R = vm.slabs[k];
    const Scalar& X = xs[k];
    std::size_t i = 0, j = 0;
    while (i < L.size() && j < R.size()) {
      const Scalar lt = L[i].top.y_at(X), rt = R[j].top.y_at(X);
      if (L[i].label == R[j].label &&
          std::max(L[i].bottom.y_at(X), R[j].bottom.y_at(X)) < std::min(lt, rt)) {
        uf.unite(base[k - 1] + i, base[k] + j);
      }
      if (lt < rt) ++i;
      else ++j;
    }
  }
  std::size_t faces = 0;
  for (std::size_t a = 0; a < base[K]; ++a) faces += uf.find(a) == a;
  vm.face_count = faces;
  return vm;
}

std::vector<Trapezoid> analytic_trap_decomp(const VisMap& vm) {
  std::vector<Trapezoid> out;
  std::vector<std::size_t> open;  // output index for each piece of the previous slab
  for (std::size_t k = 0; k < vm.slabs.size(); ++k) {
    const auto& cur = vm.slabs[k];
    std::vector<std::size_t> now(cur.size());
    const std::vector<VisPiece>* prev = k > 0 ? &vm.slabs[k - 1] : nullptr;
    std::size_t i = 0;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const VisPiece& p = cur[j];
      bool extended = false;
      if (prev) {
        // A continuation shares the bottom end; zero-height pieces may tie there.
        const Scalar b = p.bottom.y_at(vm.xs[k]);
        while (i < prev->size() && (*prev)[i].bottom.y_at(vm.xs[k]) < b) ++i;
        for (std::size_t ii = i; ii < prev->size() && (*prev)[ii].bottom.y_at(vm.xs[k]) == b; ++ii) {
          const VisPiece& q = (*prev)[ii];
          if (q.label == p.label && q.bottom == p.bottom && q.top == p.top) {
            now[j] = open[ii];
            out[now[j]].x_right = vm.xs[k + 1];
            extended = true;
            break;
          }
        }
      }
      if (!extended) {
        Trapezoid t;
        t.triangle_id = p.label;
        t.x_left = vm.xs[k];
        t.x_right = vm.xs[k + 1];
        t.top = p.top;
        t.bottom = p.bottom;
        out.push_back(std::move(t));
        now[j] = out.size() - 1;
      }
    }
    open = std::move(now);
  }
  sort_canonical(out);
  return out;
}

SampledVisibilityMap reference_svm(const std::vector<Trapezoid>& decomposition,
                                   const PixelSet& pixels) {
  SampledVisibilityMap svm;
  for (const auto& t : decomposition) {
    if (!pixels_inside(t, pixels).empty()) svm.trapezoids.push_back(t);
  }
  sort_canonical(svm.trapezoids);
  svm.stats.p = pixels.size();
  svm.stats.t = svm.trapezoids.size();
  return svm;
}

SampledVisibilityMap reference_svm(const Scene& scene, const PixelSet& pixels,
                                   const OracleOptions& options) {
  SampledVisibilityMap svm =
      reference_svm(analytic_trap_decomp(analytic_vismap(scene, options)), pixels);
  svm.stats.n = scene.size();
  return svm;
}

namespace {

std::string describe(const Trapezoid& t) {
  std::ostringstream os;
  os << "T" << t.triangle_id << " x=[" << to_string(t.x_left) << "," << to_string(t.x_right)
     << ") top=" << to_string(t.top.a()) << "," << to_string(t.top.b()) << ","
     << to_string(t.top.c()) << " bottom=" << to_string(t.bottom.a()) << ","
     << to_string(t.bottom.b()) << "," << to_string(t.bottom.c());
  return os.str();
}

TrapKey shape_key(const Trapezoid& t) {
  TrapKey k = key_of(t);
  k.triangle_id = 0;
  return k;
}

}  // namespace

std::string SvmDiff::summary() const {
  return "missing=" + std::to_string(missing.size()) + " extra=" + std::to_string(extra.size()) +
         " mismatched=" + std::to_string(mismatched.size());
}

std::string SvmDiff::report() const {
  std::ostringstream os;
  os << summary() << "\n";
  for (const auto& t : missing) os << "  missing " << describe(t) << "\n";
  for (const auto& t : extra) os << "  extra " << describe(t) << "\n";
  for (const auto& [e, a] : mismatched) {
    os << "  mismatched " << describe(e) << " got T" << a.triangle_id << "\n";
  }
  return os.str();
}

SvmDiff compare_svm(const std::vector<Trapezoid>& expected, const std::vector<Trapezoid>& actual) {
  std::map<TrapKey, const Trapezoid*, TrapKeyLess> have;
  for (const auto& t : actual) have.emplace(shape_key(t), &t);
  SvmDiff d;
  std::map<TrapKey, bool, TrapKeyLess> seen;
  for (const auto& e : expected) {
    const TrapKey k = shape_key(e);
    seen.emplace(k, true);
    const auto it = have.find(k);
    if (it == have.end()) d.missing.push_back(e);
    else if (it->second->triangle_id != e.triangle_id) d.mismatched.emplace_back(e, *it->second);
  }
  for (const auto& a : actual) {
    if (!seen.count(shape_key(a))) d.extra.push_back(a);
  }
  return d;
}

}  // namespace sampvis
