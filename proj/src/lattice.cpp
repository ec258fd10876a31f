#include "sampvis/lattice.hpp"

#include <algorithm>

namespace sampvis {

bool HalfPlane::admits(const Scalar& x, const Scalar& y) const {
  const Scalar v = a * x + b * y;
  return closed ? v <= c : v < c;
}

ConvexPolygon ConvexPolygon::all_closed(std::vector<Point2> vertices) {
  ConvexPolygon p;
  p.closed.assign(vertices.size(), true);
  p.vertices = std::move(vertices);
  return p;
}

Integer floor_sum(Integer n, Integer m, Integer a, Integer b) {
  if (m <= 0) throw PreconditionError("floor_sum: m must be positive");
  if (n <= 0) return 0;
  Integer ans = 0;
  Integer r;
  if (a < 0) {
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    ans -= n * (n - 1) / 2 * ((r - a) / m);
    a = r;
  }
  if (b < 0) {
    mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    ans -= n * ((r - b) / m);
    b = r;
  }
  while (true) {
    if (a >= m) {
      ans += n * (n - 1) / 2 * (a / m);
      a %= m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b %= m;
    }
    const Integer y_max = a * n + b;
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

namespace {

// y-bound of a constraint with b != 0 at abscissa x: (c - a x) / b.
Scalar bound_at(const HalfPlane& h, const Scalar& x) { return (h.c - h.a * x) / h.b; }

// Integer bound on y implied by h at integer column x.
Integer column_bound(const HalfPlane& h, const Scalar& x) {
  const Scalar v = bound_at(h, x);
  if (h.b > 0) return h.closed ? floor_of(v) : ceil_of(v) - 1;
  return h.closed ? ceil_of(v) : floor_of(v) + 1;
}

// The bound (c - a x)/b written as (P x + Q) / M with integers, M > 0.
struct AffineBound {
  Integer P, Q, M;
};

AffineBound affine(const HalfPlane& h) {
  const Scalar p = -h.a / h.b;
  const Scalar q = h.c / h.b;
  Integer M;
  mpz_lcm(M.get_mpz_t(), p.get_den_mpz_t(), q.get_den_mpz_t());
  return {p.get_num() * (M / p.get_den()), q.get_num() * (M / q.get_den()), M};
}

// Sum over columns s .. s+n-1 of the integer upper bound implied by h (b > 0).
Integer sum_upper(const HalfPlane& h, const AffineBound& f, const Integer& s, const Integer& n) {
  const Integer off = f.P * s + f.Q - (h.closed ? 0 : 1);
  return floor_sum(n, f.M, f.P, off);
}

// Sum of the integer lower bound implied by h (b < 0).
Integer sum_lower(const HalfPlane& h, const AffineBound& f, const Integer& s, const Integer& n) {
  if (h.closed) return -floor_sum(n, f.M, -f.P, -(f.P * s + f.Q));
  return floor_sum(n, f.M, f.P, f.P * s + f.Q) + n;
}

std::optional<LatticePoint> check_column(const std::vector<HalfPlane>& hs, const Integer& x) {
  const Scalar xs(x);
  std::optional<Integer> lo, hi;
  for (const auto& h : hs) {
    if (h.b == 0) {
      if (!h.admits(xs, 0)) return std::nullopt;
      continue;
    }
    const Integer v = column_bound(h, xs);
    if (h.b > 0) {
      if (!hi || v < *hi) hi = v;
    } else {
      if (!lo || v > *lo) lo = v;
    }
  }
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return LatticePoint{x, *lo};
}

// Active constraint at mid among those with the given sign of b: the tightest
// bound, preferring an open constraint when two lines coincide.
const HalfPlane* active(const std::vector<HalfPlane>& hs, const Scalar& mid, int b_sign) {
  const HalfPlane* best = nullptr;
  Scalar best_v;
  for (const auto& h : hs) {
    if (sgn(h.b) != b_sign) continue;
    Scalar v = bound_at(h, mid);
    bool take = !best;
    if (best) {
      const int c = cmp(v, best_v);
      take = (b_sign > 0 ? c < 0 : c > 0) || (c == 0 && best->closed && !h.closed);
    }
    if (take) {
      best = &h;
      best_v = std::move(v);
    }
  }
  return best;
}

}  // namespace

std::optional<LatticePoint> lowest_leftmost(const std::vector<HalfPlane>& constraints,
                                            const LatticeBox& box) {
  if (box.empty()) return std::nullopt;
  std::vector<HalfPlane> hs = constraints;
  hs.push_back({-1, 0, -Scalar(box.xlo), true});
  hs.push_back({1, 0, Scalar(box.xhi), true});
  hs.push_back({0, -1, -Scalar(box.ylo), true});
  hs.push_back({0, 1, Scalar(box.yhi), true});
  for (const auto& h : hs) {
    if (h.a == 0 && h.b == 0) {
      if (h.closed ? 0 <= h.c : 0 < h.c) continue;
      return std::nullopt;
    }
  }
  hs.erase(std::remove_if(hs.begin(), hs.end(), [](const HalfPlane& h) { return h.a == 0 && h.b == 0; }),
           hs.end());

  // Abscissae where the active constraints can change.
  const Scalar xlo(box.xlo), xhi(box.xhi);
  std::vector<Scalar> xs{xlo, xhi};
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].b == 0) {
      const Scalar x = hs[i].c / hs[i].a;
      if (xlo < x && x < xhi) xs.push_back(x);
      continue;
    }
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (hs[j].b == 0) continue;
      const Scalar det = hs[i].a * hs[j].b - hs[j].a * hs[i].b;
      if (det == 0) continue;
      const Scalar x = (hs[i].c * hs[j].b - hs[j].c * hs[i].b) / det;
      if (xlo < x && x < xhi) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) {
      // Integer columns strictly between two breakpoints share one upper and
      // one lower active constraint.
      const Integer first = floor_of(xs[k - 1]) + 1;
      const Integer last = ceil_of(xs[k]) - 1;
      if (first <= last) {
        const Scalar mid = (xs[k - 1] + xs[k]) / 2;
        bool blocked = false;
        for (const auto& h : hs) {
          if (h.b == 0 && !h.admits(mid, 0)) blocked = true;
        }
        const HalfPlane* up = active(hs, mid, 1);
        const HalfPlane* lo = active(hs, mid, -1);
        if (!blocked && up && lo) {
          const int gap = cmp(bound_at(*up, mid), bound_at(*lo, mid));
          if (gap > 0 || (gap == 0 && up->closed && lo->closed)) {
            const AffineBound fu = affine(*up);
            const AffineBound fl = affine(*lo);
            // Column counts are nonnegative here, so their prefix sums are
            // monotone; find the first column with a positive count.
            auto count = [&](const Integer& n) -> Integer {
              return sum_upper(*up, fu, first, n) - sum_lower(*lo, fl, first, n) + n;
            };
            const Integer total = last - first + 1;
            if (count(total) > 0) {
              Integer a = 1, b = total;
              while (a < b) {
                const Integer m = (a + b) / 2;
                if (count(m) > 0) b = m;
                else a = m + 1;
              }
              const Integer x = first + a - 1;
              if (auto hit = check_column(hs, x)) return hit;
              throw InternalError("lattice search: column count disagrees with direct check");
            }
          }
        }
      }
    }
    if (xs[k].get_den() == 1) {
      if (auto hit = check_column(hs, xs[k].get_num())) return hit;
    }
  }
  return std::nullopt;
}

std::vector<HalfPlane> half_planes_of(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t m = v.size();
  if (m == 0) throw PreconditionError("polygon without vertices");
  if (poly.closed.size() != m) throw PreconditionError("polygon needs one flag per edge");
  if (m >= 3) {
    for (std::size_t i = 0; i < m; ++i) {
      if (orient2d(v[i], v[(i + 1) % m], v[(i + 2) % m]) <= 0) {
        throw PreconditionError("polygon is not strictly convex and counterclockwise");
      }
    }
  }
  std::vector<HalfPlane> hs;
  if (m == 1) return hs;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % m];
    if (a == b) throw PreconditionError("polygon with repeated vertex");
    // Interior to the left: orient2d(a, b, q) >= 0.
    const Scalar ha = b.y - a.y;
    const Scalar hb = a.x - b.x;
    hs.push_back({ha, hb, ha * a.x + hb * a.y, static_cast<bool>(poly.closed[i])});
  }
  return hs;
}

LatticeBox bounding_box(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.empty()) throw PreconditionError("polygon without vertices");
  Scalar xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
  for (const auto& p : v) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return {ceil_of(xmin), floor_of(xmax), ceil_of(ymin), floor_of(ymax)};
}

std::optional<LatticePoint> lowest_leftmost_lattice_point(const ConvexPolygon& poly) {
  auto hs = half_planes_of(poly);
  if (poly.vertices.size() == 1 && !poly.closed[0]) return std::nullopt;
  return lowest_leftmost(hs, bounding_box(poly));
}

std::optional<LatticePoint> lattice_point_brute(const ConvexPolygon& poly, std::uint64_t budget) {
  const auto hs = half_planes_of(poly);
  if (poly.vertices.size() == 1 && !poly.closed[0]) return std::nullopt;
  const LatticeBox box = bounding_box(poly);
  if (box.empty()) return std::nullopt;
  const Integer cells = (box.xhi - box.xlo + 1) * (box.yhi - box.ylo + 1);
  if (cells > Integer(std::to_string(budget))) {
    throw BudgetExceeded("lattice scan of " + cells.get_str() + " points exceeds the budget");
  }
  for (Integer x = box.xlo; x <= box.xhi; ++x) {
    for (Integer y = box.ylo; y <= box.yhi; ++y) {
      const Scalar sx(x), sy(y);
      bool ok = true;
      for (const auto& h : hs) {
        if (!h.admits(sx, sy)) {
          ok = false;
          break;
        }
      }
      if (ok) return LatticePoint{x, y};
    }
  }
  return std::nullopt;
}

}  // namespace sampvis
