#include "sampvis/geometry.hpp"

#include <cctype>

namespace sampvis {

Integer floor_of(const Scalar& v) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Scalar& v) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_text(text)) throw std::invalid_argument("not an exact number: '" + text + "'");
    return Scalar(parse_integer(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("not an exact number: '" + text + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Scalar r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Scalar& v) { return v.get_str(10); }

bool lex_less(const Point2& a, const Point2& b) {
  const int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return a.y < b.y;
}

int orient2d(const Point2& a, const Point2& b, const Point2& c) {
  const Scalar det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Scalar ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  const Scalar vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  const Scalar wx = d.x - a.x, wy = d.y - a.y, wz = d.z - a.z;
  const Scalar det = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
  return sgn(det);
}

Line2::Line2(Scalar a, Scalar b, Scalar c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (b_ != 0) {
    a_ /= b_;
    c_ /= b_;
    b_ = 1;
  } else {
    if (a_ == 0) throw DegenerateError("line with a == b == 0");
    c_ /= a_;
    a_ = 1;
  }
}

Line2 Line2::through(const Point2& p, const Point2& q) {
  if (p == q) throw DegenerateError("line through coincident points");
  // (q.y - p.y) * x - (q.x - p.x) * y = (q.y - p.y) * p.x - (q.x - p.x) * p.y
  const Scalar a = q.y - p.y;
  const Scalar b = p.x - q.x;
  const Scalar c = a * p.x + b * p.y;
  return Line2(a, b, c);
}

Line2 Line2::horizontal(const Scalar& y) { return Line2(0, 1, y); }

Line2 Line2::from_slope(const Scalar& slope, const Scalar& intercept) {
  return Line2(-slope, 1, intercept);
}

Scalar Line2::slope() const {
  if (is_vertical()) throw PreconditionError("slope of a vertical line");
  return -a_;
}

Scalar Line2::y_at(const Scalar& x) const {
  if (is_vertical()) throw PreconditionError("y_at on a vertical line");
  return c_ - a_ * x;
}

int Line2::side(const Point2& p) const { return sgn(a_ * p.x + b_ * p.y - c_); }

int compare(const Line2& l, const Line2& m) {
  if (int c = cmp(l.b(), m.b()); c != 0) return c;
  if (int c = cmp(l.a(), m.a()); c != 0) return c;
  return cmp(l.c(), m.c());
}

std::optional<Point2> intersect(const Line2& l, const Line2& m) {
  const Scalar det = l.a() * m.b() - l.b() * m.a();
  if (det == 0) return std::nullopt;
  Scalar x = (l.c() * m.b() - l.b() * m.c()) / det;
  Scalar y = (l.a() * m.c() - l.c() * m.a()) / det;
  return Point2{std::move(x), std::move(y)};
}

int Triangle::projected_orientation() const { return orient2d(v[0].xy(), v[1].xy(), v[2].xy()); }

bool Triangle::projection_degenerate() const { return projected_orientation() == 0; }

Plane Triangle::plane() const {
  // Solve z = a x + b y + c through the three vertices by Cramer's rule.
  const Scalar x1 = v[1].x - v[0].x, y1 = v[1].y - v[0].y, z1 = v[1].z - v[0].z;
  const Scalar x2 = v[2].x - v[0].x, y2 = v[2].y - v[0].y, z2 = v[2].z - v[0].z;
  const Scalar det = x1 * y2 - x2 * y1;
  if (det == 0) throw DegenerateError("triangle plane is parallel to the z axis");
  Plane p;
  p.a = (z1 * y2 - z2 * y1) / det;
  p.b = (x1 * z2 - x2 * z1) / det;
  p.c = v[0].z - p.a * v[0].x - p.b * v[0].y;
  return p;
}

Containment point_in_projected_triangle(const Point2& q, const Triangle& t) {
  const int o = t.projected_orientation();
  if (o == 0) throw PreconditionError("point_in_projected_triangle on a degenerate triangle");
  bool on_boundary = false;
  for (int i = 0; i < 3; ++i) {
    const int s = orient2d(t.v[i].xy(), t.v[(i + 1) % 3].xy(), q) * o;
    if (s < 0) return Containment::Outside;
    if (s == 0) on_boundary = true;
  }
  return on_boundary ? Containment::Boundary : Containment::Inside;
}

Scalar z_at(const Triangle& t, const Point2& q) {
  if (t.projection_degenerate()) throw DegenerateError("triangle plane is parallel to the z axis");
  if (point_in_projected_triangle(q, t) == Containment::Outside) {
    throw PreconditionError("z_at: point outside the triangle's projection");
  }
  return t.plane().z_at(q);
}

Edge3 triangle_edge(const Triangle& t, int index) {
  return Edge3{t.id, index, t.v[index], t.v[(index + 1) % 3]};
}

std::optional<EdgeCrossing> edge_crossing_y(const Edge3& e, const Scalar& x) {
  const Point3* lo = &e.a;
  const Point3* hi = &e.b;
  if (hi->x < lo->x) std::swap(lo, hi);
  if (x < lo->x || x > hi->x) return std::nullopt;
  if (lo->x == hi->x) {
    const Point3* bottom = &e.a;
    const Point3* top = &e.b;
    if (top->y < bottom->y) std::swap(bottom, top);
    return EdgeCrossing{bottom->y, bottom->z, top->y, top->z};
  }
  const Scalar t = (x - lo->x) / (hi->x - lo->x);
  EdgeCrossing c;
  c.y = lo->y + t * (hi->y - lo->y);
  c.z = lo->z + t * (hi->z - lo->z);
  return c;
}

}  // namespace sampvis
