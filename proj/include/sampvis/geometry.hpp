#pragma once
// Exact geometric kernel: rational scalars, 2D/3D points, triangles, lines
// and the predicates the rest of the library is built on.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sampvis {

using Scalar = mpq_class;
using Integer = mpz_class;

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline int sign(const Scalar& v) { return sgn(v); }
Integer floor_of(const Scalar& v);
Integer ceil_of(const Scalar& v);

// Parses "a", "-a" or "a/b" (integers only, exact). Throws std::invalid_argument.
Scalar parse_scalar(const std::string& text);
// Canonical text form: "a" or "a/b".
std::string to_string(const Scalar& v);

struct Point2 {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

// Lexicographic (x, then y).
bool lex_less(const Point2& a, const Point2& b);

struct Point3 {
  Scalar x;
  Scalar y;
  Scalar z;

  Point2 xy() const { return {x, y}; }
  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

// Sign of the signed area of (a, b, c): +1 counterclockwise, 0 collinear, -1 clockwise.
int orient2d(const Point2& a, const Point2& b, const Point2& c);

// Sign of det[b-a, c-a, d-a]; positive when d lies on the side of plane(a,b,c)
// that the right-hand normal (b-a)x(c-a) points to.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

/// Non-vertical plane z = a*x + b*y + c.
struct Plane {
  Scalar a;
  Scalar b;
  Scalar c;

  Scalar z_at(const Scalar& x, const Scalar& y) const { return a * x + b * y + c; }
  Scalar z_at(const Point2& q) const { return z_at(q.x, q.y); }
};

/// Line a*x + b*y = c, stored in canonical form: b == 1 when the line is not
/// vertical (so y = c - a*x), otherwise a == 1 and b == 0.
class Line2 {
 public:
  Line2() = default;
  Line2(Scalar a, Scalar b, Scalar c);

  static Line2 through(const Point2& p, const Point2& q);
  static Line2 horizontal(const Scalar& y);
  static Line2 from_slope(const Scalar& slope, const Scalar& intercept);

  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  const Scalar& c() const { return c_; }

  bool is_vertical() const { return b_ == 0; }
  // Only meaningful for non-vertical lines.
  Scalar slope() const;
  const Scalar& intercept() const { return c_; }

  // Throws PreconditionError for vertical lines.
  Scalar y_at(const Scalar& x) const;
  // Sign of (a*x + b*y - c) for a point; for non-vertical lines positive means above.
  int side(const Point2& p) const;

  friend bool operator==(const Line2& l, const Line2& m) {
    return l.a_ == m.a_ && l.b_ == m.b_ && l.c_ == m.c_;
  }

 private:
  Scalar a_{0};
  Scalar b_{1};
  Scalar c_{0};
};

// Total order on canonical lines (used for canonical keys).
int compare(const Line2& l, const Line2& m);

// Intersection point of two non-parallel lines.
std::optional<Point2> intersect(const Line2& l, const Line2& m);

/// Exact y on a non-vertical line.
inline Scalar line_y_at(const Line2& l, const Scalar& x) { return l.y_at(x); }

enum class Containment { Inside, Boundary, Outside };

struct Triangle {
  int id = 0;
  std::array<Point3, 3> v;

  // True when the xy-projection is collinear (equivalently the supporting
  // plane contains the z direction).
  bool projection_degenerate() const;
  // Throws DegenerateError when the plane is parallel to the z axis.
  Plane plane() const;
  // +1 if the projected vertices are counterclockwise, -1 if clockwise, 0 if degenerate.
  int projected_orientation() const;
};

Containment point_in_projected_triangle(const Point2& q, const Triangle& t);

// Depth of t's plane above q. Requires q in the closed projection of t.
Scalar z_at(const Triangle& t, const Point2& q);

struct Edge3 {
  int owner = 0;
  int index = 0;  // 0..2, edge from v[index] to v[(index+1)%3]
  Point3 a;
  Point3 b;
};

Edge3 triangle_edge(const Triangle& t, int index);

struct EdgeCrossing {
  Scalar y;
  Scalar z;
  // Set only for edges whose projection is vertical: the crossing is the
  // whole segment from (y, z) to (y_end, z_end), with y <= y_end.
  std::optional<Scalar> y_end;
  std::optional<Scalar> z_end;
};

std::optional<EdgeCrossing> edge_crossing_y(const Edge3& e, const Scalar& x);

}  // namespace sampvis
