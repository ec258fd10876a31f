#include "sampvis/trapezoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace sampvis {

std::array<Point2, 4> Trapezoid::corners() const {
  return {Point2{x_left, bottom.y_at(x_left)}, Point2{x_right, bottom.y_at(x_right)},
          Point2{x_right, top.y_at(x_right)}, Point2{x_left, top.y_at(x_left)}};
}

bool contains(const Trapezoid& trap, const Point2& q) {
  if (q.x < trap.x_left || q.x >= trap.x_right) return false;
  return trap.bottom.y_at(q.x) <= q.y && q.y < trap.top.y_at(q.x);
}

std::vector<std::size_t> pixels_inside(const Trapezoid& trap, const PixelSet& pixels) {
  std::vector<std::size_t> out;
  if (pixels.size() == 0) return out;
  if (pixels.is_grid()) {
    const GridSpec& g = pixels.grid();
    const Integer i_lo = std::max<Integer>(0, ceil_of((trap.x_left - g.origin.x) / g.dx));
    const Integer i_hi =
        std::min<Integer>(g.width - 1, ceil_of((trap.x_right - g.origin.x) / g.dx) - 1);
    for (Integer i = i_lo; i <= i_hi; ++i) {
      const Scalar x = g.origin.x + Scalar(i) * g.dx;
      const Integer j_lo = std::max<Integer>(0, ceil_of((trap.bottom.y_at(x) - g.origin.y) / g.dy));
      const Integer j_hi =
          std::min<Integer>(g.height - 1, ceil_of((trap.top.y_at(x) - g.origin.y) / g.dy) - 1);
      for (Integer j = j_lo; j <= j_hi; ++j) {
        out.push_back(static_cast<std::size_t>(j.get_si()) * g.width + i.get_si());
      }
    }
  } else {
    const auto& pts = pixels.points();
    const auto& order = pixels.x_order();
    auto it = std::lower_bound(order.begin(), order.end(), trap.x_left,
                               [&](std::size_t k, const Scalar& x) { return pts[k].x < x; });
    for (; it != order.end() && pts[*it].x < trap.x_right; ++it) {
      if (contains(trap, pts[*it])) out.push_back(*it);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TrapKey key_of(const Trapezoid& trap) {
  return {trap.triangle_id, trap.x_left, trap.x_right, trap.top, trap.bottom};
}

int compare(const TrapKey& a, const TrapKey& b) {
  if (a.triangle_id != b.triangle_id) return a.triangle_id < b.triangle_id ? -1 : 1;
  if (int c = cmp(a.x_left, b.x_left); c != 0) return c;
  if (int c = cmp(a.x_right, b.x_right); c != 0) return c;
  if (int c = compare(a.top, b.top); c != 0) return c;
  return compare(a.bottom, b.bottom);
}

bool same_geometry(const Trapezoid& a, const Trapezoid& b) {
  return compare(key_of(a), key_of(b)) == 0;
}

void sort_canonical(std::vector<Trapezoid>& traps) {
  std::sort(traps.begin(), traps.end(), [](const Trapezoid& a, const Trapezoid& b) {
    return compare(key_of(a), key_of(b)) < 0;
  });
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::OwnEdge: return "own";
    case BoundaryKind::Curtain: return "curtain";
    case BoundaryKind::ViewportWall: return "viewport";
  }
  return "?";
}

std::string to_string(ViewportSide s) {
  switch (s) {
    case ViewportSide::Bottom: return "bottom";
    case ViewportSide::Top: return "top";
    case ViewportSide::Left: return "left";
    case ViewportSide::Right: return "right";
  }
  return "?";
}

std::string to_string(WallCause c) {
  switch (c) {
    case WallCause::TopStop: return "top-stop";
    case WallCause::BottomStop: return "bottom-stop";
    case WallCause::BlockingVertex: return "vertex";
    case WallCause::Viewport: return "viewport";
  }
  return "?";
}

// own:T3.1, curtain:T5.0, viewport:top
std::string to_string(const BoundaryRef& b) {
  if (b.kind == BoundaryKind::ViewportWall) return "viewport:" + to_string(b.side);
  return to_string(b.kind) + ":T" + std::to_string(b.triangle_id) + "." +
         std::to_string(b.edge_index);
}

BoundaryRef parse_boundary_ref(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad boundary tag '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  BoundaryRef b;
  if (kind == "viewport") {
    b.kind = BoundaryKind::ViewportWall;
    if (rest == "bottom") b.side = ViewportSide::Bottom;
    else if (rest == "top") b.side = ViewportSide::Top;
    else if (rest == "left") b.side = ViewportSide::Left;
    else if (rest == "right") b.side = ViewportSide::Right;
    else throw std::invalid_argument("bad viewport side '" + rest + "'");
    return b;
  }
  if (kind == "own") b.kind = BoundaryKind::OwnEdge;
  else if (kind == "curtain") b.kind = BoundaryKind::Curtain;
  else throw std::invalid_argument("bad boundary kind '" + kind + "'");
  const auto dot = rest.find('.');
  if (rest.size() < 4 || rest[0] != 'T' || dot == std::string::npos) {
    throw std::invalid_argument("bad edge tag '" + rest + "'");
  }
  try {
    std::size_t used = 0;
    b.triangle_id = std::stoi(rest.substr(1, dot - 1), &used);
    if (used != dot - 1) throw std::invalid_argument("");
    b.edge_index = std::stoi(rest.substr(dot + 1), &used);
    if (used != rest.size() - dot - 1 || b.edge_index < 0 || b.edge_index > 2) {
      throw std::invalid_argument("");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad edge tag '" + rest + "'");
  }
  return b;
}

WallCause parse_wall_cause(const std::string& text) {
  if (text == "top-stop") return WallCause::TopStop;
  if (text == "bottom-stop") return WallCause::BottomStop;
  if (text == "vertex") return WallCause::BlockingVertex;
  if (text == "viewport") return WallCause::Viewport;
  throw std::invalid_argument("bad wall cause '" + text + "'");
}

}  // namespace sampvis
