#include "sampvis/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sampvis {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

class Cursor {
 public:
  Cursor(const std::vector<std::string>& toks, int line) : toks_(toks), line_(line) {}

  const std::string& next() {
    if (pos_ >= toks_.size()) throw ParseError(line_, "record ends early");
    return toks_[pos_++];
  }
  void expect(const std::string& word) {
    if (next() != word) throw ParseError(line_, "expected '" + word + "'");
  }
  Scalar scalar() {
    const std::string& t = next();
    try {
      return parse_scalar(t);
    } catch (const std::exception&) {
      throw ParseError(line_, "bad number '" + t + "'");
    }
  }
  Line2 line() {
    Scalar a = scalar(), b = scalar(), c = scalar();
    if (a == 0 && b == 0) throw ParseError(line_, "degenerate line");
    return Line2(a, b, c);
  }
  bool done() const { return pos_ == toks_.size(); }
  int number() const { return line_; }

 private:
  const std::vector<std::string>& toks_;
  std::size_t pos_ = 0;
  int line_;
};

void put_line(std::ostringstream& os, const Line2& l) {
  os << to_string(l.a()) << ' ' << to_string(l.b()) << ' ' << to_string(l.c());
}

}  // namespace

std::string serialize_trapezoids(const std::vector<Trapezoid>& traps) {
  std::ostringstream os;
  os << "# trapezoids " << traps.size() << "\n";
  for (const auto& t : traps) {
    os << "trap " << t.triangle_id << ' ' << to_string(t.x_left) << ' ' << to_string(t.x_right)
       << " top ";
    put_line(os, t.top);
    os << " bottom ";
    put_line(os, t.bottom);
    os << " corners";
    for (const auto& c : t.corners()) os << ' ' << to_string(c.x) << ' ' << to_string(c.y);
    os << " prov " << to_string(t.provenance.top) << ' ' << to_string(t.provenance.bottom) << ' '
       << to_string(t.provenance.left) << ' ' << to_string(t.provenance.right) << "\n";
  }
  return os.str();
}

std::vector<Trapezoid> parse_trapezoids(const std::string& text) {
  std::vector<Trapezoid> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto toks = split_ws(raw);
    if (toks.empty() || toks[0][0] == '#') continue;
    Cursor c(toks, number);
    c.expect("trap");
    Trapezoid t;
    try {
      std::size_t used = 0;
      const std::string& id = c.next();
      t.triangle_id = std::stoi(id, &used);
      if (used != id.size() || t.triangle_id < kBackgroundId) throw std::invalid_argument("");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(number, "bad triangle id");
    }
    t.x_left = c.scalar();
    t.x_right = c.scalar();
    if (!(t.x_left < t.x_right)) throw ParseError(number, "x_left must be below x_right");
    c.expect("top");
    t.top = c.line();
    c.expect("bottom");
    t.bottom = c.line();
    if (t.top.is_vertical() || t.bottom.is_vertical()) throw ParseError(number, "vertical top or bottom");
    c.expect("corners");
    const auto corners = t.corners();
    for (const auto& k : corners) {
      const Scalar x = c.scalar(), y = c.scalar();
      if (!(Point2{x, y} == k)) throw ParseError(number, "corners disagree with the lines");
    }
    c.expect("prov");
    try {
      t.provenance.top = parse_boundary_ref(c.next());
      t.provenance.bottom = parse_boundary_ref(c.next());
      t.provenance.left = parse_wall_cause(c.next());
      t.provenance.right = parse_wall_cause(c.next());
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(number, e.what());
    }
    if (!c.done()) throw ParseError(number, "trailing tokens");
    out.push_back(std::move(t));
  }
  return out;
}

StatsMap stats_entries(const SvmStats& s) {
  StatsMap m;
  auto put = [&](const char* k, std::uint64_t v) { m.emplace_back(k, std::to_string(v)); };
  put("n", s.n);
  put("p", s.p);
  put("t", s.t);
  put("build_calls", s.build_calls);
  put("marked_pixels", s.marked_pixels);
  put("locator_queries", s.locator_queries);
  put("locator_hits", s.locator_hits);
  put("gaps_created", s.gaps_created);
  put("events_processed", s.events_processed);
  put("gap_events", s.gap_events);
  put("trap_expiries", s.trap_expiries);
  put("lattice_queries", s.lattice_queries);
  put("q_ray_shoot", s.queries.ray_shoot);
  put("q_drag_vertical", s.queries.drag_vertical);
  put("q_drag_oblique", s.queries.drag_oblique);
  put("q_max_blocking_vertex", s.queries.max_blocking_vertex);
  put("q_pixels_in_trapezoid", s.queries.pixels_in_trapezoid);
  return m;
}

std::string serialize_stats(const StatsMap& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += k + "=" + v + "\n";
  return out;
}

StatsMap parse_stats(const std::string& text) {
  StatsMap m;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.empty() || raw[0] == '#') continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(number, "expected key=value");
    m.emplace_back(raw.substr(0, eq), raw.substr(eq + 1));
  }
  return m;
}

std::optional<std::string> stats_value(const StatsMap& entries, const std::string& key) {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Rgb color_of(int triangle_id) {
  if (triangle_id == kBackgroundId) return {24, 24, 32};
  std::uint64_t z = static_cast<std::uint64_t>(triangle_id) + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  auto ch = [&](int shift) { return static_cast<unsigned char>(64 + ((z >> shift) & 0xFF) % 176); };
  return {ch(0), ch(8), ch(16)};
}

namespace {

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Viewport& vp, const std::vector<Trapezoid>& traps,
                       const PixelSet* pixels, std::size_t max_dots) {
  const double x0 = vp.xmin.get_d(), y0 = vp.ymin.get_d();
  const double w = Scalar(vp.xmax - vp.xmin).get_d(), h = Scalar(vp.ymax - vp.ymin).get_d();
  const double scale = 800.0 / std::max(w, h);
  auto X = [&](const Scalar& x) { return fmt((x.get_d() - x0) * scale); };
  auto Y = [&](const Scalar& y) { return fmt((h - (y.get_d() - y0)) * scale); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w * scale)
     << "\" height=\"" << fmt(h * scale) << "\">\n";
  os << "<!-- decimal coordinates, for viewing only -->\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w * scale) << "\" height=\"" << fmt(h * scale)
     << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& t : traps) {
    os << "<polygon points=\"";
    bool first = true;
    for (const auto& c : t.corners()) {
      os << (first ? "" : " ") << X(c.x) << "," << Y(c.y);
      first = false;
    }
    os << "\" fill=\"" << hex(color_of(t.triangle_id)) << "\" stroke=\"black\" stroke-width=\"0.5\">"
       << "<title>T" << t.triangle_id << "</title></polygon>\n";
  }
  if (pixels && pixels->size() <= max_dots) {
    for (std::size_t k = 0; k < pixels->size(); ++k) {
      const Point2 q = pixels->point(k);
      os << "<circle cx=\"" << X(q.x) << "\" cy=\"" << Y(q.y) << "\" r=\"1.5\" fill=\"black\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_ppm(const PixelSet& pixels, const std::vector<int>& ids) {
  if (!pixels.is_grid()) throw PreconditionError("PPM output needs a grid pixel set");
  if (ids.size() != pixels.size()) throw PreconditionError("one id per pixel expected");
  const GridSpec& g = pixels.grid();
  std::string out = "P6\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
  for (int row = 0; row < g.height; ++row) {
    const int j = g.height - 1 - row;
    for (int i = 0; i < g.width; ++i) {
      const Rgb c = color_of(ids[static_cast<std::size_t>(j) * g.width + i]);
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  return out;
}

std::vector<int> pixel_ids(const std::vector<Trapezoid>& traps, const PixelSet& pixels) {
  const auto owner = assign_pixels(traps, pixels);
  std::vector<int> ids(owner.size(), kBackgroundId);
  for (std::size_t k = 0; k < owner.size(); ++k) {
    if (owner[k] >= 0) ids[k] = traps[owner[k]].triangle_id;
  }
  return ids;
}

const std::string& CsvTable::at(std::size_t r, const std::string& column) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == column) return rows.at(r).at(c);
  }
  throw std::out_of_range("no column '" + column + "'");
}

std::string serialize_csv(const CsvTable& table) {
  auto row = [](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find_first_of(",\n\"") != std::string::npos) {
        throw std::invalid_argument("csv cell with separator: " + cells[i]);
      }
      s += (i ? "," : "") + cells[i];
    }
    return s + "\n";
  };
  std::string out = row(table.header);
  for (const auto& r : table.rows) {
    if (r.size() != table.header.size()) throw std::invalid_argument("csv row width mismatch");
    out += row(r);
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = raw.find(',', start);
      cells.push_back(raw.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size()) throw ParseError(number, "csv row width mismatch");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace sampvis
