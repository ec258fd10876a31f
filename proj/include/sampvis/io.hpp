#pragma once
// Persisted formats: trapezoid lists, key=value stats, SVG and PPM pictures,
// and the bench CSV.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sampvis/scene.hpp"
#include "sampvis/svm_builder.hpp"
#include "sampvis/trapezoid.hpp"

namespace sampvis {

// One record per line:
//   trap <id> <x_left> <x_right> top <a> <b> <c> bottom <a> <b> <c>
//        corners <x y> x4 prov <top-tag> <bottom-tag> <left-cause> <right-cause>
// Corners are redundant and checked on reading. Throws ParseError.
std::string serialize_trapezoids(const std::vector<Trapezoid>& traps);
std::vector<Trapezoid> parse_trapezoids(const std::string& text);

// Ordered key=value lines. Values are integers or plain words.
using StatsMap = std::vector<std::pair<std::string, std::string>>;
StatsMap stats_entries(const SvmStats& stats);
std::string serialize_stats(const StatsMap& entries);
StatsMap parse_stats(const std::string& text);
std::optional<std::string> stats_value(const StatsMap& entries, const std::string& key);

struct Rgb {
  unsigned char r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};
Rgb color_of(int triangle_id);

// Filled cells keyed by triangle id, outlines, and pixels as dots (skipped
// for more than max_dots pixels). Coordinates are decimal approximations.
std::string render_svg(const Viewport& viewport, const std::vector<Trapezoid>& traps,
                       const PixelSet* pixels, std::size_t max_dots = 16384);

// Binary P6 image of per-pixel triangle ids; row 0 is the top grid row.
// Throws PreconditionError for non-grid pixel sets or size mismatch.
std::string render_ppm(const PixelSet& pixels, const std::vector<int>& ids);

// Triangle id per pixel from a trapezoid list (background where uncovered).
std::vector<int> pixel_ids(const std::vector<Trapezoid>& traps, const PixelSet& pixels);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column value of row r; throws std::out_of_range for unknown columns.
  const std::string& at(std::size_t r, const std::string& column) const;
};

std::string serialize_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

}  // namespace sampvis
