#pragma once
// Subcommands of svmtool. Each returns the process exit code:
// 0 success, 1 verification diff, 2 usage or format error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sampvis/generate.hpp"
#include "sampvis/query_engine.hpp"
#include "sampvis/scene.hpp"
#include "sampvis/svm_builder.hpp"

namespace sampvis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiff = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Offline, Online, Sweep };
Mode parse_mode(const std::string& text);
std::string to_string(Mode m);

// Online mode inserts pixels in canonical order for seed 0, else in a
// seeded random permutation.
SampledVisibilityMap run_mode(const QueryEngine& engine, const PixelSet& pixels, Mode mode,
                              std::uint64_t seed = 0);

struct Inputs {
  std::string scene_path;
  std::string pixels_path;  // pixel spec file
  std::string grid;         // inline "x0 y0 dx dy W H", used when pixels_path is empty
  std::string viewport;     // inline "xmin ymin xmax ymax", overrides the scene's
  bool validate = true;
};

struct LoadedInputs {
  Scene scene;  // viewport resolved
  PixelSet pixels;
};
LoadedInputs load_inputs(const Inputs& in);

struct BuildOptions {
  Inputs inputs;
  EngineKind engine = EngineKind::Accelerated;
  Mode mode = Mode::Offline;
  std::uint64_t seed = 0;
  std::string out;  // writes <out>.traps and <out>.stats
  std::string svg;
  std::string ppm;
};
int cmd_build(const BuildOptions& options, std::ostream& log);

struct VerifyOptions {
  Inputs inputs;
  EngineKind engine = EngineKind::Accelerated;
  std::string traps;  // verify this file instead of building
  std::size_t budget = 64;
  std::uint64_t seed = 0;
};
int cmd_verify(const VerifyOptions& options, std::ostream& out);

struct RenderOptions {
  std::string traps;
  Inputs inputs;  // scene and pixels (scene optional when traps is given)
  std::string target = "svg";
  std::string out;
};
int cmd_render(const RenderOptions& options, std::ostream& log);

struct GenerateOptions {
  GenerateParams params;
  std::string out;  // stdout when empty
};
int cmd_generate(const GenerateOptions& options, std::ostream& out);

struct BenchOptions {
  std::vector<std::string> families{"layers", "fence", "boundary-clutter"};
  std::vector<int> sizes{8, 16};
  std::vector<int> grids{16, 64};
  std::vector<std::string> modes{"offline", "online", "sweep"};
  std::uint64_t seed = 1;
  EngineKind engine = EngineKind::Accelerated;
  std::size_t budget = 64;  // oracle size limit for the v column
  bool single_triangle_series = true;
  std::string out;  // stdout when empty
};
int cmd_bench(const BenchOptions& options, std::ostream& out);

struct StatsOptions {
  std::string traps;
  Inputs inputs;  // optional scene and pixels for oracle-side numbers
  std::size_t budget = 64;
};
int cmd_stats(const StatsOptions& options, std::ostream& out);

// Scene S1: one horizontal triangle at z=10 covering the viewport [0,16]^2.
Scene scene_s1();

}  // namespace sampvis::cli
