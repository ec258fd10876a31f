// svmtool: build, verify, render, generate, bench and stats for sampled
// visibility maps.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sampvis/lattice.hpp"

using namespace sampvis;
using namespace sampvis::cli;

namespace {

void add_inputs(CLI::App* app, Inputs& in, bool scene_required) {
  auto* s = app->add_option("--scene", in.scene_path, "scene file");
  if (scene_required) s->required();
  app->add_option("--pixels", in.pixels_path, "pixel spec file (grid or points)");
  app->add_option("--grid", in.grid, "inline grid 'x0 y0 dx dy W H'");
  app->add_option("--viewport", in.viewport, "viewport 'xmin ymin xmax ymax' (overrides the scene)");
  app->add_flag("--no-validate{false}", in.validate, "skip the pairwise disjointness check");
}

void add_engine(CLI::App* app, std::string& engine) {
  app->add_option("--engine", engine, "query engine")
      ->check(CLI::IsMember({"baseline", "accel"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampled visibility maps of triangle scenes"};
  app.require_subcommand(1);

  BuildOptions build;
  std::string build_engine = "accel", build_mode = "offline";
  auto* b = app.add_subcommand("build", "compute the sampled visibility map");
  add_inputs(b, build.inputs, true);
  add_engine(b, build_engine);
  b->add_option("--mode", build_mode, "construction")
      ->check(CLI::IsMember({"offline", "online", "sweep"}))
      ->capture_default_str();
  b->add_option("--seed", build.seed, "online insertion order (0 = canonical)")->capture_default_str();
  b->add_option("--out", build.out, "output prefix for .traps and .stats (stdout when absent)");
  b->add_option("--svg", build.svg, "also write an SVG picture");
  b->add_option("--ppm", build.ppm, "also write a PPM image (grid pixels only)");

  VerifyOptions verify;
  std::string verify_engine = "accel";
  auto* v = app.add_subcommand("verify", "compare every mode (or a trapezoid file) with the oracles");
  add_inputs(v, verify.inputs, true);
  add_engine(v, verify_engine);
  v->add_option("--traps", verify.traps, "verify this trapezoid file instead of building");
  v->add_option("--budget", verify.budget, "largest scene for the analytic oracle")->capture_default_str();
  v->add_option("--seed", verify.seed, "online insertion order")->capture_default_str();

  RenderOptions render;
  auto* r = app.add_subcommand("render", "draw a trapezoid list or a scene");
  add_inputs(r, render.inputs, false);
  r->add_option("--traps", render.traps, "trapezoid file");
  r->add_option("--target", render.target, "svg or ppm")
      ->check(CLI::IsMember({"svg", "ppm"}))
      ->capture_default_str();
  r->add_option("--out", render.out, "output file")->required();

  GenerateOptions gen;
  std::string family = "layers";
  auto* g = app.add_subcommand("generate", "write a seeded random scene");
  g->add_option("--family", family, "layers, boundary-clutter or fence")
      ->check(CLI::IsMember({"layers", "boundary-clutter", "fence"}))
      ->capture_default_str();
  g->add_option("-n", gen.params.n, "number of triangles")->capture_default_str();
  g->add_option("--seed", gen.params.seed, "random seed")->capture_default_str();
  g->add_option("--extent", gen.params.extent, "viewport side")->capture_default_str();
  g->add_option("--denominator", gen.params.denominator, "coordinate denominator")->capture_default_str();
  g->add_option("--out", gen.out, "scene file (stdout when absent)");

  BenchOptions bench;
  std::string bench_engine = "accel";
  bool no_s1 = false;
  auto* be = app.add_subcommand("bench", "run a scenes x grids x modes matrix and print CSV");
  be->add_option("--families", bench.families, "scene families")->delimiter(',')->capture_default_str();
  be->add_option("--sizes", bench.sizes, "triangle counts")->delimiter(',')->capture_default_str();
  be->add_option("--grids", bench.grids, "grid sides")->delimiter(',')->capture_default_str();
  be->add_option("--modes", bench.modes, "modes")->delimiter(',')->capture_default_str();
  be->add_option("--seed", bench.seed, "scene seed")->capture_default_str();
  be->add_option("--budget", bench.budget, "largest scene for the v column")->capture_default_str();
  be->add_flag("--no-s1", no_s1, "skip the single-triangle series");
  add_engine(be, bench_engine);
  be->add_option("--out", bench.out, "CSV file (stdout when absent)");

  StatsOptions stats;
  auto* st = app.add_subcommand("stats", "summarize a trapezoid file");
  add_inputs(st, stats.inputs, false);
  st->add_option("--traps", stats.traps, "trapezoid file")->required();
  st->add_option("--budget", stats.budget, "largest scene for the analytic oracle")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*b) {
      build.engine = parse_engine_kind(build_engine);
      build.mode = parse_mode(build_mode);
      return cmd_build(build, std::cout);
    }
    if (*v) {
      verify.engine = parse_engine_kind(verify_engine);
      return cmd_verify(verify, std::cout);
    }
    if (*r) return cmd_render(render, std::cerr);
    if (*g) {
      gen.params.family = parse_family(family);
      return cmd_generate(gen, std::cout);
    }
    if (*be) {
      bench.engine = parse_engine_kind(bench_engine);
      bench.single_triangle_series = !no_s1;
      return cmd_bench(bench, std::cout);
    }
    if (*st) return cmd_stats(stats, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SceneError& e) {
    std::cerr << "scene error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
