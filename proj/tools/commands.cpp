#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "sampvis/io.hpp"
#include "sampvis/oracle.hpp"
#include "sampvis/sweepline.hpp"

namespace sampvis::cli {

Mode parse_mode(const std::string& text) {
  if (text == "offline") return Mode::Offline;
  if (text == "online") return Mode::Online;
  if (text == "sweep") return Mode::Sweep;
  throw UsageError("unknown mode '" + text + "' (offline, online, sweep)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Offline: return "offline";
    case Mode::Online: return "online";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

SampledVisibilityMap run_mode(const QueryEngine& engine, const PixelSet& pixels, Mode mode,
                              std::uint64_t seed) {
  switch (mode) {
    case Mode::Offline: return build_svm_offline(engine, pixels);
    case Mode::Online: {
      std::vector<std::size_t> order(pixels.size());
      std::iota(order.begin(), order.end(), 0);
      if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
      }
      return build_svm_online(engine, pixels, order);
    }
    case Mode::Sweep:
      if (!pixels.is_grid()) throw UsageError("sweep mode needs a grid pixel spec");
      return sweep_build(engine, pixels);
  }
  throw UsageError("unknown mode");
}

namespace {

Viewport parse_viewport_arg(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  if (toks.size() != 4) throw UsageError("--viewport needs 'xmin ymin xmax ymax'");
  try {
    Viewport v{parse_scalar(toks[0]), parse_scalar(toks[1]), parse_scalar(toks[2]),
               parse_scalar(toks[3])};
    if (!(v.xmin < v.xmax && v.ymin < v.ymax)) throw UsageError("--viewport is empty");
    return v;
  } catch (const std::invalid_argument&) {
    throw UsageError("--viewport has a malformed number");
  }
}

PixelSet load_pixel_arg(const Inputs& in) {
  if (!in.pixels_path.empty()) return load_pixels_file(in.pixels_path);
  if (!in.grid.empty()) return parse_pixels("grid " + in.grid + "\n");
  throw UsageError("a pixel spec is required (--pixels FILE or --grid 'x0 y0 dx dy W H')");
}

std::string kv_line(const std::string& key, const std::string& value) {
  return key + "=" + value + "\n";
}

}  // namespace

LoadedInputs load_inputs(const Inputs& in) {
  if (in.scene_path.empty()) throw UsageError("a scene file is required (--scene FILE)");
  LoadOptions lo;
  lo.validate_disjoint = in.validate;
  Scene scene = load_scene_file(in.scene_path, lo);
  if (!in.viewport.empty()) scene.viewport = parse_viewport_arg(in.viewport);
  PixelSet pixels = load_pixel_arg(in);
  scene = with_viewport(std::move(scene), pixels);
  return {std::move(scene), std::move(pixels)};
}

int cmd_build(const BuildOptions& o, std::ostream& log) {
  LoadedInputs in = load_inputs(o.inputs);
  if (o.mode == Mode::Sweep && !in.pixels.is_grid()) {
    throw UsageError("sweep mode needs a grid pixel spec, got an explicit point list");
  }
  const auto engine = make_engine(o.engine, in.scene);
  const auto t0 = std::chrono::steady_clock::now();
  const SampledVisibilityMap svm = run_mode(*engine, in.pixels, o.mode, o.seed);
  const auto t1 = std::chrono::steady_clock::now();

  StatsMap stats{{"mode", to_string(o.mode)},
                 {"engine", o.engine == EngineKind::Baseline ? "baseline" : "accel"}};
  for (auto& kv : stats_entries(svm.stats)) stats.push_back(std::move(kv));

  if (!o.out.empty()) {
    write_text_file(o.out + ".traps", serialize_trapezoids(svm.trapezoids));
    write_text_file(o.out + ".stats", serialize_stats(stats));
  } else {
    log << serialize_trapezoids(svm.trapezoids) << serialize_stats(stats);
  }
  if (!o.svg.empty()) {
    write_text_file(o.svg, render_svg(in.scene.view(), svm.trapezoids, &in.pixels));
  }
  if (!o.ppm.empty()) {
    write_text_file(o.ppm, render_ppm(in.pixels, pixel_ids(svm.trapezoids, in.pixels)));
  }
  if (!o.out.empty()) {
    log << "t=" << svm.stats.t << " p=" << svm.stats.p << " build_ms="
        << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  LoadedInputs in = load_inputs(o.inputs);
  const auto image = raycast_image(in.scene, in.pixels);

  std::optional<SampledVisibilityMap> reference;
  try {
    OracleOptions oo;
    oo.max_triangles = o.budget;
    reference = reference_svm(in.scene, in.pixels, oo);
  } catch (const BudgetExceeded& e) {
    out << "warning: " << e.what() << "; skipping the analytic comparison\n";
  }

  bool ok = true;
  auto check = [&](const std::string& name, const std::vector<Trapezoid>& traps) {
    bool good = true;
    if (reference) {
      const SvmDiff d = compare_svm(reference->trapezoids, traps);
      if (!d.empty()) {
        good = false;
        out << name << ": trapezoids differ from the reference: " << d.report();
      }
    }
    std::vector<int> ids;
    try {
      ids = pixel_ids(traps, in.pixels);
    } catch (const InternalError& e) {
      ok = false;
      out << name << ": " << e.what() << "\n";
      return;
    }
    std::size_t wrong = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (ids[k] != image[k]) {
        if (wrong < 10) {
          const Point2 q = in.pixels.point(k);
          out << name << ": pixel (" << sampvis::to_string(q.x) << ", " << sampvis::to_string(q.y) << ") has T"
              << ids[k] << ", ray cast gives T" << image[k] << "\n";
        }
        ++wrong;
      }
    }
    if (wrong) {
      good = false;
      out << name << ": " << wrong << " pixel(s) disagree with the ray cast\n";
    }
    ok = ok && good;
    if (good) out << name << ": ok (t=" << traps.size() << ")\n";
  };

  if (!o.traps.empty()) {
    check("file", parse_trapezoids(read_text_file(o.traps)));
  } else {
    const auto engine = make_engine(o.engine, in.scene);
    std::vector<Mode> modes{Mode::Offline, Mode::Online};
    if (in.pixels.is_grid()) modes.push_back(Mode::Sweep);
    for (Mode m : modes) check(to_string(m), run_mode(*engine, in.pixels, m, o.seed).trapezoids);
  }
  return ok ? kExitOk : kExitDiff;
}

int cmd_render(const RenderOptions& o, std::ostream& log) {
  if (o.target != "svg" && o.target != "ppm") throw UsageError("render target must be svg or ppm");
  if (o.out.empty()) throw UsageError("render needs --out FILE");
  std::vector<Trapezoid> traps;
  std::optional<LoadedInputs> in;
  if (!o.inputs.scene_path.empty()) in = load_inputs(o.inputs);
  if (!o.traps.empty()) {
    traps = parse_trapezoids(read_text_file(o.traps));
  } else {
    if (!in) throw UsageError("render needs --traps FILE or --scene FILE with a pixel spec");
    const auto engine = make_engine(EngineKind::Accelerated, in->scene);
    traps = build_svm_offline(*engine, in->pixels).trapezoids;
  }

  if (o.target == "ppm") {
    PixelSet pixels = in ? in->pixels : load_pixel_arg(o.inputs);
    write_text_file(o.out, render_ppm(pixels, pixel_ids(traps, pixels)));
  } else {
    Viewport vp;
    std::optional<PixelSet> pixels;
    if (in) {
      vp = in->scene.view();
      pixels = in->pixels;
    } else if (!o.inputs.viewport.empty()) {
      vp = parse_viewport_arg(o.inputs.viewport);
    } else {
      if (traps.empty()) throw UsageError("cannot infer a viewport from an empty trapezoid list");
      const auto c0 = traps.front().corners();
      vp = {c0[0].x, c0[0].y, c0[0].x, c0[0].y};
      for (const auto& t : traps) {
        for (const auto& c : t.corners()) {
          vp.xmin = std::min(vp.xmin, c.x);
          vp.xmax = std::max(vp.xmax, c.x);
          vp.ymin = std::min(vp.ymin, c.y);
          vp.ymax = std::max(vp.ymax, c.y);
        }
      }
    }
    if (!pixels && (!o.inputs.pixels_path.empty() || !o.inputs.grid.empty())) {
      pixels = load_pixel_arg(o.inputs);
    }
    write_text_file(o.out, render_svg(vp, traps, pixels ? &*pixels : nullptr));
  }
  log << "wrote " << o.out << "\n";
  return kExitOk;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  Scene scene;
  try {
    scene = generate_scene(o.params);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const std::string text = "# " + to_string(o.params.family) + " n=" + std::to_string(o.params.n) +
                           " seed=" + std::to_string(o.params.seed) + "\n" + serialize_scene(scene);
  if (o.out.empty()) out << text;
  else write_text_file(o.out, text);
  return kExitOk;
}

Scene scene_s1() {
  Scene s;
  Triangle t;
  t.id = 0;
  t.v = {Point3{-1, -1, 10}, Point3{40, -1, 10}, Point3{-1, 40, 10}};
  s.triangles.push_back(t);
  s.viewport = Viewport{0, 0, 16, 16};
  return s;
}

namespace {

GridSpec centered_grid(const Viewport& vp, int size) {
  GridSpec g;
  g.dx = (vp.xmax - vp.xmin) / size;
  g.dy = (vp.ymax - vp.ymin) / size;
  g.origin = {vp.xmin + g.dx / 2, vp.ymin + g.dy / 2};
  g.width = size;
  g.height = size;
  return g;
}

}  // namespace

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  CsvTable table;
  table.header = {"scene",        "family",       "n",           "seed",        "grid",
                  "p",            "mode",         "engine",      "t",           "v",
                  "decomp",       "build_calls",  "marked_pixels", "events_processed",
                  "gaps_created", "lattice_queries", "queries",  "t_le_p",      "t_le_2v",
                  "gaps_le_3t1",  "time_us"};
  std::vector<Mode> modes;
  for (const auto& m : o.modes) modes.push_back(parse_mode(m));

  auto run_scene = [&](const std::string& name, const std::string& family, const Scene& scene,
                       std::uint64_t seed, const std::vector<int>& grids) {
    std::optional<std::vector<Trapezoid>> decomp;
    std::optional<std::size_t> v;
    if (scene.size() <= o.budget) {
      const VisMap vm = analytic_vismap(scene);
      v = vm.vertex_count();
      decomp = analytic_trap_decomp(vm);
    }
    const auto engine = make_engine(o.engine, scene);
    for (int g : grids) {
      const PixelSet pixels(centered_grid(scene.view(), g));
      for (Mode m : modes) {
        const auto t0 = std::chrono::steady_clock::now();
        const SampledVisibilityMap svm = run_mode(*engine, pixels, m, seed);
        const auto t1 = std::chrono::steady_clock::now();
        const auto& s = svm.stats;
        const bool sweep = m == Mode::Sweep;
        table.rows.push_back({name,
                              family,
                              std::to_string(scene.size()),
                              std::to_string(seed),
                              std::to_string(g) + "x" + std::to_string(g),
                              std::to_string(s.p),
                              to_string(m),
                              o.engine == EngineKind::Baseline ? "baseline" : "accel",
                              std::to_string(s.t),
                              v ? std::to_string(*v) : "",
                              decomp ? std::to_string(decomp->size()) : "",
                              std::to_string(s.build_calls),
                              std::to_string(s.marked_pixels),
                              std::to_string(s.events_processed),
                              std::to_string(s.gaps_created),
                              std::to_string(s.lattice_queries),
                              std::to_string(s.queries.total()),
                              s.t <= s.p ? "1" : "0",
                              v ? (s.t <= 2 * *v ? "1" : "0") : "",
                              sweep ? (s.gaps_created <= 3 * s.t + 1 ? "1" : "0") : "",
                              std::to_string(
                                  std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                                      .count())});
      }
    }
  };

  if (o.single_triangle_series) run_scene("S1", "s1", scene_s1(), 0, {16, 64, 256});
  for (const auto& fam : o.families) {
    const Family family = parse_family(fam);
    for (int n : o.sizes) {
      GenerateParams gp;
      gp.family = family;
      gp.n = n;
      gp.seed = o.seed;
      run_scene(fam + "-" + std::to_string(n), fam, generate_scene(gp), o.seed, o.grids);
    }
  }

  const std::string csv = serialize_csv(table);
  if (o.out.empty()) out << csv;
  else write_text_file(o.out, csv);
  return kExitOk;
}

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  if (o.traps.empty()) throw UsageError("stats needs --traps FILE");
  const auto traps = parse_trapezoids(read_text_file(o.traps));
  std::size_t background = 0;
  std::vector<int> ids;
  for (const auto& t : traps) {
    if (t.triangle_id == kBackgroundId) ++background;
    else ids.push_back(t.triangle_id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  out << kv_line("t", std::to_string(traps.size()));
  out << kv_line("background_traps", std::to_string(background));
  out << kv_line("visible_triangles", std::to_string(ids.size()));
  if (!o.inputs.scene_path.empty()) {
    LoadedInputs in = load_inputs(o.inputs);
    out << kv_line("n", std::to_string(in.scene.size()));
    out << kv_line("p", std::to_string(in.pixels.size()));
    out << kv_line("t_le_p", traps.size() <= in.pixels.size() ? "1" : "0");
    if (in.scene.size() <= o.budget) {
      const VisMap vm = analytic_vismap(in.scene);
      out << kv_line("v", std::to_string(vm.vertex_count()));
      out << kv_line("faces", std::to_string(vm.face_count));
      out << kv_line("decomp", std::to_string(analytic_trap_decomp(vm).size()));
      out << kv_line("t_le_2v", traps.size() <= 2 * vm.vertex_count() ? "1" : "0");
    } else {
      out << "# oracle skipped: scene exceeds the budget\n";
    }
  }
  return kExitOk;
}

}  // namespace sampvis::cli
