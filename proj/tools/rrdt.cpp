#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rrdt/bench.hpp"
#include "rrdt/errors.hpp"
#include "rrdt/maps.hpp"
#include "rrdt/planners.hpp"
#include "rrdt/render.hpp"
#include "rrdt/scenario.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 1;

struct PlanArgs {
  std::string scenario;
  std::string planner;
  std::optional<std::uint64_t> seed;
  std::string svg;
  std::string dump;
  std::vector<std::string> overrides;
  std::size_t self_check = 0;
};

int run_plan(const PlanArgs& a) {
  rrdt::Scenario s = rrdt::load_scenario(a.scenario);
  for (const auto& o : a.overrides) rrdt::apply_override(s, o);
  if (!a.planner.empty()) s.planner = a.planner;
  if (a.seed) s.seed = *a.seed;
  const rrdt::PlannerKind kind = rrdt::parse_planner(s.planner);
  const rrdt::Environment env = rrdt::load_environment(s.map_path, s.obstacle_threshold);

  const rrdt::PlannerResult r = rrdt::plan(kind, s, env, {a.self_check});
  const auto& c = r.counters;
  std::printf("planner             %s\n", std::string(rrdt::planner_name(kind)).c_str());
  std::printf("seed                %llu\n", static_cast<unsigned long long>(s.seed));
  std::printf("iterations          %llu%s\n", static_cast<unsigned long long>(c.iterations),
              r.capped ? " (iteration cap reached)" : "");
  std::printf("nodes               %llu\n", static_cast<unsigned long long>(c.nodes));
  std::printf("total_sampled       %llu\n", static_cast<unsigned long long>(c.samples_drawn));
  std::printf("failed_connections  %llu\n", static_cast<unsigned long long>(c.failed_connections));
  std::printf("points_in_cobs      %llu\n", static_cast<unsigned long long>(c.samples_in_obstacle));
  if (r.path) {
    std::printf("first_solution_node %llu\n", static_cast<unsigned long long>(*r.first_solution_nodes));
    std::printf("path_cost           %.6g\n", r.path->cost);
    std::printf("path_waypoints      %zu\n", r.path->waypoints.size());
  } else {
    std::printf("path                none\n");
  }
  if (kind == rrdt::PlannerKind::rrdt_star && r.forest)
  {
    std::printf("trees_created       %zu\n", r.forest->trees_created());
    std::printf("restarts_joined     %llu\n", static_cast<unsigned long long>(r.rrdt.restarts_joined));
    std::printf("restarts_new_tree   %llu\n", static_cast<unsigned long long>(r.rrdt.restarts_new_tree));
    std::printf("live_trees          %zu\n", r.forest->tree_count());
  }

  if (!a.svg.empty()) {
    if (env.dimension() != 2) {
      std::fprintf(stderr, "map is not 2-D; --svg ignored\n");
    } else {
      std::ofstream out(a.svg, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + a.svg);
      out << rrdt::render_svg(env, r.graph, r.path, r.arm_positions);
    }
  }
  if (!a.dump.empty()) {
    if (!r.forest) {
      std::fprintf(stderr, "%s builds no forest; --dump ignored\n", std::string(rrdt::planner_name(kind)).c_str());
    } else {
      std::ofstream out(a.dump);
      if (!out) throw std::runtime_error("cannot write " + a.dump);
      r.forest->dump(out);
    }
  }
  return 0;
}

int run_bench(const std::string& file, std::size_t jobs, const std::string& out_dir) {
  rrdt::ExperimentSpec spec = rrdt::load_experiment(file);
  if (!out_dir.empty()) spec.output = out_dir;
  const auto result = rrdt::run_experiment(spec, jobs, &std::cerr);
  rrdt::write_experiment(result, spec.output);
  std::printf("%zu runs written to %s\n", result.runs.size(), spec.output.string().c_str());
  return 0;
}

int run_summarize(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw rrdt::InputError("cannot open " + file);
  const auto rows = rrdt::read_metrics_csv(in);
  if (rows.empty()) throw rrdt::InputError("metrics file has no rows");
  rrdt::write_summary_csv(std::cout, rrdt::summarize(rows));
  return 0;
}

int run_maps(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (auto m : rrdt::kBundledMaps) {
    const auto path = std::filesystem::path(dir) / (std::string(rrdt::bundled_map_name(m)) + ".pgm");
    rrdt::save_pgm(rrdt::make_bundled_map(m), path);
    std::printf("%s\n", path.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RRdT* motion planning and benchmarks"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Solve one scenario");
  plan_cmd->add_option("scenario", plan.scenario, "Scenario file")->required();
  plan_cmd->add_option("--planner", plan.planner, "rrdt, rrt, birrt, informed or prm");
  plan_cmd->add_option("--seed", plan.seed, "RNG seed");
  plan_cmd->add_option("--svg", plan.svg, "Write an SVG rendering");
  plan_cmd->add_option("--override", plan.overrides, "Scenario key=value (repeatable)");
  plan_cmd->add_option("--dump", plan.dump, "Write the final forest in text form");
  plan_cmd->add_option("--self-check", plan.self_check, "Check forest invariants every N insertions");

  std::string experiment, out_dir;
  std::size_t jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment file");
  bench_cmd->add_option("experiment", experiment, "Experiment file")->required();
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", out_dir, "Output directory (overrides the file)");

  std::string metrics;
  auto* sum_cmd = app.add_subcommand("summarize", "Print mean ± 2σ per planner and map");
  sum_cmd->add_option("metrics", metrics, "metrics.csv")->required();

  std::string maps_dir = "maps";
  auto* maps_cmd = app.add_subcommand("maps", "Write the bundled maps as PGM");
  maps_cmd->add_option("--out", maps_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*plan_cmd) return run_plan(plan);
    if (*bench_cmd) return run_bench(experiment, jobs, out_dir);
    if (*sum_cmd) return run_summarize(metrics);
    if (*maps_cmd) return run_maps(maps_dir);
  } catch (const rrdt::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternalError;
  }
  return kInternalError;
}
