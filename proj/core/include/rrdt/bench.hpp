#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rrdt/configuration.hpp"
#include "rrdt/environment.hpp"
#include "rrdt/planners.hpp"

namespace rrdt {

/// Loads a map file, or generates a bundled map for "bundled:<name>".
Environment load_environment(const std::filesystem::path& path, double obstacle_threshold = 0.5);

enum class RenderPolicy { none, first, all };

struct StartGoal {
  Configuration start;
  Configuration goal;
};

/// One benchmark sweep over planners x start/goal pairs x repetitions.
///
/// Text form: `key = value` lines with `#` comments. Keys: map_path,
/// map_name, planners, pairs ("sx,sy,gx,gy; ..."), pair_count, repetitions,
/// node_budget, base_seed, output, render (none|first|all). Any other key is
/// handed to every run's Scenario.
struct ExperimentSpec {
  std::filesystem::path map_path;
  std::string map_name;  // CSV label; defaults to the map file stem
  std::vector<PlannerKind> planners{std::begin(kAllPlanners), std::end(kAllPlanners)};
  std::vector<StartGoal> pairs;
  std::size_t pair_count = 20;  // used when `pairs` is empty
  std::size_t repetitions = 20;
  std::size_t node_budget = 10'000;
  std::uint64_t base_seed = 0;
  std::filesystem::path output = "bench_out";
  RenderPolicy render = RenderPolicy::first;
  std::vector<std::pair<std::string, std::string>> scenario_keys;
};

ExperimentSpec parse_experiment(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Per-run seed: hash(base_seed, planner, pair, repetition).
std::uint64_t run_seed(std::uint64_t base_seed, PlannerKind planner, std::size_t pair, std::size_t repetition);

/// Draws `count` free pairs at least half the map diagonal apart whose cells
/// are joined by a grid BFS path. Deterministic in `seed`. Throws InputError
/// when no such pairs can be found.
std::vector<StartGoal> generate_pairs(const Environment& env, std::size_t count, std::uint64_t seed);

struct MetricsRow {
  std::string planner;
  std::string map;
  std::size_t pair = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  bool ok = true;  // false when the planner threw
  std::uint64_t total_sampled = 0;
  std::optional<std::uint64_t> failed_connections;  // empty for PRM*
  std::uint64_t points_in_cobs = 0;
  std::uint64_t nodes = 0;
  std::optional<std::uint64_t> first_solution_node;
  std::optional<double> final_cost;
  bool capped = false;
};

MetricsRow metrics_row(const PlannerResult& result);

/// Throws std::logic_error when total_sampled differs from
/// nodes + failed_connections + points_in_cobs on a successful row.
void check_accounting(const MetricsRow& row);

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

struct TracePoint {
  std::uint64_t nodes = 0;
  std::optional<double> best_cost;
};

/// Best cost after every `every`-th added node, taken at the end of the
/// iteration that added it.
std::vector<TracePoint> cost_trace(const PlannerResult& result, std::uint64_t every);

struct RunRecord {
  std::string run_id;
  MetricsRow row;
  std::vector<TracePoint> trace;
  std::optional<std::string> svg;
  std::string error;
};

struct ExperimentResult {
  std::vector<StartGoal> pairs;
  std::vector<std::size_t> skipped_pairs;
  std::vector<RunRecord> runs;  // (planner, pair, repetition) order
};

/// Executes every run on `jobs` worker threads; the result does not depend on
/// `jobs`. Notices about skipped pairs and failed runs go to `log`.
/// Throws InputError when no pair is usable.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t jobs = 1, std::ostream* log = nullptr);

/// Writes metrics.csv, summary.csv, traces/<run-id>.csv and
/// renders/<run-id>.svg under `dir`.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

struct SummaryStat {
  std::size_t count = 0;
  double mean = 0.0;
  double two_sigma = 0.0;  // population standard deviation, doubled
};

std::optional<SummaryStat> summarize_values(std::span<const double> values);

/// Rounds to two significant figures and prints without an exponent,
/// keeping trailing zeros: 4 -> "4.0", 12 -> "12", 12345 -> "12000".
std::string format_two_sig(double value);
/// "mean±2sigma", each part formatted by format_two_sig.
std::string format_summary(const SummaryStat& stat);

struct SummaryRow {
  std::string map;
  std::string planner;
  std::size_t runs = 0;
  std::size_t solved = 0;
  std::optional<SummaryStat> total_sampled;
  std::optional<SummaryStat> failed_connections;
  std::optional<SummaryStat> points_in_cobs;
  std::optional<SummaryStat> nodes;
  std::optional<SummaryStat> first_solution_node;
  std::optional<SummaryStat> final_cost;
};

/// One row per (map, planner) in order of first appearance; failed runs are
/// excluded from the statistics. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> summarize(std::span<const MetricsRow> rows);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace rrdt
