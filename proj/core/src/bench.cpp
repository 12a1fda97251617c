#include "rrdt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rrdt/errors.hpp"
#include "rrdt/maps.hpp"
#include "rrdt/render.hpp"
#include "rrdt/rng.hpp"
#include "rrdt/scenario.hpp"

namespace rrdt {

namespace {

constexpr std::string_view kBundledPrefix = "bundled:";
constexpr std::uint64_t kTraceEvery = 100;
constexpr std::uint64_t kPrmTraceEvery = 250;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "NA";
  if constexpr (std::is_floating_point_v<T>) return fmt_double(*v);
  else return std::to_string(*v);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    parts.push_back(trim(text.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string default_map_name(const std::filesystem::path& path) {
  const std::string s = path.string();
  if (s.starts_with(kBundledPrefix)) return s.substr(kBundledPrefix.size());
  return path.stem().string();
}

}  // namespace

Environment load_environment(const std::filesystem::path& path, double obstacle_threshold) {
  const std::string s = path.string();
  if (s.starts_with(kBundledPrefix)) {
    const auto map = parse_bundled_map(std::string_view(s).substr(kBundledPrefix.size()));
    if (!map) throw InputError("unknown bundled map: " + s);
    return make_bundled_map(*map);
  }
  return load_map(path, obstacle_threshold);
}

ExperimentSpec parse_experiment(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  bool have_map = false;
  Scenario probe;  // validates forwarded keys up front
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw InputError("experiment line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));

    if (key == "map_path" || key == "map") {
      std::filesystem::path p{std::string(value)};
      if (!std::string(value).starts_with(kBundledPrefix) && p.is_relative() && !base_dir.empty()) p = base_dir / p;
      spec.map_path = p;
      have_map = true;
    } else if (key == "map_name") {
      spec.map_name = std::string(value);
    } else if (key == "planners") {
      spec.planners.clear();
      for (auto name : split(value, ',')) spec.planners.push_back(parse_planner(name));
      if (spec.planners.empty()) throw InputError("planner list is empty");
    } else if (key == "pairs") {
      spec.pairs.clear();
      for (auto item : split(value, ';')) {
        if (item.empty()) continue;
        const Configuration all = parse_configuration(item, "pair");
        if (all.dimension() % 2 != 0 || all.dimension() == 0)
          throw InputError("pair needs start and goal of equal dimension: " + std::string(item));
        const std::size_t d = all.dimension() / 2;
        std::vector<double> s(d), g(d);
        for (std::size_t i = 0; i < d; ++i) {
          s[i] = all[i];
          g[i] = all[d + i];
        }
        spec.pairs.push_back({Configuration(std::move(s)), Configuration(std::move(g))});
      }
    } else if (key == "pair_count") {
      spec.pair_count = parse_u64(value, key);
    } else if (key == "repetitions") {
      spec.repetitions = parse_u64(value, key);
    } else if (key == "node_budget") {
      spec.node_budget = parse_u64(value, key);
    } else if (key == "base_seed") {
      spec.base_seed = parse_u64(value, key);
    } else if (key == "output") {
      spec.output = std::string(value);
    } else if (key == "render") {
      if (value == "none") spec.render = RenderPolicy::none;
      else if (value == "first") spec.render = RenderPolicy::first;
      else if (value == "all") spec.render = RenderPolicy::all;
      else throw InputError("render must be none, first or all");
    } else if (key == "seed" || key == "start" || key == "goal") {
      throw InputError("key '" + key + "' is set per run by the harness");
    } else {
      set_scenario_key(probe, key, value);
      spec.scenario_keys.emplace_back(key, std::string(value));
    }
  }
  if (!have_map) throw InputError("experiment is missing map_path");
  if (spec.map_name.empty()) spec.map_name = default_map_name(spec.map_path);
  if (spec.repetitions == 0) throw InputError("repetitions must be positive");
  if (spec.pairs.empty() && spec.pair_count == 0) throw InputError("experiment has no start/goal pairs");
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open experiment file: " + path.string());
  return parse_experiment(in, path.parent_path());
}

std::uint64_t run_seed(std::uint64_t base_seed, PlannerKind planner, std::size_t pair, std::size_t repetition) {
  std::uint64_t h = hash_combine(base_seed, hash_string(planner_name(planner)));
  h = hash_combine(h, pair);
  return hash_combine(h, repetition);
}

std::vector<StartGoal> generate_pairs(const Environment& env, std::size_t count, std::uint64_t seed) {
  constexpr std::size_t kMaxAttempts = 100'000;
  const auto components = free_components(env);
  RandomStream rng = RandomStream(seed).split(hash_string("pairs"));
  const double min_distance = 0.5 * env.diagonal();
  std::vector<StartGoal> pairs;
  for (std::size_t attempt = 0; pairs.size() < count; ++attempt) {
    if (attempt >= kMaxAttempts) throw InputError("could not generate feasible start/goal pairs on this map");
    FreeSample a = env.sample_free(rng);
    FreeSample b = env.sample_free(rng);
    if (distance(a.q, b.q) < min_distance) continue;
    if (!grid_connected(env, components, a.q, b.q)) continue;
    pairs.push_back({std::move(a.q), std::move(b.q)});
  }
  return pairs;
}

MetricsRow metrics_row(const PlannerResult& result) {
  MetricsRow row;
  row.planner = std::string(planner_name(result.planner));
  row.seed = result.rng_seed;
  row.total_sampled = result.counters.samples_drawn;
  if (result.planner != PlannerKind::prm_star) row.failed_connections = result.counters.failed_connections;
  row.points_in_cobs = result.counters.samples_in_obstacle;
  row.nodes = result.counters.nodes;
  row.first_solution_node = result.first_solution_nodes;
  row.final_cost = result.best_cost;
  row.capped = result.capped;
  return row;
}

void check_accounting(const MetricsRow& row) {
  if (!row.ok) return;
  const std::uint64_t expected = row.nodes + row.failed_connections.value_or(0) + row.points_in_cobs;
  if (row.total_sampled != expected)
    throw std::logic_error("sample accounting mismatch for " + row.planner + " pair " + std::to_string(row.pair) +
                           " repetition " + std::to_string(row.repetition));
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  out << "planner,map,pair,repetition,seed,status,total_sampled,failed_connections,points_in_cobs,nodes,"
         "first_solution_node,final_cost,capped\n";
  for (const auto& r : rows) {
    check_accounting(r);
    out << r.planner << ',' << r.map << ',' << r.pair << ',' << r.repetition << ',' << r.seed << ','
        << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      out << r.total_sampled << ',' << fmt_opt(r.failed_connections) << ',' << r.points_in_cobs << ',' << r.nodes
          << ',' << fmt_opt(r.first_solution_node) << ',' << fmt_opt(r.final_cost) << ',' << (r.capped ? 1 : 0);
    } else {
      out << "NA,NA,NA,NA,NA,NA,NA";
    }
    out << '\n';
  }
}

namespace {

std::optional<std::uint64_t> opt_u64(std::string_view v, std::string_view what) {
  if (v == "NA") return std::nullopt;
  return parse_u64(v, what);
}

std::optional<double> opt_double(std::string_view v, std::string_view what) {
  if (v == "NA") return std::nullopt;
  return parse_double(v, what);
}

}  // namespace

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("metrics file is empty");
  const auto header = split(line, ',');
  const std::vector<std::string_view> expected{"planner", "map", "pair", "repetition", "seed",
                                               "status", "total_sampled", "failed_connections", "points_in_cobs",
                                               "nodes", "first_solution_node", "final_cost", "capped"};
  if (header != expected) throw InputError("unexpected metrics header");
  std::vector<MetricsRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != expected.size()) throw InputError("metrics line " + std::to_string(line_no) + ": wrong field count");
    MetricsRow r;
    r.planner = std::string(f[0]);
    r.map = std::string(f[1]);
    r.pair = parse_u64(f[2], "pair");
    r.repetition = parse_u64(f[3], "repetition");
    r.seed = parse_u64(f[4], "seed");
    if (f[5] != "ok" && f[5] != "failed") throw InputError("metrics line " + std::to_string(line_no) + ": bad status");
    r.ok = f[5] == "ok";
    if (r.ok) {
      r.total_sampled = parse_u64(f[6], "total_sampled");
      r.failed_connections = opt_u64(f[7], "failed_connections");
      r.points_in_cobs = parse_u64(f[8], "points_in_cobs");
      r.nodes = parse_u64(f[9], "nodes");
      r.first_solution_node = opt_u64(f[10], "first_solution_node");
      r.final_cost = opt_double(f[11], "final_cost");
      r.capped = parse_u64(f[12], "capped") != 0;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TracePoint> cost_trace(const PlannerResult& result, std::uint64_t every) {
  if (every == 0) throw std::invalid_argument("trace cadence must be positive");
  std::vector<TracePoint> trace;
  std::optional<double> best;
  std::uint64_t nodes = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> pending;  // (nodes, iteration)
  for (const auto& e : result.events) {
    if (pending && e.iteration != pending->second) {
      trace.push_back({pending->first, best});
      pending.reset();
    }
    if (e.kind == EventKind::solution_improved) best = e.best_cost;
    if (e.kind == EventKind::node_added && ++nodes % every == 0) pending = {{nodes, e.iteration}};
  }
  if (pending) trace.push_back({pending->first, best});
  return trace;
}

namespace {

std::string run_id(const std::string& map, PlannerKind planner, std::size_t pair, std::size_t rep) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s-%s-p%02zu-r%02zu", map.c_str(), std::string(planner_name(planner)).c_str(), pair,
                rep);
  return buf;
}

struct Job {
  PlannerKind planner;
  std::size_t pair;
  std::size_t repetition;
  std::uint64_t seed;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t jobs, std::ostream* log) {
  double threshold = 0.5;
  {
    Scenario probe;
    for (const auto& [k, v] : spec.scenario_keys) set_scenario_key(probe, k, v);
    threshold = probe.obstacle_threshold;
  }
  const Environment env = load_environment(spec.map_path, threshold);
  const std::string map_name = spec.map_name.empty() ? default_map_name(spec.map_path) : spec.map_name;

  ExperimentResult result;
  result.pairs = spec.pairs.empty() ? generate_pairs(env, spec.pair_count, spec.base_seed) : spec.pairs;

  std::vector<std::size_t> usable;
  const auto components = free_components(env);
  for (std::size_t i = 0; i < result.pairs.size(); ++i) {
    const auto& p = result.pairs[i];
    const bool ok = p.start.dimension() == env.dimension() && p.goal.dimension() == env.dimension() &&
                    grid_connected(env, components, p.start, p.goal);
    if (ok) {
      usable.push_back(i);
    } else {
      result.skipped_pairs.push_back(i);
      if (log) *log << "pair " << i << " is infeasible on map " << map_name << "; skipped\n";
    }
  }
  if (usable.empty()) throw InputError("no feasible start/goal pair in the experiment");

  std::vector<Job> queue;
  std::set<std::uint64_t> seeds;
  for (auto planner : spec.planners)
    for (auto pair : usable)
      for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
        const auto seed = run_seed(spec.base_seed, planner, pair, rep);
        if (!seeds.insert(seed).second) throw std::logic_error("duplicate run seed in experiment");
        queue.push_back({planner, pair, rep, seed});
      }

  result.runs.resize(queue.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queue.size(); i = next++) {
      const Job& job = queue[i];
      RunRecord& rec = result.runs[i];
      rec.run_id = run_id(map_name, job.planner, job.pair, job.repetition);
      Scenario s;
      s.map_path = spec.map_path;
      s.start = result.pairs[job.pair].start;
      s.goal = result.pairs[job.pair].goal;
      s.node_budget = spec.node_budget;
      for (const auto& [k, v] : spec.scenario_keys) set_scenario_key(s, k, v);
      s.seed = job.seed;
      s.planner = std::string(planner_name(job.planner));
      try {
        const PlannerResult r = plan(job.planner, s, env);
        rec.row = metrics_row(r);
        rec.trace = cost_trace(r, job.planner == PlannerKind::prm_star ? kPrmTraceEvery : kTraceEvery);
        const bool render = spec.render == RenderPolicy::all ||
                            (spec.render == RenderPolicy::first && job.pair == usable.front() && job.repetition == 0);
        if (render && env.dimension() == 2) rec.svg = render_svg(env, r.graph, r.path, r.arm_positions);
      } catch (const std::exception& e) {
        rec.row = MetricsRow{};
        rec.row.planner = std::string(planner_name(job.planner));
        rec.row.ok = false;
        rec.error = e.what();
      }
      rec.row.map = map_name;
      rec.row.pair = job.pair;
      rec.row.repetition = job.repetition;
      rec.row.seed = job.seed;
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, queue.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (log) {
    for (const auto& rec : result.runs)
      if (!rec.row.ok) *log << "run " << rec.run_id << " failed: " << rec.error << '\n';
    if (spec.render != RenderPolicy::none && env.dimension() != 2)
      *log << "map is not 2-D; rendering skipped\n";
  }
  return result;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "traces");
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  std::vector<MetricsRow> rows;
  rows.reserve(result.runs.size());
  for (const auto& rec : result.runs) rows.push_back(rec.row);
  {
    auto out = open(dir / "metrics.csv");
    write_metrics_csv(out, rows);
  }
  {
    auto out = open(dir / "summary.csv");
    write_summary_csv(out, summarize(rows));
  }
  for (const auto& rec : result.runs) {
    if (!rec.row.ok) continue;
    auto out = open(dir / "traces" / (rec.run_id + ".csv"));
    out << "nodes,best_cost\n";
    for (const auto& p : rec.trace) out << p.nodes << ',' << fmt_opt(p.best_cost) << '\n';
  }
  for (const auto& rec : result.runs) {
    if (!rec.svg) continue;
    fs::create_directories(dir / "renders");
    auto out = open(dir / "renders" / (rec.run_id + ".svg"));
    out << *rec.svg;
  }
}

std::optional<SummaryStat> summarize_values(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  SummaryStat s;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.two_sigma = 2.0 * std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

std::string format_two_sig(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  if (value == 0.0) return "0.0";
  int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  double scale = std::pow(10.0, exponent - 1);
  double rounded = std::round(value / scale) * scale;
  // Rounding can carry into the next decade (9.96 -> 10).
  if (std::fabs(rounded) >= std::pow(10.0, exponent + 1)) ++exponent;
  const int decimals = std::max(0, 1 - exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

std::string format_summary(const SummaryStat& stat) {
  return format_two_sig(stat.mean) + "±" + format_two_sig(stat.two_sigma);
}

std::vector<SummaryRow> summarize(std::span<const MetricsRow> rows) {
  if (rows.empty()) throw std::invalid_argument("cannot summarize an empty metrics table");
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const MetricsRow*>> groups;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.map, r.planner);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& members = groups.at(key);
    SummaryRow s;
    s.map = key.first;
    s.planner = key.second;
    s.runs = members.size();
    std::vector<double> total, failed, cobs, nodes, first, cost;
    for (const auto* r : members) {
      if (!r->ok) continue;
      total.push_back(static_cast<double>(r->total_sampled));
      if (r->failed_connections) failed.push_back(static_cast<double>(*r->failed_connections));
      cobs.push_back(static_cast<double>(r->points_in_cobs));
      nodes.push_back(static_cast<double>(r->nodes));
      if (r->first_solution_node) first.push_back(static_cast<double>(*r->first_solution_node));
      if (r->final_cost) {
        cost.push_back(*r->final_cost);
        ++s.solved;
      }
    }
    s.total_sampled = summarize_values(total);
    s.failed_connections = summarize_values(failed);
    s.points_in_cobs = summarize_values(cobs);
    s.nodes = summarize_values(nodes);
    s.first_solution_node = summarize_values(first);
    s.final_cost = summarize_values(cost);
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  auto cell = [](const std::optional<SummaryStat>& s) { return s ? format_summary(*s) : std::string("NA"); };
  out << "map,planner,runs,solved,total_sampled,failed_connections,points_in_cobs,nodes,first_solution_node,"
         "final_cost\n";
  for (const auto& r : rows)
    out << r.map << ',' << r.planner << ',' << r.runs << ',' << r.solved << ',' << cell(r.total_sampled) << ','
        << cell(r.failed_connections) << ',' << cell(r.points_in_cobs) << ',' << cell(r.nodes) << ','
        << cell(r.first_solution_node) << ',' << cell(r.final_cost) << '\n';
}

}  // namespace rrdt
