#include "rrdt/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "rrdt/errors.hpp"
#include "rrdt/forest.hpp"

namespace rrdt {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw InputError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InputError("invalid unsigned integer for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

Configuration parse_configuration(std::string_view text, std::string_view what) {
  std::vector<double> coords;
  while (true) {
    const auto comma = text.find(',');
    coords.push_back(parse_double(text.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Configuration(std::move(coords));
}

void set_scenario_key(Scenario& s, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "map_path") {
    s.map_path = std::string(value);
  } else if (key == "start") {
    s.start = parse_configuration(value, key);
  } else if (key == "goal") {
    s.goal = parse_configuration(value, key);
  } else if (key == "node_budget") {
    s.node_budget = parse_u64(value, key);
  } else if (key == "epsilon") {
    s.epsilon = parse_double(value, key);
  } else if (key == "eta") {
    s.bandit.eta = parse_double(value, key);
  } else if (key == "num_arms") {
    s.num_arms = parse_u64(value, key);
  } else if (key == "seed") {
    s.seed = parse_u64(value, key);
  } else if (key == "collision_resolution") {
    s.collision_resolution = parse_double(value, key);
  } else if (key == "planner") {
    s.planner = std::string(value);
  } else if (key == "obstacle_threshold") {
    s.obstacle_threshold = parse_double(value, key);
  } else if (key == "goal_bias") {
    s.goal_bias = parse_double(value, key);
  } else if (key == "decay") {
    s.bandit.decay = parse_double(value, key);
  } else if (key == "learn_rate") {
    s.bandit.learn_rate = parse_double(value, key);
  } else if (key == "initial_probability") {
    s.bandit.initial_probability = parse_double(value, key);
  } else if (key == "base_kappa") {
    s.sampler.base_kappa = parse_double(value, key);
  } else if (key == "failure_relax") {
    s.sampler.failure_relax = parse_double(value, key);
  } else if (key == "rewire_gamma") {
    s.rewire_gamma = parse_double(value, key);
  } else if (key == "max_iterations") {
    s.max_iterations = parse_u64(value, key);
  } else {
    throw InputError("unknown scenario key: '" + std::string(key) + "'");
  }
}

void apply_override(Scenario& s, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw InputError("override must look like key=value: " + std::string(assignment));
  set_scenario_key(s, assignment.substr(0, eq), assignment.substr(eq + 1));
}

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  Scenario s;
  std::string line;
  std::size_t lineno = 0;
  bool have_map = false, have_start = false, have_goal = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const auto key = trim(view.substr(0, eq));
    set_scenario_key(s, key, view.substr(eq + 1));
    have_map |= key == "map_path";
    have_start |= key == "start";
    have_goal |= key == "goal";
  }
  if (!have_map || !have_start || !have_goal) throw InputError("scenario needs map_path, start and goal");
  if (s.map_path.is_relative() && !base_dir.empty() && !s.map_path.string().starts_with("bundled:"))
    s.map_path = base_dir / s.map_path;
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path.string());
  return parse_scenario(in, path.parent_path());
}

double resolved_epsilon(const Scenario& s, const Environment& env) {
  return s.epsilon.value_or(0.02 * env.diagonal());
}

double resolved_resolution(const Scenario& s, const Environment& env) {
  return s.collision_resolution.value_or(0.5 * env.min_cell_size());
}

double resolved_rewire_gamma(const Scenario& s, const Environment& env) {
  return s.rewire_gamma.value_or(default_rewire_gamma(env));
}

std::uint64_t resolved_max_iterations(const Scenario& s) {
  return s.max_iterations.value_or(100 * static_cast<std::uint64_t>(s.node_budget));
}

void validate_scenario(const Scenario& s, const Environment& env) {
  const std::size_t d = env.dimension();
  if (s.start.dimension() != d || s.goal.dimension() != d)
    throw InputError("start/goal dimension does not match the map dimension " + std::to_string(d));
  if (!s.start.is_finite() || !s.goal.is_finite()) throw InputError("start/goal must be finite");
  if (!env.is_free(s.start)) throw InputError("start configuration is not free");
  if (!env.is_free(s.goal)) throw InputError("goal configuration is not free");
  const double eps = resolved_epsilon(s, env);
  const double res = resolved_resolution(s, env);
  if (!(res > 0.0)) throw InputError("collision_resolution must be positive");
  if (!(eps > res)) throw InputError("epsilon must exceed collision_resolution");
  if (s.num_arms == 0) throw InputError("num_arms must be positive");
  if (!(s.goal_bias >= 0.0 && s.goal_bias < 1.0)) throw InputError("goal_bias must lie in [0,1)");
  if (!(resolved_rewire_gamma(s, env) > 0.0)) throw InputError("rewire_gamma must be positive");
  try {
    s.bandit.validate();
    s.sampler.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace rrdt
