#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "rrdt/bandit.hpp"
#include "rrdt/configuration.hpp"
#include "rrdt/environment.hpp"
#include "rrdt/local_sampler.hpp"

namespace rrdt {

/// One planning problem plus every tunable the planners read.
///
/// Text form is one `key = value` per line, `#` comments, lists separated by
/// commas. Core keys: map_path, start, goal, node_budget, epsilon, eta,
/// num_arms, seed, collision_resolution. Optional keys: planner,
/// obstacle_threshold, goal_bias, decay, learn_rate, initial_probability,
/// base_kappa, failure_relax, rewire_gamma, max_iterations.
struct Scenario {
  std::filesystem::path map_path;
  Configuration start;
  Configuration goal;
  std::size_t node_budget = 10'000;
  std::optional<double> epsilon;               // default: 2% of the map diagonal
  std::size_t num_arms = 8;
  std::uint64_t seed = 0;
  std::optional<double> collision_resolution;  // default: half the smallest cell
  std::string planner = "rrdt";
  double obstacle_threshold = 0.5;
  double goal_bias = 0.05;
  std::optional<double> rewire_gamma;          // default: default_rewire_gamma(env)
  std::optional<std::uint64_t> max_iterations; // default: 100 * node_budget
  BanditConfig bandit;
  SamplerConfig sampler;
};

/// Sets one key from its text value. Throws InputError on unknown keys or
/// unparsable values.
void set_scenario_key(Scenario& s, std::string_view key, std::string_view value);

/// Parses scenario text; a relative map_path is resolved against `base_dir`.
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Splits "key=value" (whitespace-trimmed) and applies it.
void apply_override(Scenario& s, std::string_view assignment);

double resolved_epsilon(const Scenario& s, const Environment& env);
double resolved_resolution(const Scenario& s, const Environment& env);
double resolved_rewire_gamma(const Scenario& s, const Environment& env);
std::uint64_t resolved_max_iterations(const Scenario& s);

/// Checks dimensions, validity of start and goal and parameter ranges.
/// Throws InputError.
void validate_scenario(const Scenario& s, const Environment& env);

/// Text helpers shared with the experiment format.
std::string_view trim(std::string_view s);
double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
Configuration parse_configuration(std::string_view text, std::string_view what);

}  // namespace rrdt
