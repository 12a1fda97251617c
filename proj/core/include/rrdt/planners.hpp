#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rrdt/configuration.hpp"
#include "rrdt/environment.hpp"
#include "rrdt/forest.hpp"
#include "rrdt/nn_index.hpp"
#include "rrdt/rng.hpp"
#include "rrdt/scenario.hpp"
#include "rrdt/snapshot.hpp"

namespace rrdt {

enum class PlannerKind { rrdt_star, rrt_star, birrt_star, informed_rrt_star, prm_star };

inline constexpr PlannerKind kAllPlanners[] = {PlannerKind::rrdt_star, PlannerKind::rrt_star,
                                               PlannerKind::birrt_star, PlannerKind::informed_rrt_star,
                                               PlannerKind::prm_star};

/// Canonical short names: rrdt, rrt, birrt, informed, prm.
std::string_view planner_name(PlannerKind kind) noexcept;
/// Accepts the short names and common spellings ("rrdt*", "RRT*", "bi-rrt*",
/// "informed-rrt*", "prm*"). Throws InputError otherwise.
PlannerKind parse_planner(std::string_view name);

enum class EventKind : std::uint8_t { node_added, failed_connection, sample_in_obstacle, solution_improved };

struct PlannerEvent {
  std::uint64_t iteration = 0;
  EventKind kind = EventKind::node_added;
  double best_cost = 0.0;  // meaningful for solution_improved only
};

struct RunCounters {
  std::uint64_t iterations = 0;
  std::uint64_t samples_drawn = 0;
  std::uint64_t nodes = 0;
  std::uint64_t failed_connections = 0;
  std::uint64_t samples_in_obstacle = 0;
};

/// RRdT*-only bookkeeping.
struct RrdtDiagnostics {
  std::uint64_t restarts_joined = 0;
  std::uint64_t restarts_new_tree = 0;
  std::vector<std::uint64_t> tree_creation_iterations;  // 0 for initialisation
};

struct PlannerResult {
  PlannerKind planner = PlannerKind::rrdt_star;
  std::uint64_t rng_seed = 0;
  std::optional<Path> path;
  std::vector<PlannerEvent> events;
  RunCounters counters;
  bool capped = false;  // iteration cap hit before the node budget
  std::optional<std::uint64_t> first_solution_nodes;
  std::optional<double> best_cost;
  std::shared_ptr<const Forest> forest;  // tree planners only
  GraphSnapshot graph;
  std::vector<Configuration> arm_positions;
  RrdtDiagnostics rrdt;
  std::uint64_t nodes_in_start_tree = 0;  // Bi-RRT*: growth per side before connection
  std::uint64_t nodes_in_goal_tree = 0;
  bool trees_connected = false;
};

struct PlanOptions {
  /// Runs Forest::check_invariants every n insertions (0 disables).
  std::size_t self_check_interval = 0;
};

PlannerResult plan(PlannerKind kind, const Scenario& s, const Environment& env, const PlanOptions& opt = {});

PlannerResult plan_rrdt_star(const Scenario& s, const Environment& env, const PlanOptions& opt = {});
PlannerResult plan_rrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt = {});
PlannerResult plan_birrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt = {});
PlannerResult plan_informed_rrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt = {});
PlannerResult plan_prm_star(const Scenario& s, const Environment& env, const PlanOptions& opt = {});

/// Uniform sample from the prolate hyperspheroid
/// { x : |x - start| + |x - goal| <= c_best }; c_best below |goal - start| is
/// treated as equal to it.
Configuration sample_informed(std::span<const double> start, std::span<const double> goal, double c_best,
                              RandomStream& rng);

/// Undirected weighted roadmap used by PRM*.
struct Roadmap {
  struct Edge {
    std::uint32_t to;
    double weight;
  };
  explicit Roadmap(std::size_t dimension) : index(dimension) {}

  NearestIndex index;
  std::vector<std::vector<Edge>> adjacency;

  std::uint32_t add_vertex(std::span<const double> q);
  void add_edge(std::uint32_t a, std::uint32_t b, double w);
  std::size_t edge_count() const noexcept;
};

struct RoadmapPath {
  std::vector<std::uint32_t> vertices;
  double cost = 0.0;
};

/// Dijkstra with a binary heap; empty when dst is unreachable.
std::optional<RoadmapPath> shortest_path(const Roadmap& roadmap, std::uint32_t src, std::uint32_t dst);

}  // namespace rrdt
