#include <memory>

#include "rrdt/planners.hpp"
#include "run_recorder.hpp"

namespace rrdt {

namespace {
constexpr std::uint64_t kGlobalStream = 1;
}

PlannerResult plan_birrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt) {
  validate_scenario(s, env);
  PlannerResult result;
  result.planner = PlannerKind::birrt_star;
  result.rng_seed = s.seed;
  detail::RunRecorder rec(result);

  const double eps = resolved_epsilon(s, env);
  const double res = resolved_resolution(s, env);
  const RewireParams rewire{eps, resolved_rewire_gamma(s, env), res};
  const std::uint64_t cap = resolved_max_iterations(s);
  RandomStream global = RandomStream(s.seed).split(kGlobalStream);

  auto forest = std::make_shared<Forest>(env.dimension());
  forest->set_self_check_interval(opt.self_check_interval);
  const TreeId start_tree = forest->insert_root(env, s.start, TreeKind::root);

  NodeId goal_node = kNoNode;
  const JoinReport direct = forest->join_within_epsilon(s.goal, detail::join_radius(eps), env, res);
  if (direct.joined()) {
    goal_node = *direct.node;
    result.trees_connected = true;
  } else {
    goal_node = forest->insert_root(env, s.goal, TreeKind::dtree);
  }
  const TreeId goal_tree = goal_node;

  auto check_solution = [&] {
    if (forest->in_root_tree(goal_node)) rec.offer_solution(forest->cost(goal_node));
  };
  check_solution();

  bool grow_start = true;
  while (rec.nodes() < s.node_budget && rec.iteration() < cap) {
    rec.begin_iteration();
    rec.sample_drawn();
    const bool connected = result.trees_connected;
    const TreeId active = (connected || grow_start) ? start_tree : goal_tree;
    if (!connected) grow_start = !grow_start;

    const Configuration x = env.uniform_in_bounds(global);
    if (!env.is_free(x)) {
      rec.in_obstacle();
      continue;
    }
    const NodeId near = *forest->nearest_in_tree(x, active);
    const auto from = forest->config(near);
    if (distance(from, x) == 0.0) {
      rec.failed_connection();
      continue;
    }
    const Configuration q_new = detail::steer(from, x, eps);
    if (!env.is_free(q_new) || !env.segment_free(from, q_new, res)) {
      rec.failed_connection();
      continue;
    }
    const NodeId id = forest->add_node(q_new, near);
    if (active == start_tree) forest->rewire(id, env, rewire);
    rec.node_added();

    if (!connected) {
      ++(active == start_tree ? result.nodes_in_start_tree : result.nodes_in_goal_tree);
      // Connect heuristic: bridge to the opposite tree when its nearest node
      // is within one step and visible.
      const TreeId other = active == start_tree ? goal_tree : start_tree;
      const NodeId target = *forest->nearest_in_tree(q_new, other);
      if (distance(forest->config(target), q_new) <= detail::join_radius(eps) &&
          env.segment_free(forest->config(target), q_new, res)) {
        forest->merge_trees(active, other, id, target);
        result.trees_connected = true;
        forest->rewire(id, env, rewire);
      }
    }
    check_solution();
  }

  result.capped = rec.nodes() < s.node_budget;
  if (forest->in_root_tree(goal_node)) result.path = forest->extract_path(goal_node);
  result.graph = forest->snapshot();
  result.forest = std::move(forest);
  return result;
}

}  // namespace rrdt
