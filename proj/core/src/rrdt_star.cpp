#include <memory>

#include "rrdt/bandit.hpp"
#include "rrdt/planners.hpp"
#include "run_recorder.hpp"

namespace rrdt {

namespace {

// Stream tags; each run derives independent sub-streams from its seed.
constexpr std::uint64_t kGlobalStream = 1;
constexpr std::uint64_t kSelectionStream = 2;
constexpr std::uint64_t kArmStreams = 3;

}  // namespace

PlannerResult plan_rrdt_star(const Scenario& s, const Environment& env, const PlanOptions& opt) {
  validate_scenario(s, env);
  PlannerResult result;
  result.planner = PlannerKind::rrdt_star;
  result.rng_seed = s.seed;
  detail::RunRecorder rec(result);

  const double eps = resolved_epsilon(s, env);
  const double radius = detail::join_radius(eps);
  const double res = resolved_resolution(s, env);
  const RewireParams rewire{eps, resolved_rewire_gamma(s, env), res};
  const std::uint64_t cap = resolved_max_iterations(s);

  RandomStream seed_stream(s.seed);
  RandomStream global = seed_stream.split(kGlobalStream);
  RandomStream selection = seed_stream.split(kSelectionStream);
  RandomStream arm_streams = seed_stream.split(kArmStreams);
  ArmId next_arm_id = 0;
  const RestartContext ctx{radius, res, s.bandit, s.sampler, &arm_streams, &next_arm_id};

  auto forest = std::make_shared<Forest>(env.dimension());
  forest->set_self_check_interval(opt.self_check_interval);
  forest->insert_root(env, s.start, TreeKind::root);
  result.rrdt.tree_creation_iterations.push_back(0);

  // Joins q if anything is reachable within epsilon, else founds a d-tree.
  auto place = [&](const Configuration& q) -> NodeId {
    const JoinReport join = forest->join_within_epsilon(q, radius, env, res);
    if (join.joined()) {
      if (join.joined_root) forest->rewire(*join.node, env, rewire);
      return *join.node;
    }
    result.rrdt.tree_creation_iterations.push_back(rec.iteration());
    return forest->insert_root(env, q, TreeKind::dtree);
  };

  // The goal is a permanent singleton d-tree; a solution exists once it
  // belongs to the root tree.
  const NodeId goal_node = place(s.goal);

  std::vector<Arm> arms;
  arms.reserve(s.num_arms);
  for (std::size_t i = 0; i < s.num_arms; ++i) {
    const FreeSample fs = env.sample_free(global);
    arms.push_back(make_arm(next_arm_id++, place(fs.q), *forest, ctx));
  }

  auto check_solution = [&] {
    if (forest->in_root_tree(goal_node)) rec.offer_solution(forest->cost(goal_node));
  };
  check_solution();

  const FreeSampler draw = [&] { return env.sample_free(global); };

  while (rec.nodes() < s.node_budget && rec.iteration() < cap) {
    rec.begin_iteration();
    const RestartOutcome restart = restart_arms(arms, *forest, env, ctx, draw);
    if (restart.node_added()) {
      for (std::size_t i = 0; i <= restart.rejections; ++i) rec.sample_drawn();
      rec.in_obstacle(restart.rejections);
      rec.node_added();
      if (restart.kind == RestartKind::new_tree) {
        ++result.rrdt.restarts_new_tree;
        result.rrdt.tree_creation_iterations.push_back(rec.iteration());
      } else {
        ++result.rrdt.restarts_joined;
        if (restart.join.joined_root) forest->rewire(restart.node, env, rewire);
      }
    } else {
      Arm& arm = arms[pick_arm(arms, selection)];
      const Configuration q_new = arm.sampler.propose(eps, arm.rng);
      rec.sample_drawn();
      bool reward = false;
      if (!env.is_free(q_new)) {
        rec.in_obstacle();
        arm.sampler.report_failure();
      } else if (!env.segment_free(arm.sampler.position(), q_new, res)) {
        rec.failed_connection();
        arm.sampler.report_failure();
      } else {
        const JoinReport join = forest->join_within_epsilon(q_new, radius, env, res);
        if (!join.joined()) throw std::logic_error("validated local step failed to reach its own tree");
        if (join.joined_root) forest->rewire(*join.node, env, rewire);
        arm.node = *join.node;
        arm.sampler.report_success(q_new);
        rec.node_added();
        reward = true;
      }
      apply_reward(arm, reward, s.bandit);
    }
    decay_all(arms, s.bandit);
    check_solution();
  }

  result.capped = rec.nodes() < s.node_budget;
  if (forest->in_root_tree(goal_node)) result.path = forest->extract_path(goal_node);
  for (const auto& a : arms) result.arm_positions.push_back(a.sampler.position());
  result.graph = forest->snapshot();
  result.forest = std::move(forest);
  return result;
}

}  // namespace rrdt
