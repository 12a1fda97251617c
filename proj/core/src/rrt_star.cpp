#include <cmath>
#include <limits>
#include <memory>

#include "rrdt/local_sampler.hpp"
#include "rrdt/planners.hpp"
#include "run_recorder.hpp"

namespace rrdt {

Configuration sample_informed(std::span<const double> start, std::span<const double> goal, double c_best,
                              RandomStream& rng) {
  const std::size_t d = start.size();
  const double c_min = distance(start, goal);
  c_best = std::max(c_best, c_min);

  // Uniform point in the unit ball.
  auto ball = uniform_direction(d, rng);
  const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (double& x : ball) x *= radius;

  // Scale: transverse axis c_best/2, conjugate axes sqrt(c_best^2 - c_min^2)/2.
  ball[0] *= c_best / 2.0;
  const double conj = std::sqrt(std::max(0.0, c_best * c_best - c_min * c_min)) / 2.0;
  for (std::size_t i = 1; i < d; ++i) ball[i] *= conj;

  // Householder reflection taking e1 onto the start->goal direction.
  std::vector<double> axis(d, 0.0);
  if (c_min > 0.0) {
    for (std::size_t i = 0; i < d; ++i) axis[i] = (goal[i] - start[i]) / c_min;
  } else {
    axis[0] = 1.0;
  }
  std::vector<double> v(axis);
  for (double& x : v) x = -x;
  v[0] += 1.0;
  double vv = 0.0, vx = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    vv += v[i] * v[i];
    vx += v[i] * ball[i];
  }
  Configuration out{std::vector<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    const double reflected = vv > 1e-24 ? ball[i] - 2.0 * v[i] * vx / vv : ball[i];
    out[i] = reflected + (start[i] + goal[i]) / 2.0;
  }
  return out;
}

namespace {

constexpr std::uint64_t kGlobalStream = 1;

PlannerResult run_rrt_family(const Scenario& s, const Environment& env, const PlanOptions& opt, bool informed) {
  validate_scenario(s, env);
  PlannerResult result;
  result.planner = informed ? PlannerKind::informed_rrt_star : PlannerKind::rrt_star;
  result.rng_seed = s.seed;
  detail::RunRecorder rec(result);

  const double eps = resolved_epsilon(s, env);
  const double res = resolved_resolution(s, env);
  const RewireParams rewire{eps, resolved_rewire_gamma(s, env), res};
  const std::uint64_t cap = resolved_max_iterations(s);
  RandomStream global = RandomStream(s.seed).split(kGlobalStream);

  auto forest = std::make_shared<Forest>(env.dimension());
  forest->set_self_check_interval(opt.self_check_interval);
  forest->insert_root(env, s.start, TreeKind::root);
  NodeId goal_node = kNoNode;
  if (s.start == s.goal) {
    goal_node = 0;
    rec.offer_solution(0.0);
  }

  while (rec.nodes() < s.node_budget && rec.iteration() < cap) {
    rec.begin_iteration();
    rec.sample_drawn();
    Configuration x;
    if (informed && result.best_cost) {
      x = sample_informed(s.start, s.goal, *result.best_cost, global);
    } else {
      const double u = global.uniform();
      x = (goal_node == kNoNode && u < s.goal_bias) ? s.goal : env.uniform_in_bounds(global);
    }
    if (!env.is_free(x)) {
      rec.in_obstacle();
      continue;
    }
    const NodeId near = forest->nearest(x);
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
    forest->rewire(id, env, rewire);
    rec.node_added();
    if (goal_node == kNoNode && q_new == s.goal) goal_node = id;
    if (goal_node != kNoNode) rec.offer_solution(forest->cost(goal_node));
  }

  result.capped = rec.nodes() < s.node_budget;
  if (goal_node != kNoNode) result.path = forest->extract_path(goal_node);
  result.graph = forest->snapshot();
  result.forest = std::move(forest);
  return result;
}

}  // namespace

PlannerResult plan_rrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt) {
  return run_rrt_family(s, env, opt, false);
}

PlannerResult plan_informed_rrt_star(const Scenario& s, const Environment& env, const PlanOptions& opt) {
  return run_rrt_family(s, env, opt, true);
}

}  // namespace rrdt
