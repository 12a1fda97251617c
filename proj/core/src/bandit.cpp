#include "rrdt/bandit.hpp"

#include <stdexcept>

namespace rrdt {

void BanditConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay must lie in (0,1)");
  if (!(learn_rate > 0.0 && learn_rate < 1.0)) throw std::invalid_argument("learn_rate must lie in (0,1)");
  if (!(initial_probability > eta && initial_probability <= 1.0))
    throw std::invalid_argument("initial_probability must lie in (eta,1]");
}

std::size_t pick_arm(std::span<const Arm> arms, RandomStream& rng) {
  double total = 0.0;
  for (const auto& a : arms) total += a.probability;
  if (!(total > 0.0)) throw std::domain_error("no arm has positive probability");
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].probability <= 0.0) continue;
    acc += arms[i].probability;
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

void apply_reward(Arm& arm, bool reward, const BanditConfig& config) {
  arm.probability = (1.0 - config.learn_rate) * arm.probability + config.learn_rate * (reward ? 1.0 : 0.0);
  ++arm.pulls;
}

void decay_all(std::span<Arm> arms, const BanditConfig& config) {
  for (auto& a : arms) a.probability *= config.decay;
}

Arm make_arm(ArmId id, NodeId node, const Forest& forest, const RestartContext& ctx) {
  RandomStream rng = ctx.arm_streams->split(id);
  LocalSampler sampler(Configuration(forest.config(node)), ctx.sampler, rng);
  return Arm{id, std::move(sampler), node, ctx.bandit.initial_probability, 0, rng};
}

RestartOutcome restart_arms(std::vector<Arm>& arms, Forest& forest, const Environment& env,
                            const RestartContext& ctx, const FreeSampler& draw) {
  RestartOutcome out;
  std::size_t expired = arms.size();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].probability < ctx.bandit.eta && (expired == arms.size() || arms[i].id < arms[expired].id))
      expired = i;
  }
  if (expired == arms.size()) return out;

  FreeSample s = draw();
  out.rejections = s.rejections;
  out.arm_index = expired;
  out.join = forest.join_within_epsilon(s.q, ctx.epsilon, env, ctx.resolution);
  Arm& arm = arms[expired];
  if (out.join.joined()) {
    out.kind = RestartKind::joined;
    out.node = *out.join.node;
    arm.node = out.node;
    arm.sampler.relocate(std::move(s.q), arm.rng);
    arm.probability = ctx.bandit.initial_probability;
  } else {
    out.kind = RestartKind::new_tree;
    out.node = forest.insert_root(env, s.q, TreeKind::dtree);
    arm = make_arm((*ctx.next_arm_id)++, out.node, forest, ctx);
  }
  return out;
}

}  // namespace rrdt
