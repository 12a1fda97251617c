#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rrdt/environment.hpp"
#include "rrdt/forest.hpp"
#include "rrdt/local_sampler.hpp"
#include "rrdt/rng.hpp"

namespace rrdt {

using ArmId = std::uint64_t;

/// Mortal-bandit parameters.
struct BanditConfig {
  double eta = 0.02;                 // restart threshold
  double decay = 0.999;              // per-iteration multiplicative decay
  double learn_rate = 0.1;           // EMA weight of each Bernoulli observation
  double initial_probability = 0.4;  // probability of a fresh or relocated arm

  void validate() const;
};

/// One local sampler seen as a Bernoulli bandit arm.
struct Arm {
  ArmId id = 0;
  LocalSampler sampler;
  NodeId node = kNoNode;  // forest node at the sampler position
  double probability = 0.0;
  std::uint64_t pulls = 0;
  RandomStream rng;       // private walker stream

  TreeId home_tree(const Forest& forest) const { return forest.tree_of(node); }
};

/// Multinomial draw proportional to arm probabilities; returns an index into
/// `arms`. Throws std::domain_error when every probability is zero.
std::size_t pick_arm(std::span<const Arm> arms, RandomStream& rng);

/// probability <- (1 - learn_rate) probability + learn_rate reward.
void apply_reward(Arm& arm, bool reward, const BanditConfig& config);

/// probability <- decay * probability for every arm.
void decay_all(std::span<Arm> arms, const BanditConfig& config);

enum class RestartKind { none, joined, new_tree };

struct RestartOutcome {
  RestartKind kind = RestartKind::none;
  std::size_t arm_index = 0;
  NodeId node = kNoNode;
  std::size_t rejections = 0;  // in-obstacle draws spent finding q_rand
  JoinReport join;

  bool node_added() const noexcept { return kind != RestartKind::none; }
};

/// Everything a restart needs besides the arms and the forest.
struct RestartContext {
  double epsilon = 1.0;           // join radius
  double resolution = 0.5;        // segment check spacing
  BanditConfig bandit;
  SamplerConfig sampler;
  RandomStream* arm_streams = nullptr;  // parent of per-arm walker streams
  ArmId* next_arm_id = nullptr;
};

/// Draw source for q_rand; the default is Environment::sample_free.
using FreeSampler = std::function<FreeSample()>;

/// Builds an arm at a forest node with its own walker stream.
Arm make_arm(ArmId id, NodeId node, const Forest& forest, const RestartContext& ctx);

/// The restart scheduler. Finds the lowest-id arm below eta; if none, returns
/// kind none without side effects. Otherwise draws q_rand and epsilon-joins
/// it: a join relocates the expired arm onto the new node with probability
/// reset, while a failed join founds a new d-tree at q_rand and replaces the
/// expired arm with a fresh one. At most one arm restarts per call.
RestartOutcome restart_arms(std::vector<Arm>& arms, Forest& forest, const Environment& env,
                            const RestartContext& ctx, const FreeSampler& draw);

}  // namespace rrdt
