#pragma once

#include <cstdint>
#include <limits>

#include "rrdt/planners.hpp"

namespace rrdt::detail {

/// Appends events to a PlannerResult and keeps its counters in step.
class RunRecorder {
 public:
  explicit RunRecorder(PlannerResult& result) : r_(result) {}

  void begin_iteration() { ++r_.counters.iterations; }
  std::uint64_t iteration() const { return r_.counters.iterations; }
  std::uint64_t nodes() const { return r_.counters.nodes; }

  void sample_drawn() { ++r_.counters.samples_drawn; }

  void node_added() {
    ++r_.counters.nodes;
    push(EventKind::node_added);
  }
  void failed_connection() {
    ++r_.counters.failed_connections;
    push(EventKind::failed_connection);
  }
  void in_obstacle(std::uint64_t count = 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      ++r_.counters.samples_in_obstacle;
      push(EventKind::sample_in_obstacle);
    }
  }

  /// Logs solution_improved when `cost` strictly beats the best so far.
  void offer_solution(double cost) {
    if (r_.best_cost && !(cost < *r_.best_cost)) return;
    r_.best_cost = cost;
    if (!r_.first_solution_nodes) r_.first_solution_nodes = r_.counters.nodes;
    r_.events.push_back({r_.counters.iterations, EventKind::solution_improved, cost});
  }

 private:
  void push(EventKind kind) { r_.events.push_back({r_.counters.iterations, kind, 0.0}); }

  PlannerResult& r_;
};

/// Step from `from` toward `to`, at most `epsilon` long.
inline Configuration steer(std::span<const double> from, std::span<const double> to, double epsilon) {
  const double d = distance(from, to);
  if (d <= epsilon) return Configuration(to);
  Configuration q(from);
  for (std::size_t i = 0; i < q.dimension(); ++i) q[i] += (to[i] - from[i]) * (epsilon / d);
  return q;
}

/// Slack on the join radius so that a step of nominal length epsilon always
/// reaches the node it started from.
inline double join_radius(double epsilon) { return epsilon * (1.0 + 1e-9); }

}  // namespace rrdt::detail
