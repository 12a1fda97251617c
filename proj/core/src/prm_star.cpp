#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "rrdt/planners.hpp"
#include "run_recorder.hpp"

namespace rrdt {

namespace {
constexpr std::uint64_t kGlobalStream = 1;
constexpr std::uint64_t kQueryPeriod = 250;
}  // namespace

std::uint32_t Roadmap::add_vertex(std::span<const double> q) {
  adjacency.emplace_back();
  return index.insert(q);
}

void Roadmap::add_edge(std::uint32_t a, std::uint32_t b, double w) {
  adjacency[a].push_back({b, w});
  adjacency[b].push_back({a, w});
}

std::size_t Roadmap::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& adj : adjacency) n += adj.size();
  return n / 2;
}

std::optional<RoadmapPath> shortest_path(const Roadmap& roadmap, std::uint32_t src, std::uint32_t dst) {
  const std::size_t n = roadmap.adjacency.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::uint32_t> prev(n, std::numeric_limits<std::uint32_t>::max());
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[src] = 0.0;
  open.emplace(0.0, src);
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    for (const auto& e : roadmap.adjacency[u]) {
      const double nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        prev[e.to] = u;
        open.emplace(nd, e.to);
      }
    }
  }
  if (dist[dst] == kInf) return std::nullopt;
  RoadmapPath path;
  path.cost = dist[dst];
  for (std::uint32_t v = dst; v != src; v = prev[v]) path.vertices.push_back(v);
  path.vertices.push_back(src);
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

PlannerResult plan_prm_star(const Scenario& s, const Environment& env, const PlanOptions&) {
  validate_scenario(s, env);
  PlannerResult result;
  result.planner = PlannerKind::prm_star;
  result.rng_seed = s.seed;
  detail::RunRecorder rec(result);

  const double res = resolved_resolution(s, env);
  const double gamma = resolved_rewire_gamma(s, env);
  const auto d = static_cast<double>(env.dimension());
  const std::uint64_t cap = resolved_max_iterations(s);
  RandomStream global = RandomStream(s.seed).split(kGlobalStream);

  Roadmap roadmap(env.dimension());
  auto connect = [&](std::uint32_t v) {
    const auto n = static_cast<double>(roadmap.adjacency.size());
    const double r = n <= 1 ? 0.0 : gamma * std::pow(std::log(n) / n, 1.0 / d);
    const auto q = roadmap.index.point(v);
    for (auto u : roadmap.index.within_radius(q, r)) {
      if (u == v) continue;
      if (env.segment_free(roadmap.index.point(u), q, res)) roadmap.add_edge(u, v, distance(roadmap.index.point(u), q));
    }
  };
  const std::uint32_t start = roadmap.add_vertex(s.start);
  connect(start);
  const std::uint32_t goal = roadmap.add_vertex(s.goal);
  connect(goal);

  std::optional<RoadmapPath> best;
  while (rec.nodes() < s.node_budget && rec.iteration() < cap) {
    rec.begin_iteration();
    rec.sample_drawn();
    const Configuration x = env.uniform_in_bounds(global);
    if (!env.is_free(x)) {
      rec.in_obstacle();
      continue;
    }
    connect(roadmap.add_vertex(x));
    rec.node_added();
    if (rec.nodes() % kQueryPeriod == 0) {
      if (auto found = shortest_path(roadmap, start, goal); found && (!best || found->cost < best->cost)) {
        best = std::move(found);
        rec.offer_solution(best->cost);
      }
    }
  }

  result.capped = rec.nodes() < s.node_budget;
  if (best) {
    Path path;
    for (auto v : best->vertices) path.waypoints.emplace_back(roadmap.index.point(v));
    path.cost = best->cost;
    result.path = std::move(path);
  }
  GraphSnapshot& g = result.graph;
  g.dimension = env.dimension();
  for (std::uint32_t v = 0; v < roadmap.adjacency.size(); ++v) {
    const auto p = roadmap.index.point(v);
    g.coords.insert(g.coords.end(), p.begin(), p.end());
    g.group.push_back(0);
    for (const auto& e : roadmap.adjacency[v])
      if (e.to > v) g.edges.emplace_back(v, e.to);
  }
  return result;
}

}  // namespace rrdt
