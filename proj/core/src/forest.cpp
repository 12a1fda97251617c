#include "rrdt/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rrdt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double default_rewire_gamma(const Environment& env) {
  const auto d = static_cast<double>(env.dimension());
  return 2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) *
         std::pow(env.free_volume() / unit_ball_volume(env.dimension()), 1.0 / d);
}

double rewire_radius(std::size_t n, std::size_t dimension, double epsilon, double gamma) {
  if (n <= 1) return 0.0;
  const auto nd = static_cast<double>(n);
  return std::min(epsilon, gamma * std::pow(std::log(nd) / nd, 1.0 / static_cast<double>(dimension)));
}

Forest::Forest(std::size_t dimension) : dim_(dimension), index_(dimension) {
  if (dimension < 2) throw std::invalid_argument("forest dimension must be at least 2");
}

NodeId Forest::find(NodeId id) const {
  while (uf_parent_[id] != id) {
    uf_parent_[id] = uf_parent_[uf_parent_[id]];
    id = uf_parent_[id];
  }
  return id;
}

TreeId Forest::tree_of(NodeId id) const {
  if (id >= size()) throw std::out_of_range("unknown node id");
  return uf_label_[find(id)];
}

std::size_t Forest::tree_size(TreeId tree) const { return uf_size_[find(tree)]; }

bool Forest::in_root_tree(NodeId id) const { return root_tree_ && tree_of(id) == *root_tree_; }

double Forest::creation_clearance(TreeId tree) const { return clearance_.at(tree); }

NodeId Forest::push_node(std::span<const double> q, NodeId parent, double cost) {
  const NodeId id = index_.insert(q);
  parent_.push_back(parent);
  cost_.push_back(cost);
  children_.emplace_back();
  uf_parent_.push_back(id);
  uf_size_.push_back(1);
  uf_label_.push_back(id);
  clearance_.push_back(std::numeric_limits<double>::quiet_NaN());
  return id;
}

void Forest::after_insert() {
  if (self_check_interval_ != 0 && size() % self_check_interval_ == 0) {
    if (auto why = check_invariants()) throw std::logic_error("forest invariant violated: " + *why);
  }
}

TreeId Forest::insert_root(const Environment& env, std::span<const double> q, TreeKind kind) {
  if (q.size() != dim_) throw std::invalid_argument("configuration dimension does not match forest");
  if (!env.is_free(q)) throw std::invalid_argument("tree root must be a free configuration");
  if (kind == TreeKind::root && root_tree_) throw std::logic_error("forest already has a root tree");
  const double clearance = empty() ? kInf : distance(q, config(nearest(q)));
  const NodeId id = push_node(q, kNoNode, kind == TreeKind::root ? 0.0 : kInf);
  clearance_[id] = clearance;
  if (kind == TreeKind::root) root_tree_ = id;
  ++trees_created_;
  ++live_trees_;
  after_insert();
  return id;
}

NodeId Forest::add_node(std::span<const double> q, NodeId parent) {
  if (q.size() != dim_) throw std::invalid_argument("configuration dimension does not match forest");
  if (parent >= size()) throw std::out_of_range("unknown parent node");
  const bool rooted = in_root_tree(parent);
  const double c = rooted ? cost_[parent] + distance(q, config(parent)) : kInf;
  const NodeId id = push_node(q, parent, c);
  children_[parent].push_back(id);
  const NodeId rep = find(parent);
  uf_parent_[id] = rep;
  ++uf_size_[rep];
  after_insert();
  return id;
}

void Forest::attach(NodeId child, NodeId parent) {
  parent_[child] = parent;
  children_[parent].push_back(child);
}

void Forest::detach(NodeId child) {
  const NodeId p = parent_[child];
  if (p == kNoNode) return;
  auto& siblings = children_[p];
  siblings.erase(std::find(siblings.begin(), siblings.end(), child));
  parent_[child] = kNoNode;
}

void Forest::reroot(NodeId node) {
  // Reverse the parent chain node -> old root.
  std::vector<NodeId> chain{node};
  while (parent_[chain.back()] != kNoNode) chain.push_back(parent_[chain.back()]);
  for (std::size_t i = chain.size() - 1; i > 0; --i) {
    detach(chain[i - 1]);
    attach(chain[i], chain[i - 1]);
  }
}

void Forest::propagate_cost(NodeId from) {
  std::vector<NodeId> stack(children_[from].begin(), children_[from].end());
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    cost_[v] = cost_[parent_[v]] + distance(config(v), config(parent_[v]));
    stack.insert(stack.end(), children_[v].begin(), children_[v].end());
  }
}

TreeId Forest::merge_trees(TreeId tree_a, TreeId tree_b, NodeId in_a, NodeId in_b) {
  if (in_a >= size() || in_b >= size()) throw std::out_of_range("unknown bridge node");
  const TreeId a = tree_of(in_a);
  const TreeId b = tree_of(in_b);
  if (a != tree_a || b != tree_b) throw std::invalid_argument("bridge nodes do not belong to the given trees");
  if (a == b) throw std::logic_error("cannot merge a tree with itself");

  bool keep_a;
  if (root_tree_ && a == *root_tree_) {
    keep_a = true;
  } else if (root_tree_ && b == *root_tree_) {
    keep_a = false;
  } else {
    const std::size_t sa = tree_size(a), sb = tree_size(b);
    keep_a = sa > sb || (sa == sb && a < b);
  }
  const TreeId keeper = keep_a ? a : b;
  const NodeId absorbed_node = keep_a ? in_b : in_a;
  const NodeId anchor = keep_a ? in_a : in_b;

  reroot(absorbed_node);
  attach(absorbed_node, anchor);

  NodeId ra = find(in_a), rb = find(in_b);
  if (uf_size_[ra] < uf_size_[rb]) std::swap(ra, rb);
  uf_parent_[rb] = ra;
  uf_size_[ra] += uf_size_[rb];
  uf_label_[ra] = keeper;
  --live_trees_;

  if (root_tree_ && keeper == *root_tree_) {
    cost_[absorbed_node] = cost_[anchor] + distance(config(absorbed_node), config(anchor));
    propagate_cost(absorbed_node);
  }
  return keeper;
}

JoinReport Forest::join_within_epsilon(std::span<const double> q, double epsilon, const Environment& env,
                                       double resolution) {
  JoinReport report;
  std::vector<NodeId> reachable;
  for (NodeId id : index_.within_radius(q, epsilon)) {
    if (env.segment_free(config(id), q, resolution)) reachable.push_back(id);
  }
  if (reachable.empty()) return report;

  NodeId parent = kNoNode;
  double best = kInf;
  for (NodeId id : reachable) {
    if (!in_root_tree(id)) continue;
    const double c = cost_[id] + distance(config(id), q);
    if (c < best) {
      best = c;
      parent = id;
    }
  }
  if (parent == kNoNode) {
    for (NodeId id : reachable) {
      const double c = squared_distance(config(id), q);
      if (c < best) {
        best = c;
        parent = id;
      }
    }
  }

  // Bridge to each other tree through its nearest reachable node.
  std::map<TreeId, NodeId> bridges;
  for (NodeId id : reachable) {
    const TreeId t = tree_of(id);
    auto [it, inserted] = bridges.try_emplace(t, id);
    if (!inserted && squared_distance(config(id), q) < squared_distance(config(it->second), q)) it->second = id;
  }

  const NodeId node = add_node(q, parent);
  report.node = node;
  report.parent = parent;
  for (const auto& [t, via] : bridges) report.joined_trees.push_back(t);
  report.joined_root = root_tree_ && bridges.contains(*root_tree_);

  const TreeId home = tree_of(parent);
  for (const auto& [t, via] : bridges) {
    if (t == home) continue;
    merge_trees(tree_of(node), t, node, via);
  }
  report.tree = tree_of(node);
  return report;
}

std::size_t Forest::rewire(NodeId node, const Environment& env, const RewireParams& params) {
  if (!in_root_tree(node)) throw std::logic_error("rewire requires a root-tree node");
  const TreeId root = *root_tree_;
  const double r = rewire_radius(tree_size(root), dim_, params.epsilon, params.gamma);
  const auto q = config(node);
  auto neighbours = index_.within_radius_if(q, r, [&](NodeId id) { return id != node && tree_of(id) == root; });
  if (neighbours.empty()) return 0;

  // Choose parent: cheapest valid neighbour that strictly beats the current cost.
  struct Candidate {
    double cost;
    NodeId id;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(neighbours.size());
  for (NodeId id : neighbours) candidates.push_back({cost_[id] + distance(config(id), q), id});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.cost < y.cost || (x.cost == y.cost && x.id < y.id); });
  for (const auto& c : candidates) {
    if (!(c.cost < cost_[node])) break;
    if (c.id == parent_[node]) break;
    if (env.segment_free(config(c.id), q, params.resolution)) {
      detach(node);
      attach(node, c.id);
      cost_[node] = c.cost;
      propagate_cost(node);
      break;
    }
  }

  std::size_t rewired = 0;
  for (NodeId id : neighbours) {
    if (id == parent_[node]) continue;
    const double via = cost_[node] + distance(config(id), q);
    if (!(via < cost_[id])) continue;
    if (!env.segment_free(config(id), q, params.resolution)) continue;
    detach(id);
    attach(id, node);
    cost_[id] = via;
    propagate_cost(id);
    ++rewired;
  }
  return rewired;
}

NodeId Forest::nearest(std::span<const double> q) const {
  if (empty()) throw std::logic_error("nearest query on an empty forest");
  return *index_.nearest(q);
}

std::optional<NodeId> Forest::nearest_in_tree(std::span<const double> q, TreeId tree) const {
  return index_.nearest_if(q, [&](NodeId id) { return tree_of(id) == tree; });
}

std::vector<NodeId> Forest::within_radius(std::span<const double> q, double r) const {
  return index_.within_radius(q, r);
}

Path Forest::extract_path(NodeId node) const {
  if (node >= size() || !in_root_tree(node)) throw std::logic_error("path extraction needs a root-tree node");
  Path path;
  for (NodeId v = node; v != kNoNode; v = parent_[v]) path.waypoints.emplace_back(config(v));
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  path.cost = cost_[node];
  return path;
}

std::optional<std::string> Forest::check_invariants() const {
  const std::size_t n = size();
  for (NodeId v = 0; v < n; ++v) {
    NodeId u = v;
    std::size_t steps = 0;
    while (parent_[u] != kNoNode) {
      if (tree_of(parent_[u]) != tree_of(u)) {
        std::ostringstream why;
        why << "edge " << u << "->" << parent_[u] << " crosses trees";
        return why.str();
      }
      u = parent_[u];
      if (++steps > n) return "parent cycle through node " + std::to_string(v);
    }
    if (tree_of(v) != u) return "node " + std::to_string(v) + " does not reach its tree root";
    if (in_root_tree(v)) {
      const double expect = parent_[v] == kNoNode ? 0.0 : cost_[parent_[v]] + distance(config(v), config(parent_[v]));
      if (std::abs(cost_[v] - expect) > 1e-9 * std::max(1.0, expect))
        return "cost of node " + std::to_string(v) + " is inconsistent with its parent";
    } else if (cost_[v] != kInf) {
      return "node " + std::to_string(v) + " outside the root tree has a finite cost";
    }
  }
  return std::nullopt;
}

void Forest::dump(std::ostream& out) const {
  for (NodeId v = 0; v < size(); ++v) {
    out << "node " << v;
    for (double c : config(v)) out << ' ' << c;
    out << " parent=";
    if (parent_[v] == kNoNode) {
      out << '-';
    } else {
      out << parent_[v];
    }
    out << " cost=" << cost_[v] << " tree=" << tree_of(v) << '\n';
  }
}

GraphSnapshot Forest::snapshot() const {
  GraphSnapshot s;
  s.dimension = dim_;
  s.coords.reserve(size() * dim_);
  for (NodeId v = 0; v < size(); ++v) {
    const auto c = config(v);
    s.coords.insert(s.coords.end(), c.begin(), c.end());
    s.group.push_back(tree_of(v));
    if (parent_[v] != kNoNode) s.edges.emplace_back(parent_[v], v);
  }
  return s;
}

}  // namespace rrdt
