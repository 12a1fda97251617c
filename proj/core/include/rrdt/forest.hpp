#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrdt/configuration.hpp"
#include "rrdt/environment.hpp"
#include "rrdt/nn_index.hpp"
#include "rrdt/snapshot.hpp"

namespace rrdt {

using NodeId = std::uint32_t;
/// A tree is named by the id of its parentless root node.
using TreeId = NodeId;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class TreeKind { root, dtree };

/// Outcome of an epsilon-join. `node` is empty when nothing was reachable.
struct JoinReport {
  std::optional<NodeId> node;
  NodeId parent = kNoNode;
  std::vector<TreeId> joined_trees;  // canonical ids before merging, ascending
  TreeId tree = kNoNode;             // canonical id after merging
  bool joined_root = false;

  bool joined() const noexcept { return node.has_value(); }
};

struct RewireParams {
  double epsilon = 1.0;
  double gamma = 1.0;
  double resolution = 0.5;
};

/// Rewiring constant 2 (1 + 1/d)^(1/d) (free volume / unit ball volume)^(1/d).
double default_rewire_gamma(const Environment& env);

/// Shrinking-ball radius min(epsilon, gamma (ln n / n)^(1/d)); zero for n <= 1.
double rewire_radius(std::size_t n, std::size_t dimension, double epsilon, double gamma);

struct Path {
  std::vector<Configuration> waypoints;
  double cost = 0.0;
};

/// Disjoint trees over one node store.
///
/// Tree membership is a union-find over node ids whose representative carries
/// the tree's root node id. At most one tree is the root tree (the one holding
/// the start configuration); only its nodes carry finite cost-to-root. Nodes
/// and trees are never deleted.
class Forest {
 public:
  explicit Forest(std::size_t dimension);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return parent_.size(); }
  bool empty() const noexcept { return parent_.empty(); }
  std::size_t trees_created() const noexcept { return trees_created_; }
  std::size_t tree_count() const noexcept { return live_trees_; }

  std::span<const double> config(NodeId id) const { return index_.point(id); }
  NodeId parent(NodeId id) const { return parent_.at(id); }
  double cost(NodeId id) const { return cost_.at(id); }
  const std::vector<NodeId>& children(NodeId id) const { return children_.at(id); }

  TreeId tree_of(NodeId id) const;
  std::size_t tree_size(TreeId tree) const;
  std::optional<TreeId> root_tree() const noexcept { return root_tree_; }
  bool in_root_tree(NodeId id) const;

  /// Distance from a tree's root to the nearest node that existed when the
  /// tree was created (infinity for the first tree).
  double creation_clearance(TreeId tree) const;

  /// Starts a singleton tree at q. Only one root tree may exist.
  /// Throws std::invalid_argument if q is not free.
  TreeId insert_root(const Environment& env, std::span<const double> q, TreeKind kind);

  /// Appends q as a child of `parent`; the caller has validated the edge.
  NodeId add_node(std::span<const double> q, NodeId parent);

  /// Attaches q to every tree holding a node within `epsilon` whose segment to
  /// q is free, merging those trees. Parent: the reachable root-tree neighbour
  /// minimising cost + distance if any, otherwise the nearest reachable one.
  JoinReport join_within_epsilon(std::span<const double> q, double epsilon, const Environment& env,
                                 double resolution);

  /// Merges tree_a and tree_b across the validated bridge (in_a, in_b). The
  /// root tree, else the larger tree, keeps its structure; the other side is
  /// re-rooted at its bridge node and hung from the opposite bridge node.
  TreeId merge_trees(TreeId tree_a, TreeId tree_b, NodeId in_a, NodeId in_b);

  /// RRT* choose-parent and neighbour rewiring around a root-tree node.
  /// Returns the number of re-parented neighbours.
  std::size_t rewire(NodeId node, const Environment& env, const RewireParams& params);

  /// Nearest node, ties to lowest id. Throws std::logic_error when empty.
  NodeId nearest(std::span<const double> q) const;
  std::optional<NodeId> nearest_in_tree(std::span<const double> q, TreeId tree) const;
  std::vector<NodeId> within_radius(std::span<const double> q, double r) const;

  /// Start-to-node path by parent traversal. Node must be in the root tree.
  Path extract_path(NodeId node) const;

  /// Acyclicity, membership and cost consistency; returns a description of
  /// the first violation found.
  std::optional<std::string> check_invariants() const;

  /// Runs check_invariants every `n` insertions and throws on violation
  /// (0 disables).
  void set_self_check_interval(std::size_t n) noexcept { self_check_interval_ = n; }

  /// `node <id> <coords...> parent=<id|-> cost=<v> tree=<id>` per node.
  void dump(std::ostream& out) const;

  GraphSnapshot snapshot() const;

 private:
  NodeId push_node(std::span<const double> q, NodeId parent, double cost);
  NodeId find(NodeId id) const;
  void attach(NodeId child, NodeId parent);
  void detach(NodeId child);
  void reroot(NodeId node);
  void propagate_cost(NodeId from);
  void after_insert();

  std::size_t dim_;
  NearestIndex index_;
  std::vector<NodeId> parent_;
  std::vector<double> cost_;
  std::vector<std::vector<NodeId>> children_;
  mutable std::vector<NodeId> uf_parent_;
  std::vector<std::uint32_t> uf_size_;
  std::vector<TreeId> uf_label_;
  std::vector<double> clearance_;  // by tree root id; NaN for non-roots
  std::optional<TreeId> root_tree_;
  std::size_t trees_created_ = 0;
  std::size_t live_trees_ = 0;
  std::size_t self_check_interval_ = 0;
};

}  // namespace rrdt
