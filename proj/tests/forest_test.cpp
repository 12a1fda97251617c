#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "rrdt/forest.hpp"
#include "rrdt/maps.hpp"
#include "rrdt/planners.hpp"

namespace rrdt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const RewireParams kWide{100.0, 1e6, 0.05};  // radius = epsilon for small n

TEST(Forest, InsertRoot) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  const TreeId root = f.insert_root(env, Configuration{1, 1}, TreeKind::root);
  EXPECT_EQ(f.size(), 1u);
  EXPECT_EQ(f.tree_count(), 1u);
  EXPECT_EQ(f.root_tree(), root);
  EXPECT_EQ(f.cost(root), 0.0);
  const TreeId d = f.insert_root(env, Configuration{5, 5}, TreeKind::dtree);
  EXPECT_EQ(f.tree_count(), 2u);
  EXPECT_EQ(f.trees_created(), 2u);
  EXPECT_EQ(f.cost(d), kInf);
  EXPECT_NEAR(f.creation_clearance(d), std::sqrt(32.0), 1e-12);
  EXPECT_THROW(f.insert_root(env, Configuration{2, 2}, TreeKind::root), std::logic_error);
  EXPECT_THROW(f.insert_root(env, Configuration{20, 2}, TreeKind::dtree), std::invalid_argument);
}

TEST(Forest, JoinOutsideEpsilonIsNoJoin) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{1, 1}, TreeKind::root);
  const JoinReport r = f.join_within_epsilon(Configuration{5, 5}, 2.0, env, 0.1);
  EXPECT_FALSE(r.joined());
  EXPECT_EQ(f.size(), 1u);
}

TEST(Forest, JoinMergesBothSingletons) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  const TreeId a = f.insert_root(env, Configuration{0, 0}, TreeKind::dtree);
  const TreeId b = f.insert_root(env, Configuration{1.5, 0}, TreeKind::dtree);
  const JoinReport r = f.join_within_epsilon(Configuration{0.75, 0}, 1.0, env, 0.1);
  ASSERT_TRUE(r.joined());
  EXPECT_EQ(r.joined_trees, (std::vector<TreeId>{a, b}));
  EXPECT_EQ(f.tree_count(), 1u);
  EXPECT_EQ(f.tree_size(r.tree), 3u);
  EXPECT_EQ(f.tree_of(a), f.tree_of(b));
  EXPECT_FALSE(f.check_invariants());
}

TEST(Forest, WallBlocksJoin) {
  const Environment env = test::wall_column(10, 10, 4);
  Forest f(2);
  f.insert_root(env, Configuration{3.5, 5}, TreeKind::root);
  EXPECT_FALSE(f.join_within_epsilon(Configuration{5.5, 5}, 3.0, env, 0.1).joined());
}

TEST(Forest, JoinPrefersCheapestRootParent) {
  const Environment env = Environment::empty({20, 20});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const NodeId far = f.add_node(Configuration{0, 8}, 0);    // cost 8
  const NodeId near = f.add_node(Configuration{4, 0}, 0);   // cost 4
  const JoinReport r = f.join_within_epsilon(Configuration{3, 6}, 10.0, env, 0.1);
  ASSERT_TRUE(r.joined());
  // cost via root 6.71, via far 11.6, via near 10.08
  EXPECT_EQ(r.parent, 0u);
  (void)far;
  (void)near;
  EXPECT_TRUE(r.joined_root);
  EXPECT_NEAR(f.cost(*r.node), std::sqrt(45.0), 1e-12);
}

TEST(Forest, JoinWithoutRootUsesNearestNeighbour) {
  const Environment env = Environment::empty({20, 20});
  Forest f(2);
  const TreeId t = f.insert_root(env, Configuration{0, 0}, TreeKind::dtree);
  const NodeId n1 = f.add_node(Configuration{3, 0}, t);
  const JoinReport r = f.join_within_epsilon(Configuration{4, 0}, 5.0, env, 0.1);
  EXPECT_EQ(r.parent, n1);
  EXPECT_FALSE(r.joined_root);
}

TEST(Forest, MergeSingleEdge) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  const TreeId root = f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const TreeId d = f.insert_root(env, Configuration{3, 0}, TreeKind::dtree);
  EXPECT_EQ(f.merge_trees(root, d, 0, 1), root);
  EXPECT_EQ(f.tree_count(), 1u);
  EXPECT_DOUBLE_EQ(f.cost(1), 3.0);
  EXPECT_EQ(f.parent(1), 0u);
}

TEST(Forest, MergeReRootsChainAndPropagatesCosts) {
  const Environment env = Environment::empty({20, 20});
  Forest f(2);
  const TreeId root = f.insert_root(env, Configuration{9, 0}, TreeKind::root);
  // d-tree rooted at (12,0) with chain (12,0) -> (11,0) -> (10,0)
  const TreeId d = f.insert_root(env, Configuration{12, 0}, TreeKind::dtree);
  const NodeId n11 = f.add_node(Configuration{11, 0}, d);
  const NodeId n10 = f.add_node(Configuration{10, 0}, n11);
  f.merge_trees(root, d, root, n10);
  EXPECT_DOUBLE_EQ(f.cost(n10), 1.0);
  EXPECT_DOUBLE_EQ(f.cost(n11), 2.0);
  EXPECT_DOUBLE_EQ(f.cost(d), 3.0);
  EXPECT_EQ(f.parent(n10), root);
  EXPECT_EQ(f.parent(n11), n10);
  EXPECT_EQ(f.parent(d), n11);
  EXPECT_FALSE(f.check_invariants());
}

TEST(Forest, MergeErrors) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  const TreeId a = f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const NodeId c = f.add_node(Configuration{1, 0}, a);
  EXPECT_THROW(f.merge_trees(a, a, a, c), std::logic_error);
  const TreeId b = f.insert_root(env, Configuration{5, 5}, TreeKind::dtree);
  EXPECT_THROW(f.merge_trees(a, b, b, a), std::invalid_argument);
}

TEST(Forest, LargerDtreeKeepsItsStructure) {
  const Environment env = Environment::empty({20, 20});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const TreeId big = f.insert_root(env, Configuration{10, 10}, TreeKind::dtree);
  f.add_node(Configuration{11, 10}, big);
  const TreeId small = f.insert_root(env, Configuration{15, 10}, TreeKind::dtree);
  EXPECT_EQ(f.merge_trees(small, big, small, 2), big);
  EXPECT_EQ(f.parent(big), kNoNode);
  EXPECT_EQ(f.parent(small), 2u);
  EXPECT_EQ(f.tree_of(small), big);
}

TEST(Rewire, SingletonRootHasNothingToRewire) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{1, 1}, TreeKind::root);
  EXPECT_EQ(f.rewire(0, env, kWide), 0u);
}

TEST(Rewire, ChoosesParentThenRewiresDetour) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const NodeId a = f.add_node(Configuration{2, 0}, 0);                 // cost 2
  const NodeId c = f.add_node(Configuration{2, std::sqrt(5.0)}, 0);    // cost 3
  const NodeId b = f.add_node(Configuration{4, 0}, c);                 // detour, cost 6
  ASSERT_NEAR(f.cost(b), 6.0, 1e-12);
  const NodeId x = f.add_node(Configuration{3, 0}, b);                 // cost 7
  const RewireParams p{2.5, 1e6, 0.05};
  EXPECT_EQ(f.rewire(x, env, p), 1u);
  EXPECT_EQ(f.parent(x), a);
  EXPECT_NEAR(f.cost(x), 3.0, 1e-12);
  EXPECT_EQ(f.parent(b), x);
  EXPECT_NEAR(f.cost(b), 4.0, 1e-12);
  EXPECT_FALSE(f.check_invariants());
}

TEST(Rewire, RejectsNodesOutsideRootTree) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  const TreeId d = f.insert_root(env, Configuration{5, 5}, TreeKind::dtree);
  EXPECT_THROW(f.rewire(d, env, kWide), std::logic_error);
}

// Exhaustive oracle: after rewiring a fresh leaf, its cost equals the best
// over all visible neighbours (and its old parent), every visible neighbour
// is locally optimal with respect to it, and no cost increased.
TEST(Rewire, MatchesExhaustiveParentEnumeration) {
  const Environment env = test::grid_2d(10, 10, {{4, 4}, {4, 5}, {5, 4}, {6, 6}});
  RandomStream rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    Forest f(2);
    auto draw = [&] {
      while (true) {
        Configuration q{rng.uniform(0, 10), rng.uniform(0, 10)};
        if (env.is_free(q)) return q;
      }
    };
    f.insert_root(env, draw(), TreeKind::root);
    const std::size_t n = 2 + rng.below(10);  // up to 12 nodes with the new leaf
    while (f.size() < n) {
      const Configuration q = draw();
      const NodeId p = static_cast<NodeId>(rng.below(f.size()));
      if (env.segment_free(f.config(p), q, 0.05)) f.add_node(q, p);
    }
    Configuration q = draw();
    NodeId p = static_cast<NodeId>(rng.below(f.size()));
    while (!env.segment_free(f.config(p), q, 0.05)) {
      q = draw();
      p = static_cast<NodeId>(rng.below(f.size()));
    }
    const NodeId x = f.add_node(q, p);
    const double eps = rng.uniform(1.0, 8.0);
    const RewireParams params{eps, 1e6, 0.05};
    std::vector<double> before(f.size());
    for (NodeId v = 0; v < f.size(); ++v) before[v] = f.cost(v);

    double best = f.cost(x);
    NodeId best_parent = p;
    std::vector<NodeId> visible;
    for (NodeId v = 0; v < x; ++v) {
      if (distance(f.config(v), q) > eps || !env.segment_free(f.config(v), q, 0.05)) continue;
      visible.push_back(v);
      const double c = f.cost(v) + distance(f.config(v), q);
      if (c < best) {
        best = c;
        best_parent = v;
      }
    }

    f.rewire(x, env, params);
    ASSERT_NEAR(f.cost(x), best, 1e-9) << "trial " << trial;
    ASSERT_EQ(f.parent(x), best_parent) << "trial " << trial;
    for (NodeId v : visible) ASSERT_LE(f.cost(v), f.cost(x) + distance(f.config(v), q) + 1e-9);
    for (NodeId v = 0; v < f.size(); ++v) ASSERT_LE(f.cost(v), before[v] + 1e-9);
    ASSERT_FALSE(f.check_invariants()) << *f.check_invariants();
  }
}

TEST(Rewire, RadiusFormula) {
  EXPECT_EQ(rewire_radius(1, 2, 5.0, 100.0), 0.0);
  EXPECT_NEAR(rewire_radius(1000, 2, 50.0, 30.0), 30.0 * std::sqrt(std::log(1000.0) / 1000.0), 1e-12);
  EXPECT_EQ(rewire_radius(1000, 2, 1.0, 30.0), 1.0);
  const Environment env = Environment::empty({10, 10});
  EXPECT_NEAR(default_rewire_gamma(env), 2.0 * std::sqrt(1.5) * std::sqrt(100.0 / M_PI), 1e-9);
}

TEST(Forest, NearestAndRadiusQueries) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  EXPECT_THROW(f.nearest(Configuration{1, 1}), std::logic_error);
  f.insert_root(env, Configuration{1, 1}, TreeKind::root);
  EXPECT_EQ(f.nearest(Configuration{9, 9}), 0u);
  f.add_node(Configuration{2, 1}, 0);
  f.insert_root(env, Configuration{8, 8}, TreeKind::dtree);
  EXPECT_EQ(f.within_radius(Configuration{1, 1}, 0.0), (std::vector<NodeId>{0}));
  EXPECT_EQ(f.nearest_in_tree(Configuration{7, 7}, 0), NodeId{1});
}

TEST(Forest, ExtractPath) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  Path p0 = f.extract_path(0);
  EXPECT_EQ(p0.waypoints.size(), 1u);
  EXPECT_EQ(p0.cost, 0.0);
  const NodeId a = f.add_node(Configuration{1, 0}, 0);
  const NodeId g = f.add_node(Configuration{1, 1}, a);
  const Path p = f.extract_path(g);
  ASSERT_EQ(p.waypoints.size(), 3u);
  EXPECT_EQ(p.waypoints.front(), (Configuration{0, 0}));
  EXPECT_DOUBLE_EQ(p.cost, 2.0);
  const TreeId d = f.insert_root(env, Configuration{5, 5}, TreeKind::dtree);
  EXPECT_THROW(f.extract_path(d), std::logic_error);
}

TEST(Forest, DumpFormat) {
  const Environment env = Environment::empty({10, 10});
  Forest f(2);
  f.insert_root(env, Configuration{0, 0}, TreeKind::root);
  f.add_node(Configuration{1.5, 0}, 0);
  f.insert_root(env, Configuration{5, 5}, TreeKind::dtree);
  std::ostringstream out;
  f.dump(out);
  EXPECT_EQ(out.str(),
            "node 0 0 0 parent=- cost=0 tree=0\n"
            "node 1 1.5 0 parent=0 cost=1.5 tree=0\n"
            "node 2 5 5 parent=- cost=inf tree=2\n");
}

TEST(Forest, SelfCheckIntervalCatchesNothingOnValidUse) {
  const Environment env = Environment::empty({50, 50});
  Forest f(2);
  f.set_self_check_interval(10);
  f.insert_root(env, Configuration{25, 25}, TreeKind::root);
  RandomStream rng(3);
  for (int i = 0; i < 500; ++i) {
    const Configuration q{rng.uniform(0, 50), rng.uniform(0, 50)};
    const JoinReport r = f.join_within_epsilon(q, 4.0, env, 0.5);
    if (!r.joined()) f.insert_root(env, q, TreeKind::dtree);
    else if (r.joined_root) f.rewire(*r.node, env, {4.0, default_rewire_gamma(env), 0.5});
  }
  EXPECT_FALSE(f.check_invariants());
}

// On an empty map every new d-tree is founded more than epsilon away from all
// existing nodes, and the count respects the packing bound.
TEST(Forest, EpsilonSeparationAndPackingOnEmptyMap) {
  const Environment env = Environment::empty({100, 100});
  Scenario s;
  s.start = Configuration{5, 5};
  s.goal = Configuration{95, 95};
  s.epsilon = 10.0;
  s.node_budget = 3000;
  s.bandit.decay = 0.9;  // frequent restarts
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    s.seed = seed;
    const PlannerResult r = plan_rrdt_star(s, env);
    const Forest& f = *r.forest;
    for (NodeId v = 1; v < f.size(); ++v) {
      const double c = f.creation_clearance(v);
      if (!std::isnan(c)) ASSERT_GT(c, 10.0);
    }
    EXPECT_LE(f.trees_created(), 400u);
    EXPECT_LE(f.trees_created(), greedy_packing_count(env, 10.0));
  }
}

TEST(Packing, GreedyCountOnSmallGrids) {
  // Cell centres on a 0.5-offset unit lattice; epsilon 1.5 keeps every other
  // centre along each axis.
  EXPECT_EQ(greedy_packing_count(Environment::empty({4, 4}), 1.5), 4u);
  EXPECT_EQ(greedy_packing_count(Environment::empty({4, 4}), 0.5), 16u);
  EXPECT_EQ(greedy_packing_count(Environment({2, 2}, {1, 1}, {0, 0}, {1, 0, 1, 1}), 3.0), 1u);
}

}  // namespace
}  // namespace rrdt
