#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrdt/nn_index.hpp"
#include "rrdt/rng.hpp"

namespace rrdt {
namespace {

using Id = NearestIndex::Id;

Id scan_nearest(const std::vector<std::vector<double>>& pts, std::span<const double> q) {
  Id best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Id i = 0; i < pts.size(); ++i) {
    const double d = squared_distance(pts[i], q);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<Id> scan_radius(const std::vector<std::vector<double>>& pts, std::span<const double> q, double r) {
  std::vector<Id> out;
  for (Id i = 0; i < pts.size(); ++i)
    if (squared_distance(pts[i], q) <= r * r) out.push_back(i);
  return out;
}

TEST(NearestIndex, EmptyAndSingle) {
  NearestIndex idx(2);
  const std::vector<double> q{1.0, 2.0};
  EXPECT_FALSE(idx.nearest(q).has_value());
  EXPECT_TRUE(idx.within_radius(q, 10).empty());
  idx.insert(std::vector<double>{5.0, 5.0});
  EXPECT_EQ(idx.nearest(q), Id{0});
}

// 1,000 instances of 100 random points, each queried against a linear scan.
TEST(NearestIndex, MatchesLinearScanOnRandomInstances) {
  RandomStream rng(2024);
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t d = 2 + rng.below(3);
    NearestIndex idx(d);
    std::vector<std::vector<double>> pts;
    const bool lattice = inst % 4 == 0;  // many exact ties
    for (int i = 0; i < 100; ++i) {
      std::vector<double> p(d);
      for (auto& c : p) c = lattice ? static_cast<double>(rng.below(5)) : rng.uniform(0, 100);
      pts.push_back(p);
      idx.insert(p);
    }
    for (int k = 0; k < 10; ++k) {
      std::vector<double> q(d);
      for (auto& c : q) c = lattice ? static_cast<double>(rng.below(5)) + 0.5 * rng.below(2) : rng.uniform(0, 100);
      ASSERT_EQ(*idx.nearest(q), scan_nearest(pts, q)) << "instance " << inst;
      const double r = lattice ? static_cast<double>(rng.below(3)) : rng.uniform(0, 30);
      ASSERT_EQ(idx.within_radius(q, r), scan_radius(pts, q, r)) << "instance " << inst;
    }
  }
}

TEST(NearestIndex, LargeIncrementalIndexMatchesScan) {
  RandomStream rng(7);
  NearestIndex idx(2);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 5000; ++i) {
    std::vector<double> p{rng.uniform(0, 100), rng.uniform(0, 100)};
    pts.push_back(p);
    idx.insert(p);
    if (i % 97 == 0) {
      const std::vector<double> q{rng.uniform(0, 100), rng.uniform(0, 100)};
      ASSERT_EQ(*idx.nearest(q), scan_nearest(pts, q));
      ASSERT_EQ(idx.within_radius(q, 5.0), scan_radius(pts, q, 5.0));
    }
  }
}

TEST(NearestIndex, ZeroRadiusReturnsColocatedPoints) {
  NearestIndex idx(2);
  idx.insert(std::vector<double>{1, 1});
  idx.insert(std::vector<double>{2, 2});
  idx.insert(std::vector<double>{1, 1});
  const std::vector<double> q{1, 1};
  EXPECT_EQ(idx.within_radius(q, 0.0), (std::vector<Id>{0, 2}));
  EXPECT_EQ(*idx.nearest(q), Id{0});
}

TEST(NearestIndex, PredicateFiltersCandidates) {
  NearestIndex idx(2);
  for (int i = 0; i < 200; ++i) idx.insert(std::vector<double>{double(i), 0.0});
  const std::vector<double> q{10.2, 0.0};
  EXPECT_EQ(*idx.nearest_if(q, [](Id id) { return id % 2 == 1; }), Id{11});
  EXPECT_FALSE(idx.nearest_if(q, [](Id) { return false; }).has_value());
  EXPECT_EQ(idx.within_radius_if(q, 2.0, [](Id id) { return id != 10; }), (std::vector<Id>{9, 11, 12}));
}

}  // namespace
}  // namespace rrdt
