#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rrdt/rng.hpp"
#include "stats.hpp"

namespace rrdt {
namespace {

TEST(RandomStream, ReplaysFromSeed) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, MatchesCounterFormula) {
  // Output i is mix64(key + (i+1) * golden) with key = mix64(seed).
  RandomStream r(7);
  const std::uint64_t key = mix64(7);
  for (std::uint64_t i = 1; i <= 5; ++i) EXPECT_EQ(r.next_u64(), mix64(key + i * 0x9E3779B97F4A7C15ULL));
}

TEST(RandomStream, SplitDoesNotAdvanceParent) {
  RandomStream a(3), b(3);
  (void)a.split(11);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(a.split(1).next_u64(), a.split(2).next_u64());
}

TEST(RandomStream, UniformStaysInUnitInterval) {
  RandomStream r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, BelowIsUniform) {
  RandomStream r(5);
  constexpr int kBins = 7, kDraws = 70000;
  std::vector<double> obs(kBins, 0.0), exp(kBins, kDraws / double(kBins));
  for (int i = 0; i < kDraws; ++i) obs[r.below(kBins)] += 1.0;
  EXPECT_LT(test::pearson(obs, exp), test::chi_square_critical(kBins - 1, 0.01));
}

TEST(RandomStream, NormalMoments) {
  RandomStream r(9);
  constexpr int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.015);
}

TEST(RandomStream, GammaAndBetaMeans) {
  RandomStream r(10);
  constexpr int n = 100000;
  for (double shape : {0.5, 1.0, 3.5}) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += r.gamma(shape);
    EXPECT_NEAR(s / n, shape, 0.03 * shape + 0.01) << "shape " << shape;
  }
  double s = 0;
  for (int i = 0; i < n; ++i) s += r.beta(2.0, 5.0);
  EXPECT_NEAR(s / n, 2.0 / 7.0, 0.005);
}

TEST(Hashing, StringHashAndCombineAreOrderSensitive) {
  EXPECT_NE(hash_string("rrt"), hash_string("rrdt"));
  EXPECT_NE(hash_combine(1, 2), hash_combine(2, 1));
  EXPECT_EQ(hash_string("maze"), hash_string("maze"));
}

}  // namespace
}  // namespace rrdt
