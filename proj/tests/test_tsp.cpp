#include <gtest/gtest.h>

#include "coopstab/errors.hpp"
#include "coopstab/tsp.hpp"
#include "support.hpp"

namespace coopstab {
namespace {

using testing::collinear_instance;
using testing::random_coalition;
using testing::uniform_instance;

TEST(TspExact, SingletonIsTheOnlyTour) {
  const DistanceMatrix d = gen_asymmetric_metric(5, 2);
  for (int i = 1; i <= 5; ++i) {
    const Tour t = tsp_exact(d, Coalition::singleton(5, i));
    EXPECT_EQ(t.order, (std::vector<int>{0, i, 0}));
    EXPECT_EQ(t.cost, d(0, i) + d(i, 0));
  }
}

TEST(TspExact, CollinearCostsAreTwiceTheFarthestPlayer) {
  const DistanceMatrix d = collinear_instance();
  EXPECT_EQ(tsp_exact(d, Coalition::of(3, {1, 2, 3})).cost, 6.0);
  EXPECT_EQ(tsp_exact(d, Coalition::of(3, {1, 2})).cost, 4.0);
  EXPECT_EQ(tsp_exact(d, Coalition::of(3, {2})).cost, 4.0);
}

TEST(TspExact, MatchesBruteForceOnEuclideanEight) {
  const DistanceMatrix d = gen_euclidean(8, 11);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Coalition s = random_coalition(8, 1 + trial % 8, rng);
    const Tour a = tsp_exact(d, s);
    const Tour b = tsp_bruteforce(d, s);
    EXPECT_EQ(a.cost, b.cost);
    EXPECT_EQ(a.order, b.order);
  }
}

TEST(TspExact, OrderVisitsExactlyTheCoalition) {
  const DistanceMatrix d = gen_asymmetric_metric(9, 4);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Coalition s = random_coalition(9, 1 + trial % 9, rng);
    const Tour t = tsp_exact(d, s);
    ASSERT_GE(t.order.size(), 3u);
    EXPECT_EQ(t.order.front(), 0);
    EXPECT_EQ(t.order.back(), 0);
    std::vector<int> sorted(t.order.begin() + 1, t.order.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, s.members());
    EXPECT_EQ(t.cost, tour_cost(d, t.order));
  }
}

TEST(TspExact, PrefersLexicographicallySmallestOptimalOrder) {
  // On the uniform metric every order is optimal.
  const DistanceMatrix d = uniform_instance(4);
  const Tour t = tsp_exact(d, Coalition::grand(4));
  EXPECT_EQ(t.order, (std::vector<int>{0, 1, 2, 3, 4, 0}));
  EXPECT_EQ(t.cost, 5.0);
}

TEST(TspExact, RefusesAboveCapacity) {
  const DistanceMatrix d = gen_euclidean(17, 1);
  EXPECT_THROW(tsp_exact(d, Coalition::grand(17)), CapacityError);
  EXPECT_NO_THROW(tsp_exact(d, Coalition::grand(17).without(3)));
}

TEST(TspExact, RejectsEmptyAndForeignCoalitions) {
  const DistanceMatrix d = gen_euclidean(4, 1);
  EXPECT_THROW(tsp_exact(d, Coalition(4, 0)), DomainError);
  EXPECT_THROW(tsp_exact(d, Coalition::grand(5)), ShapeError);
}

TEST(TspBruteforce, TwoPlayersTakeTheCheaperDirection) {
  const DistanceMatrix d = gen_asymmetric_metric(4, 13);
  const double forward = d(0, 2) + d(2, 4) + d(4, 0);
  const double backward = d(0, 4) + d(4, 2) + d(2, 0);
  EXPECT_DOUBLE_EQ(tsp_bruteforce(d, Coalition::of(4, {2, 4})).cost, std::min(forward, backward));
}

TEST(TspBruteforce, RefusesAboveCapacity) {
  const DistanceMatrix d = gen_euclidean(10, 1);
  EXPECT_THROW(tsp_bruteforce(d, Coalition::grand(10)), CapacityError);
}

TEST(AllTourCosts, BitIdenticalToPerCoalitionSolves) {
  for (const DistanceMatrix& d : {gen_euclidean(7, 3), gen_asymmetric_metric(7, 3)}) {
    const std::vector<double> table = all_tour_costs(d);
    ASSERT_EQ(table.size(), 128u);
    EXPECT_EQ(table[0], 0.0);
    for (Coalition::Mask s = 1; s < 128; ++s) EXPECT_EQ(table[s], tsp_exact(d, Coalition(7, s)).cost);
  }
}

TEST(AllTourCosts, IncrementsTheSolveCounter) {
  const DistanceMatrix d = gen_euclidean(5, 3);
  const auto before = tsp_solve_count();
  all_tour_costs(d);
  tsp_exact(d, Coalition::grand(5));
  EXPECT_EQ(tsp_solve_count(), before + 2);
}

TEST(Mst, SingletonIsOneDepotEdge) {
  const DistanceMatrix d = gen_euclidean(5, 6);
  const SpanningTree t = mst(d, Coalition::singleton(5, 4));
  ASSERT_EQ(t.edges.size(), 1u);
  EXPECT_EQ(t.edges[0], std::make_pair(0, 4));
  EXPECT_EQ(t.cost, d(0, 4));
}

TEST(Mst, UniformMetricCostsOnePerMember) {
  const DistanceMatrix d = uniform_instance(6);
  std::mt19937_64 rng(2);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(mst(d, random_coalition(6, k, rng)).cost, k);
}

TEST(Mst, NeverExceedsTheTour) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 7;
    const DistanceMatrix d = gen_euclidean(n, 1000 + static_cast<std::uint64_t>(trial));
    const Coalition s = random_coalition(n, 1 + trial % n, rng);
    EXPECT_LE(mst(d, s).cost, tsp_exact(d, s).cost + kTolMetric);
  }
}

TEST(Mst, RejectsAsymmetricInput) {
  EXPECT_THROW(mst(gen_asymmetric_metric(4, 1), Coalition::grand(4)), DomainError);
}

TEST(DoubleTree, SingletonMatchesExactTour) {
  const DistanceMatrix d = gen_euclidean(4, 8);
  const Coalition s = Coalition::singleton(4, 2);
  EXPECT_EQ(double_tree_tour(d, s).cost, tsp_exact(d, s).cost);
}

TEST(DoubleTree, SitsBetweenOptimumAndTwiceTheTree) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 8;
    const DistanceMatrix d = gen_euclidean(n, 5000 + static_cast<std::uint64_t>(trial));
    const Coalition s = random_coalition(n, 1 + trial % n, rng);
    const double tree = mst(d, s).cost;
    const double walk = double_tree_tour(d, s).cost;
    EXPECT_LE(walk, 2.0 * tree + kTolMetric);
    EXPECT_GE(walk, tsp_exact(d, s).cost - kTolMetric);
  }
}

TEST(BirdAllocation, SinglePlayerPaysTheDepotEdge) {
  const DistanceMatrix d = gen_euclidean(1, 4);
  const Allocation x = bird_allocation(d);
  ASSERT_EQ(x.size(), 1);
  EXPECT_EQ(x(0), d(0, 1));
}

TEST(BirdAllocation, CollinearChainChargesUnitEdges) {
  const DistanceMatrix d = collinear_instance();
  EXPECT_EQ(bird_allocation(d), Eigen::Vector3d(1, 1, 1));
  EXPECT_EQ(mst(d, Coalition::grand(3)).cost, 3.0);
}

TEST(BirdAllocation, LiesInTheSpanningTreeCore) {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 8;
    const DistanceMatrix d = gen_euclidean(n, 700 + static_cast<std::uint64_t>(trial));
    const Allocation x = bird_allocation(d);
    const Coalition::Mask full = Coalition::full_mask(n);
    EXPECT_NEAR(x.sum(), mst(d, Coalition::grand(n)).cost, 1e-9);
    for (Coalition::Mask s = 1; s < full; ++s)
      EXPECT_LE(coalition_sum(x, Coalition(n, s)), mst(d, Coalition(n, s)).cost + 1e-9);
  }
}

}  // namespace
}  // namespace coopstab
