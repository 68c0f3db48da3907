#include "sticky/symmetry.h"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "sticky/error.h"
#include "test_util.h"

namespace sticky {
namespace {

// |Aut(A)| by trying every relabeling.
int BruteAutomorphismCount(const AdjacencyMatrix& a) {
  int count = 0;
  for (const Permutation& p : testing::AllPermutations(a.size())) count += a.Permuted(p) == a;
  return count;
}

std::uint64_t Factorial(int n) { return n <= 1 ? 1 : n * Factorial(n - 1); }

SymmetryOptions FastOptions(std::uint64_t seed = 1) {
  SymmetryOptions o;
  o.path.seed = seed;
  o.path.nmax = 20000;
  o.path.retries = 1;
  return o;
}

void ExpectConsistent(const SymmetryReport& r) {
  EXPECT_TRUE(r.point_group.IsGroup());
  EXPECT_TRUE(r.sticky_group.IsGroup());
  EXPECT_TRUE(r.point_group.IsSubsetOf(r.sticky_group));
  for (const PiOperation& op : r.sticky_group.elements()) {
    EXPECT_TRUE(std::binary_search(r.automorphisms.begin(), r.automorphisms.end(), op.perm));
  }
  EXPECT_EQ(r.sigma, static_cast<std::uint64_t>(r.sticky_group.order()));
  EXPECT_NO_THROW(CheckReport(r));
}

TEST(SymmetryTest, FlexibleLoopsReachEveryGraphSymmetry) {
  for (int n = 4; n <= 8; ++n) {
    const Cluster c = testing::Sampled(CanonicalLoop(n), 1000, n);
    SymmetryOptions o = FastOptions(n);
    o.path.tol = o.path.sigma = 0.1;
    o.strategy = SearchStrategy::kExhaustive;
    const SymmetryReport r = StickySymmetryGroup(c, o);
    const int aut = BruteAutomorphismCount(r.adjacency);
    EXPECT_EQ(aut, 2 * n);
    EXPECT_EQ(r.sigma, static_cast<std::uint64_t>(2 * aut)) << "n=" << n;
    EXPECT_EQ(r.sigma, static_cast<std::uint64_t>(4 * n));
    EXPECT_EQ(r.counting_number, 2 * Factorial(n) / r.sigma);
    EXPECT_EQ(r.closure_count(), 0);
    ExpectConsistent(r);
  }
}

TEST(SymmetryTest, LongLoopsWithCosetSearch) {
  for (int n : {12, 15}) {
    const Cluster c = testing::Sampled(CanonicalLoop(n), 1000, n);
    const SymmetryReport r = StickySymmetryGroup(c, FastOptions(n));
    EXPECT_EQ(r.sigma, static_cast<std::uint64_t>(4 * n)) << "n=" << n;
    EXPECT_LT(r.path_searches, 4 * n);
    ExpectConsistent(r);
  }
}

TEST(SymmetryTest, LoopSixEveryImageReachable) {
  const Cluster c = testing::Sampled(CanonicalLoop(6), 1000, 11);
  SymmetryOptions o = FastOptions(11);
  o.path.tol = o.path.sigma = 0.1;
  o.path.nr = 20;
  o.strategy = SearchStrategy::kExhaustive;
  const SymmetryReport r = StickySymmetryGroup(c, o);
  ASSERT_EQ(r.elements.size(), 24u);
  for (const ElementRecord& e : r.elements) {
    EXPECT_NE(e.status, ElementStatus::kNotFound) << ToCycleString(e.op);
    EXPECT_NE(e.status, ElementStatus::kClosure) << ToCycleString(e.op);
  }
}

TEST(SymmetryTest, Chains) {
  for (int n = 4; n <= 8; ++n) {
    const Cluster c = testing::Sampled(CanonicalChain(n), 1000, n);
    const SymmetryReport r = StickySymmetryGroup(c, FastOptions(n));
    EXPECT_EQ(BruteAutomorphismCount(r.adjacency), 2);
    EXPECT_EQ(r.sigma, 4u) << "n=" << n;
    EXPECT_EQ(r.counting_number, Factorial(n) / 2);
    ExpectConsistent(r);
  }
}

TEST(SymmetryTest, RigidClustersKeepOnlyThePointGroup) {
  struct Case {
    Cluster cluster;
    std::uint64_t sigma;
  };
  // Full octahedral group: 24 rotations, each also as a reflection.
  for (const Case& k : {Case{Octahedron(), 48}, Case{Polytetrahedron(), 4}}) {
    SymmetryOptions o = FastOptions();
    o.path.nmax = 5000;
    const SymmetryReport r = StickySymmetryGroup(k.cluster, o);
    EXPECT_EQ(r.sigma, k.sigma);
    EXPECT_EQ(r.counting_number, 2 * Factorial(6) / k.sigma);
    EXPECT_EQ(r.sticky_group.elements(), r.point_group.elements());
    EXPECT_EQ(r.adjacency.edge_count(), 12);
    ExpectConsistent(r);
  }
}

TEST(SymmetryTest, TwoBondModeAndColoring) {
  const SymmetryReport r = StickySymmetryGroup(SymmetricTwoBondCluster(), FastOptions());
  EXPECT_EQ(r.automorphisms.size(), 16u);
  EXPECT_EQ(BruteAutomorphismCount(r.adjacency), 16);
  EXPECT_EQ(r.point_group.order(), 4);
  EXPECT_EQ(r.sigma, 8u);
  EXPECT_EQ(r.counting_number, 180u);
  const std::set<std::string> expected = {"E",         "(56)*",      "(12)(34)*",  "(12)(34)(56)",
                                          "(13)(24)*", "(13)(24)(56)", "(14)(23)", "(14)(23)(56)*"};
  std::set<std::string> got;
  for (const PiOperation& op : r.sticky_group.elements()) got.insert(ToCycleString(op));
  EXPECT_EQ(got, expected);
  ExpectConsistent(r);

  const SymmetryReport colored = ColoredSymmetry(r, Partition({0, 0, 1, 1, 2, 2}));
  EXPECT_EQ(colored.sigma, 4u);
  EXPECT_EQ(colored.counting_number, 2u * 2 * 2 * 2 / 4);
  EXPECT_EQ(colored.path_searches, 0);
  EXPECT_TRUE(colored.sticky_group.IsSubsetOf(r.sticky_group));
  ExpectConsistent(colored);

  const SymmetryReport same = ColoredSymmetry(r, Partition::SingleClass(6));
  EXPECT_EQ(same.sigma, r.sigma);
}

TEST(SymmetryTest, ColoringMustRefineRadii) {
  const SymmetryReport r =
      StickySymmetryGroup(AlternatingRadiiLoop(6, 0.6, 0.4), FastOptions());
  try {
    ColoredSymmetry(r, Partition::SingleClass(6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kColorRadiiConflict);
  }
}

TEST(SymmetryTest, AlternatingRadiiLoop) {
  const SymmetryReport r =
      StickySymmetryGroup(AlternatingRadiiLoop(6, 0.6, 0.4), FastOptions());
  EXPECT_EQ(r.radii_partition.num_classes(), 2);
  // Graph symmetries of the hexagon that keep the two radius classes.
  int oracle = 0;
  for (const Permutation& p : testing::AllPermutations(6)) {
    bool keeps = r.adjacency.Permuted(p) == r.adjacency;
    for (int i = 0; i < 6; ++i) keeps = keeps && (i % 2) == (p[i] % 2);
    oracle += keeps;
  }
  EXPECT_EQ(oracle, 6);
  EXPECT_EQ(r.automorphisms.size(), 6u);
  EXPECT_EQ(r.sigma, 12u);
  EXPECT_EQ(r.counting_number, 2u * 6 * 6 / 12);
  ExpectConsistent(r);
}

TEST(SymmetryTest, UnequalDimer) {
  Positions p(2, 3);
  p << 0, 0, 0, 1, 0, 0;
  Eigen::Vector2d radii(0.4, 0.6);
  const SymmetryReport r = StickySymmetryGroup(Cluster(p, radii), FastOptions());
  EXPECT_EQ(r.sigma, 2u);
  EXPECT_EQ(r.counting_number, 1u);
  EXPECT_EQ(r.path_searches, 0);
}

TEST(SymmetryTest, SingletonColoringOfChain) {
  const SymmetryReport r =
      StickySymmetryGroup(testing::Sampled(CanonicalChain(4), 500, 4), FastOptions());
  const SymmetryReport c = ColoredSymmetry(r, Partition::Singletons(4));
  EXPECT_EQ(c.sigma, 2u);
  EXPECT_EQ(c.counting_number, 1u);
}

TEST(SymmetryTest, WithoutInversions) {
  SymmetryOptions o = FastOptions();
  o.include_inversions = false;
  const SymmetryReport r = StickySymmetryGroup(testing::Sampled(CanonicalLoop(5), 500, 5), o);
  EXPECT_EQ(r.sigma, 10u);
  EXPECT_EQ(r.counting_number, Factorial(5) / 10);
  for (const PiOperation& op : r.sticky_group.elements()) EXPECT_EQ(op.sign, 1);
}

TEST(SymmetryTest, IndependentOfSeedAndStrategy) {
  const Cluster c = SymmetricTwoBondCluster();
  const SymmetryReport a = StickySymmetryGroup(c, FastOptions(3));
  const SymmetryReport b = StickySymmetryGroup(c, FastOptions(4));
  SymmetryOptions ex = FastOptions(5);
  ex.strategy = SearchStrategy::kExhaustive;
  const SymmetryReport e = StickySymmetryGroup(c, ex);
  EXPECT_EQ(a.sticky_group.elements(), b.sticky_group.elements());
  EXPECT_EQ(a.sticky_group.elements(), e.sticky_group.elements());
}

TEST(SymmetryTest, Reproducible) {
  const Cluster c = testing::Sampled(CanonicalChain(5), 500, 2);
  const SymmetryReport a = StickySymmetryGroup(c, FastOptions(9));
  const SymmetryReport b = StickySymmetryGroup(c, FastOptions(9));
  ASSERT_EQ(a.elements.size(), b.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    EXPECT_EQ(a.elements[i].stats.total_points, b.elements[i].stats.total_points);
    EXPECT_EQ(a.elements[i].status, b.elements[i].status);
  }
}

TEST(SymmetryTest, FoundPathsEndNearTheirImages) {
  const Cluster c = testing::Sampled(CanonicalLoop(5), 500, 6);
  SymmetryOptions o = FastOptions(6);
  o.strategy = SearchStrategy::kExhaustive;
  const SymmetryReport r = StickySymmetryGroup(c, o);
  int paths = 0;
  for (const ElementRecord& e : r.elements) {
    if (e.status != ElementStatus::kPath) continue;
    ++paths;
    EXPECT_TRUE(e.searched);
    EXPECT_LT(e.final_distance, o.path.tol);
    EXPECT_GE(e.path_length, 1);
  }
  EXPECT_GT(paths, 0);
}

TEST(SymmetryTest, SnapToContactsMakesContactsExact) {
  Cluster c = CanonicalLoop(6);
  Positions p = c.positions();
  p(0, 0) += 3e-5;
  const Cluster noisy(p, c.radii());
  const AdjacencyMatrix a = DetectContacts(noisy);
  const Cluster snapped = SnapToContacts(noisy, a);
  for (auto [i, j] : a.edges()) {
    EXPECT_NEAR((snapped.position(i) - snapped.position(j)).norm(), 1.0, 1e-12);
  }
  EXPECT_LT(snapped.CenterOfMass().norm(), 1e-12);
}

TEST(SymmetryTest, OverlapIsRejected) {
  Positions p(2, 3);
  p << 0, 0, 0, 0.5, 0, 0;
  try {
    StickySymmetryGroup(Cluster::Uniform(p), FastOptions());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlap);
  }
}

TEST(SymmetryTest, ParseStrategy) {
  EXPECT_EQ(ParseSearchStrategy("cosets"), SearchStrategy::kCosets);
  EXPECT_EQ(ParseSearchStrategy("exhaustive"), SearchStrategy::kExhaustive);
  EXPECT_THROW(ParseSearchStrategy("greedy"), Error);
}

}  // namespace
}  // namespace sticky
