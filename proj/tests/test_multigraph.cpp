#include <gtest/gtest.h>

#include <random>

#include "fakesurf/multigraph.hpp"
#include "oracles.hpp"

using namespace fakesurf;

namespace {

std::vector<int> cells(const AdjMatrix& a) { return {a.cells().begin(), a.cells().end()}; }

} // namespace

TEST(AdjMatrix, DecimalRepConcatenatesRows) {
  EXPECT_EQ(decimal_rep(AdjMatrix::from_rows({{2, 2}, {2, 2}})), BigInt(2222));
  // Leading zero drops out of the sum.
  EXPECT_EQ(decimal_rep(AdjMatrix::from_rows({{0, 4}, {4, 0}})), BigInt(440));
  EXPECT_EQ(decimal_rep(AdjMatrix::from_rows({{2, 1, 1}, {1, 0, 3}, {1, 3, 0}})), BigInt(211103130));
}

TEST(AdjMatrix, RejectsInvalidRows) {
  EXPECT_THROW(AdjMatrix::from_rows({{2, 1}, {1, 2}}), std::invalid_argument);            // degree 3
  EXPECT_THROW(AdjMatrix::from_rows({{1, 3}, {3, 1}}), std::invalid_argument);            // odd diagonal
  EXPECT_THROW(AdjMatrix::from_rows({{2, 2}, {1, 3}}), std::invalid_argument);            // asymmetric
  EXPECT_THROW(AdjMatrix::from_rows({{0, 4, 0}, {4, 0}, {0, 0, 4}}), std::invalid_argument); // ragged
  EXPECT_NO_THROW(AdjMatrix::from_rows({{0, 4}, {4, 0}}));
}

TEST(AdjMatrix, ConnectivityAndRegularity) {
  auto two_flowers = AdjMatrix::from_rows({{4, 0}, {0, 4}});
  EXPECT_TRUE(two_flowers.is_four_regular());
  EXPECT_FALSE(two_flowers.is_connected());
  EXPECT_TRUE(AdjMatrix::from_rows({{2, 2}, {2, 2}}).is_connected());
}

TEST(Canonicalize, PaperExampleIsAlreadyMaximal) {
  auto a = AdjMatrix::from_rows({{2, 1, 1}, {1, 0, 3}, {1, 3, 0}});
  EXPECT_EQ(canonicalize_adjacency(a).matrix, a);
}

TEST(Canonicalize, AgreesWithBruteForceOnRandomRelabelings) {
  std::mt19937_64 rng(7);
  for (int t = 1; t <= 6; ++t) {
    for (const auto& s : enumerate_skeleta(t)) {
      std::vector<int> perm(static_cast<std::size_t>(t));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      AdjMatrix shuffled = s.adjacency().permuted(perm);
      auto c = canonicalize_adjacency(shuffled);
      EXPECT_EQ(c.matrix, s.adjacency());
      EXPECT_EQ(shuffled.permuted(c.perm), c.matrix);
      if (t <= 5) EXPECT_EQ(oracle::flatten(oracle::max_form(shuffled.rows())), cells(c.matrix));
    }
  }
}

TEST(Skeleta, CountsMatchBruteForceEnumeration) {
  for (int t = 1; t <= 5; ++t) {
    auto expected = oracle::all_skeleta(t);
    auto got = enumerate_skeleta(t);
    ASSERT_EQ(got.size(), expected.size()) << "t=" << t;
    for (const auto& s : got) EXPECT_TRUE(expected.count(cells(s.adjacency())));
  }
}

TEST(Skeleta, StrictlyDecreasingDecimalRep) {
  for (int t = 1; t <= 6; ++t) {
    auto sk = enumerate_skeleta(t);
    for (std::size_t i = 0; i < sk.size(); ++i) {
      EXPECT_EQ(sk[i].index(), static_cast<int>(i) + 1);
      if (i) EXPECT_GT(decimal_rep(sk[i - 1].adjacency()), decimal_rep(sk[i].adjacency()));
    }
  }
}

TEST(Skeleta, ComplexityFourOrderMatchesPrintedList) {
  const std::vector<std::vector<std::vector<int>>> printed = {
      {{2, 2, 0, 0}, {2, 0, 2, 0}, {0, 2, 0, 2}, {0, 0, 2, 2}}, {{2, 2, 0, 0}, {2, 0, 1, 1}, {0, 1, 2, 1}, {0, 1, 1, 2}},
      {{2, 2, 0, 0}, {2, 0, 1, 1}, {0, 1, 0, 3}, {0, 1, 3, 0}}, {{2, 1, 1, 0}, {1, 2, 0, 1}, {1, 0, 2, 1}, {0, 1, 1, 2}},
      {{2, 1, 1, 0}, {1, 2, 0, 1}, {1, 0, 0, 3}, {0, 1, 3, 0}}, {{2, 1, 1, 0}, {1, 0, 2, 1}, {1, 2, 0, 1}, {0, 1, 1, 2}},
      {{2, 1, 1, 0}, {1, 0, 1, 2}, {1, 1, 0, 2}, {0, 2, 2, 0}}, {{0, 3, 1, 0}, {3, 0, 0, 1}, {1, 0, 0, 3}, {0, 1, 3, 0}},
      {{0, 2, 2, 0}, {2, 0, 0, 2}, {2, 0, 0, 2}, {0, 2, 2, 0}}, {{0, 2, 1, 1}, {2, 0, 1, 1}, {1, 1, 0, 2}, {1, 1, 2, 0}}};
  auto sk = enumerate_skeleta(4);
  ASSERT_EQ(sk.size(), printed.size());
  for (std::size_t i = 0; i < sk.size(); ++i) EXPECT_EQ(sk[i].adjacency().rows(), printed[i]) << "index " << i + 1;
}

TEST(Skeleta, ComplexityTwoAndThreeMatrices) {
  auto two = enumerate_skeleta(2);
  EXPECT_EQ(two[0].adjacency().rows(), (std::vector<std::vector<int>>{{2, 2}, {2, 2}}));
  EXPECT_EQ(two[1].adjacency().rows(), (std::vector<std::vector<int>>{{0, 4}, {4, 0}}));
  EXPECT_EQ(enumerate_skeleta(1)[0].adjacency().rows(), (std::vector<std::vector<int>>{{4}}));
}

TEST(Skeleton, EdgeLabelsFollowUpperTriangle) {
  auto s = Skeleton(AdjMatrix::from_rows({{2, 1, 1}, {1, 0, 3}, {1, 3, 0}}), 1);
  ASSERT_EQ(s.edge_count(), 6);
  EXPECT_TRUE(s.edge(0).is_loop());
  EXPECT_EQ(s.edge(1).head.vertex, 1);
  EXPECT_EQ(s.edge(2).head.vertex, 2);
  for (int e = 3; e < 6; ++e) {
    EXPECT_EQ(s.edge(e).tail.vertex, 1);
    EXPECT_EQ(s.edge(e).head.vertex, 2);
  }
  // Each germ belongs to exactly one edge end.
  std::set<int> germs;
  for (const auto& e : s.edges()) {
    germs.insert(e.tail.id());
    germs.insert(e.head.id());
    EXPECT_EQ(s.germ_owner(e.tail.id()).edge, e.label - 1);
    EXPECT_EQ(s.germ_owner(e.head.id()).end, EdgeEnd::Head);
  }
  EXPECT_EQ(germs.size(), 12u);
}

TEST(Skeleton, StatsForSmallCases) {
  auto one = enumerate_skeleta(1)[0];
  EXPECT_EQ(skeleton_stats(one).self_loops, 2);
  EXPECT_EQ(skeleton_stats(one).girth, 1);
  auto two = enumerate_skeleta(2);
  EXPECT_EQ(skeleton_stats(two[1]).self_loops, 0);
  EXPECT_EQ(skeleton_stats(two[1]).girth, 2);
  // K5 is the only simple graph at complexity 5; its girth is 3.
  auto five = enumerate_skeleta(5);
  EXPECT_EQ(skeleton_stats(five.back()).girth, 3);
}

TEST(Relabelings, GroupOrdersMatchBruteForce) {
  for (int t = 1; t <= 3; ++t)
    for (const auto& s : enumerate_skeleta(t))
      EXPECT_EQ(edge_relabelings(s).size(), oracle::edge_symmetry_count(s)) << "t=" << t << " index " << s.index();
  EXPECT_EQ(edge_relabelings(enumerate_skeleta(1)[0]).size(), 2u);
  EXPECT_EQ(edge_relabelings(enumerate_skeleta(2)[1]).size(), 48u);
}

TEST(Relabelings, ComplexityFourGroupOrders) {
  const std::vector<std::size_t> expected = {16, 4, 24, 8, 12, 8, 8, 144, 128, 32};
  auto sk = enumerate_skeleta(4);
  for (std::size_t i = 0; i < sk.size(); ++i) {
    EXPECT_EQ(edge_relabelings(sk[i]).size(), expected[i]);
    if (expected[i] <= 16) EXPECT_EQ(oracle::edge_symmetry_count(sk[i]), expected[i]);
  }
}

TEST(Relabelings, FormAGroup) {
  for (const auto& s : enumerate_skeleta(3)) {
    auto g = edge_relabelings(s);
    EXPECT_TRUE(g.front().is_identity());
    for (const auto& a : g) {
      EXPECT_TRUE(a.then(a.inverse()).is_identity());
      for (const auto& b : g) EXPECT_NE(std::find(g.begin(), g.end(), a.then(b)), g.end());
    }
  }
}
