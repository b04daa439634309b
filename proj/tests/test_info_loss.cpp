#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "ontolab/info_loss.hpp"
#include "ontolab/io/graph_io.hpp"
#include "oracles/oracles.hpp"

using namespace ontolab;
using info_loss::FunctionalGraph;

namespace {

// 0-based form of the four-state example: 1->2, 2->3, 3->1, 4->2.
FunctionalGraph four_state() { return FunctionalGraph({1, 2, 0, 1}); }

oracle::Map as_map(const FunctionalGraph& g) { return {g.successors().begin(), g.successors().end()}; }

}  // namespace

TEST(InfoLoss, FourStateEvolutionMatrix) {
  const ComplexMatrix m = info_loss::evolution_matrix(four_state());
  const int expected[4][4] = {{0, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), Complex(expected[i][j])) << i << "," << j;
  EXPECT_FALSE(is_unitary(m, 1e-12));
}

TEST(InfoLoss, FourStateClassesAndQuotient) {
  const auto q = info_loss::equivalence_classes(four_state());
  ASSERT_EQ(q.num_classes, 3u);
  EXPECT_EQ(q.class_of[0], q.class_of[3]);
  EXPECT_NE(q.class_of[0], q.class_of[1]);
  EXPECT_NE(q.class_of[1], q.class_of[2]);
  EXPECT_NE(q.class_of[0], q.class_of[2]);
  EXPECT_TRUE(info_loss::is_permutation(q));
  // {1,4} -> {2} -> {3} -> {1,4}
  EXPECT_EQ(q.class_successor[q.class_of[0]], q.class_of[1]);
  EXPECT_EQ(q.class_successor[q.class_of[1]], q.class_of[2]);
  EXPECT_EQ(q.class_successor[q.class_of[2]], q.class_of[0]);
  EXPECT_LT(unitarity_defect(info_loss::quotient_evolution(q)), 1e-15);
}

TEST(InfoLoss, BijectionKeepsEveryStateDistinct) {
  const FunctionalGraph g({3, 0, 4, 1, 2});
  EXPECT_TRUE(g.is_bijection());
  const auto q = info_loss::equivalence_classes(g);
  EXPECT_EQ(q.num_classes, 5u);
  EXPECT_LT(unitarity_defect(info_loss::evolution_matrix(g)), 1e-15);
}

TEST(InfoLoss, TenStateSquarePlusOneExample) {
  std::vector<info_loss::State> succ(10);
  for (info_loss::State i = 0; i < 10; ++i) succ[i] = (i * i + 1) % 10;
  const FunctionalGraph g(succ);
  const auto q = info_loss::equivalence_classes(g);
  EXPECT_EQ(q.num_classes, oracle::pairwise_merge_classes(as_map(g)));
  EXPECT_EQ(q.num_classes, oracle::image_iteration_classes(as_map(g)));
  EXPECT_TRUE(info_loss::is_permutation(q));
}

TEST(InfoLoss, RandomGraphsAgreeWithOracles) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const FunctionalGraph g = info_loss::random_graph(n, rng);
    const auto q = info_loss::equivalence_classes(g);
    const oracle::Map f = as_map(g);
    ASSERT_TRUE(info_loss::is_permutation(q));
    ASSERT_EQ(q.num_classes, oracle::image_iteration_classes(f));
    if (n <= 64) ASSERT_EQ(q.num_classes, oracle::pairwise_merge_classes(f));
    // same class iff same far image
    const oracle::Map far = oracle::far_image(f);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < std::min(n, a + 20); ++b) {
        ASSERT_EQ(q.class_of[a] == q.class_of[b], far[a] == far[b]);
      }
    }
    // class ids ascend with their smallest member
    for (std::size_t k = 1; k < q.num_classes; ++k) ASSERT_LT(q.representative[k - 1], q.representative[k]);
  }
}

TEST(InfoLoss, CensusMatchesDoublingOracle) {
  std::mt19937_64 rng(99);
  const FunctionalGraph g = info_loss::random_graph(5000, rng);
  const auto c = info_loss::limit_cycle_census(g);
  const oracle::Map f = as_map(g);
  std::vector<std::uint32_t> all(g.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto d = oracle::depth_oracle(f, all);
  std::vector<std::size_t> hist;
  std::set<std::uint32_t> cycle_mins;
  for (const auto& x : d) {
    if (hist.size() <= x.depth) hist.resize(x.depth + 1, 0);
    ++hist[x.depth];
    cycle_mins.insert(x.cycle_min);
  }
  EXPECT_EQ(c.transient_histogram, hist);
  ASSERT_EQ(c.cycles.size(), cycle_mins.size());
  std::size_t k = 0;
  for (auto m : cycle_mins) EXPECT_EQ(c.cycles[k++].start, m);
  EXPECT_EQ(c.classes, oracle::image_iteration_classes(f));
}

TEST(InfoLoss, ShiftWithMergeHasBoundaryClasses) {
  for (unsigned v = 2; v <= 12; v += 2) {
    for (unsigned b = 1; b <= v; b += 3) {
      const auto g = info_loss::shift_with_merge(v, b);
      EXPECT_EQ(g.size(), std::size_t{1} << v);
      EXPECT_EQ(info_loss::equivalence_classes(g).num_classes, std::size_t{1} << b) << v << " " << b;
    }
  }
}

TEST(InfoLoss, RandomGraphIsDeterministicInSeed) {
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(info_loss::random_graph(1000, a).successors(), info_loss::random_graph(1000, b).successors());
}

TEST(InfoLoss, RejectsOutOfRangeSuccessor) {
  try {
    FunctionalGraph({0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(GraphIo, TextRoundTripWithDirective) {
  std::stringstream s;
  io::write_graph_text(s, four_state(), 1);
  const auto g = io::parse_graph_text(s);
  EXPECT_EQ(g.successors(), four_state().successors());
}

TEST(GraphIo, ExplicitBaseOverridesDirective) {
  std::stringstream s("# index_base: 1\n3\n0\n1\n2\n");
  const auto g = io::parse_graph_text(s, 0u);
  EXPECT_EQ(g.successors(), (std::vector<info_loss::State>{0, 1, 2}));
}

TEST(GraphIo, BinaryRoundTrip) {
  std::mt19937_64 rng(1);
  const auto g = info_loss::random_graph(777, rng);
  std::stringstream s;
  io::write_graph_binary(s, g);
  EXPECT_EQ(io::parse_graph_binary(s).successors(), g.successors());
}

TEST(GraphIo, MalformedTextIsRejected) {
  for (const char* text : {"", "3\n0\n1\n", "2\n0\nx\n", "2\n0\n5\n"}) {
    std::stringstream s(text);
    EXPECT_THROW(io::parse_graph_text(s), Error) << text;
  }
}
