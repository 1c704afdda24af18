#include <gtest/gtest.h>

#include <random>

#include "ctforge/tournament.hpp"

using namespace ctforge;

TEST(Witness, Examples) {
  auto w = find_witness({{1, 1}, {2, 1}});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Witness{Witness::Case::kSingle, 2, 0}));

  w = find_witness({{1, 1}, {2, 2}});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Witness{Witness::Case::kPair, 1, 2}));

  EXPECT_EQ(lemma_witness({{2}, {1}}), (Witness{Witness::Case::kSingle, 1, 0}));
  EXPECT_THROW(lemma_witness({{1, 1}, {1, 3}}), PreconditionError);
  EXPECT_THROW(find_witness({{1}, {1, 2}}), PreconditionError);
}

TEST(Witness, HoldsRejectsBadIndices) {
  TournamentInstance t{{1, 1}, {1, 1}};
  EXPECT_TRUE(witness_holds(t, {Witness::Case::kSingle, 1, 0}));
  EXPECT_FALSE(witness_holds(t, {Witness::Case::kSingle, 3, 0}));
  EXPECT_FALSE(witness_holds(t, {Witness::Case::kPair, 2, 1}));
  EXPECT_FALSE(witness_holds({{0, 1}, {1, 1}}, {Witness::Case::kSingle, 1, 0}));
}

TEST(Tournament, RelaxedInstance) {
  TournamentReport rep = build_tournament({{1, 1}, {1, 3}});
  ASSERT_EQ(rep.arcs.size(), 1u);
  EXPECT_EQ(rep.arcs[0].from, 1);
  EXPECT_EQ(rep.arcs[0].to, 2);
  EXPECT_EQ(rep.arcs[0].label, 2);
  ASSERT_TRUE(rep.order);
  EXPECT_EQ(*rep.order, (std::vector<int>{1, 2}));
  EXPECT_TRUE(rep.order_sum_holds);
  EXPECT_TRUE(rep.exceeds_total);
  EXPECT_FALSE(rep.cycle);
  EXPECT_THROW(build_tournament({{1, 1}, {2, 2}}), PreconditionError);
}

TEST(Tournament, CycleIsFlagged) {
  TournamentInstance t{{1, 1, 1}, {1, 2, 3}};
  TournamentReport rep = analyze_tournament({{1, 2, 1}, {2, 3, 1}, {3, 1, 1}}, t);
  ASSERT_TRUE(rep.cycle);
  EXPECT_EQ(rep.cycle->size(), 3u);
  EXPECT_FALSE(rep.order);
}

TEST(Tournament, NoWitnessForcesAnOverlongChain) {
  // Without any witness the arcs are transitive and the last k exceeds the total.
  std::mt19937_64 rng(808);
  int seen = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    const int s = std::uniform_int_distribution<int>(1, 5)(rng);
    TournamentInstance t;
    for (int i = 0; i < s; ++i) {
      t.A.push_back(std::uniform_int_distribution<long>(0, 3)(rng));
      t.k.push_back(std::uniform_int_distribution<long>(1, 16)(rng));
    }
    if (find_witness(t)) continue;
    ++seen;
    TournamentReport rep = build_tournament(t);
    ASSERT_FALSE(rep.cycle);
    ASSERT_TRUE(rep.labels_bounded);
    ASSERT_TRUE(rep.order_sum_holds);
    ASSERT_TRUE(rep.exceeds_total);
    ASSERT_FALSE(t.satisfies_hypothesis());
  }
  EXPECT_GT(seen, 100);
}

TEST(LemmaCheck, SmallGrids) {
  LemmaCheckReport one = exhaustive_lemma_check(1, 1);
  EXPECT_EQ(one.instances, 1u);
  EXPECT_EQ(one.counterexamples, 0u);
  LemmaCheckReport two = exhaustive_lemma_check(2, 2);
  EXPECT_EQ(two.counterexamples, 0u);
  EXPECT_EQ(two.instances, two.single_witnesses + two.pair_witnesses);
  EXPECT_GT(two.pair_witnesses, 0u);
}
