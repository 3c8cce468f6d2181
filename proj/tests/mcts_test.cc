// Copyright 2026 The CORAG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corag/mcts.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "corag/error.h"
#include "corag/scorer.h"
#include "test_support.h"

namespace corag {
namespace {

using ::corag::testing::BruteForce;
using ::corag::testing::Gen;
using ::corag::testing::TermChunk;
using ::corag::testing::TiltedUnit;

constexpr int kDim = 8;

// A chunk of `tokens` tokens whose additive relevance is exactly `rel`.
Chunk Sized(const std::string& id, int tokens, double rel = 0.5) {
  Chunk c;
  c.id = id;
  for (int i = 0; i < tokens; ++i) c.text += "w ";
  c.token_count = static_cast<uint32_t>(tokens);
  c.embedding = TiltedUnit(kDim, 0, rel);
  return c;
}

Query AxisQuery() {
  Query q;
  q.id = "q";
  q.embedding = TiltedUnit(kDim, 0, 1.0);
  return q;
}

SearchConfig Config(uint64_t budget, int iterations, double c = 2.4,
                    double lambda = 0.1) {
  SearchConfig config;
  config.budget = budget;
  config.iterations = iterations;
  config.exploration = c;
  config.cost_coefficient = lambda;
  return config;
}

std::vector<uint32_t> Children(const PolicyTree& tree, uint32_t index) {
  std::vector<uint32_t> out;
  const PolicyTreeNode& n = tree.node(index);
  for (uint32_t c = n.first_child; c < n.first_child + n.num_children; ++c) {
    out.push_back(c);
  }
  return out;
}

TEST(NodeUtilityTest, HandComputedExamples) {
  SearchConfig config;
  config.budget = 1024;
  config.exploration = 0.0;
  config.cost_coefficient = 0.0;
  EXPECT_NEAR(NodeUtility(0.5, 1, 1, 0, config), 0.5, 1e-12);

  config.exploration = 2.4;
  config.cost_coefficient = 0.1;
  const long double expected =
      0.5L + 2.4L * std::sqrt(std::log(3.0L)) - 0.1L * 100.0L / 1024.0L;
  EXPECT_NEAR(NodeUtility(0.5, 1, 3, 100, config),
              static_cast<double>(expected), 1e-12);
  EXPECT_NEAR(NodeUtility(0.5, 1, 3, 100, config), 3.0057873525236922, 1e-12);
}

TEST(NodeUtilityTest, CostTermIsLinear) {
  SearchConfig with = Config(1024, 1, 2.4, 0.1);
  SearchConfig without = Config(1024, 1, 2.4, 0.0);
  Gen gen(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const double w = gen.Real(0.0, 20.0);
    const uint64_t n = static_cast<uint64_t>(gen.Int(1, 30));
    const uint64_t total = n + static_cast<uint64_t>(gen.Int(0, 100));
    const uint64_t cost = static_cast<uint64_t>(gen.Int(0, 1024));
    EXPECT_NEAR(NodeUtility(w, n, total, cost, with) -
                    NodeUtility(w, n, total, cost, without),
                -0.1 * static_cast<double>(cost) / 1024.0, 1e-12);
  }
}

TEST(ExploitationUtilityTest, DropsExplorationTerm) {
  PolicyTreeNode node;
  node.value_sum = 1.5;
  node.visits = 3;
  node.cost = 256;
  const SearchConfig config = Config(1024, 1, 2.4, 0.2);
  EXPECT_NEAR(ExploitationUtility(node, config), 0.5 - 0.2 * 0.25, 1e-15);
}

TEST(ConfigTest, Validation) {
  EXPECT_THROW(ValidateConfig(Config(0, 1)), Error);
  EXPECT_THROW(ValidateConfig(Config(10, 0)), Error);
  EXPECT_THROW(ValidateConfig(Config(10, 1, -1.0)), Error);
  EXPECT_THROW(ValidateConfig(Config(10, 1, 1.0, NAN)), Error);
  SearchConfig c = Config(10, 1);
  c.candidates = 0;
  EXPECT_THROW(ValidateConfig(c), Error);
  EXPECT_NO_THROW(ValidateConfig(Config(10, 1, 0.0, 0.0)));
}

TEST(SearchTest, NothingFits) {
  const std::vector<Chunk> cands = {Sized("a", 20), Sized("b", 30)};
  const SearchResult r =
      Search(AxisQuery(), cands, Config(10, 10), *MakeAdditiveScorer());
  EXPECT_TRUE(r.best.chunk_ids.empty());
  EXPECT_EQ(r.cost_used, 0u);
  EXPECT_EQ(r.utility, 0.0);
  EXPECT_EQ(r.nodes_materialized, 0u);
}

TEST(SearchTest, SingleFeasibleCandidate) {
  const std::vector<Chunk> cands = {Sized("a", 20), Sized("b", 5),
                                    Sized("c", 30)};
  for (const std::string& name : BuiltinScorerNames()) {
    const SearchResult r =
        Search(AxisQuery(), cands, Config(10, 10), *MakeScorer(name));
    EXPECT_EQ(r.best.chunk_ids, std::vector<std::string>{"b"}) << name;
    EXPECT_EQ(r.cost_used, 5u);
  }
}

TEST(SearchTest, DuplicateCandidateIdsRejected) {
  const std::vector<Chunk> cands = {Sized("a", 2), Sized("a", 3)};
  EXPECT_THROW(
      Search(AxisQuery(), cands, Config(10, 10), *MakeAdditiveScorer()),
      Error);
}

TEST(PolicyTreeTest, ParallelExpansion) {
  const Query q = AxisQuery();
  const auto scorer = MakeAdditiveScorer();
  const std::vector<Chunk> four = {Sized("a", 3), Sized("b", 3), Sized("c", 3),
                                   Sized("d", 3)};
  PolicyTree tree(q, four, Config(100, 1), *scorer);
  tree.SelectNode();
  EXPECT_EQ(tree.node(0).num_children, 4u);
  EXPECT_EQ(tree.scorer_calls(), 1u);

  std::vector<Chunk> ten;
  for (int i = 0; i < 10; ++i) {
    ten.push_back(Sized("c" + std::to_string(i), i < 3 ? 50 : 5));
  }
  PolicyTree tree10(q, ten, Config(20, 1), *scorer);
  tree10.SelectNode();
  EXPECT_EQ(tree10.node(0).num_children, 7u);
  for (uint32_t c : Children(tree10, 0)) {
    EXPECT_EQ(tree10.node(c).visits, 1u);
    EXPECT_EQ(tree10.node(c).value_sum, tree10.node(c).scored_value);
    EXPECT_LE(tree10.node(c).cost, 20u);
  }
}

TEST(PolicyTreeTest, TieBreakPrefersLowerCost) {
  const std::vector<Chunk> cands = {Sized("a", 7), Sized("b", 5)};
  PolicyTree tree(AxisQuery(), cands, Config(100, 10, 2.4, 0.0),
                  *MakeAdditiveScorer());
  const uint32_t chosen = tree.SelectNode();
  EXPECT_EQ(tree.node(chosen).cost, 5u);
  EXPECT_EQ(tree.CombinationOf(chosen).chunk_ids,
            std::vector<std::string>{"b"});
}

TEST(PolicyTreeTest, TieBreakByIdSequence) {
  const std::vector<Chunk> cands = {Sized("b", 5), Sized("a", 5)};
  PolicyTree tree(AxisQuery(), cands, Config(100, 10, 2.4, 0.0),
                  *MakeAdditiveScorer());
  const uint32_t chosen = tree.SelectNode();
  EXPECT_EQ(tree.CombinationOf(chosen).chunk_ids,
            std::vector<std::string>{"a"});
}

TEST(PolicyTreeTest, UpdatePropagatesAlongPath) {
  const std::vector<Chunk> cands = {Sized("a", 2, 0.4), Sized("b", 2, 0.4)};
  PolicyTree tree(AxisQuery(), cands, Config(100, 10), *MakeAdditiveScorer());
  tree.Expand(0);
  const uint32_t a = Children(tree, 0)[0];
  tree.Expand(a);
  const uint32_t b = Children(tree, a)[0];
  tree.mutable_node(b).scored_value = 0.4;
  const double root_w = tree.node(0).value_sum;
  const double a_w = tree.node(a).value_sum;
  const uint64_t a_n = tree.node(a).visits;
  tree.UpdateUtility(b);
  EXPECT_DOUBLE_EQ(tree.node(0).value_sum, root_w + 0.4);
  EXPECT_DOUBLE_EQ(tree.node(a).value_sum, a_w + 0.4);
  EXPECT_EQ(tree.node(a).visits, a_n + 1);
  EXPECT_EQ(tree.node(b).visits, 2u);
  EXPECT_EQ(tree.total_visits(), 2u);
}

TEST(PolicyTreeTest, DepthOneLeafCounting) {
  const std::vector<Chunk> cands = {Sized("a", 2, 0.6)};
  PolicyTree tree(AxisQuery(), cands, Config(100, 10), *MakeAdditiveScorer());
  const uint32_t leaf = tree.SelectNode();
  EXPECT_EQ(tree.node(leaf).visits, 1u);
  tree.UpdateUtility(leaf);
  EXPECT_NEAR(tree.node(0).value_sum, 0.6, 1e-7);
  EXPECT_EQ(tree.node(0).visits, 2u);
  EXPECT_EQ(tree.node(leaf).visits, 2u);
}

TEST(PolicyTreeTest, TerminalNodeIsReturnedItself) {
  const std::vector<Chunk> cands = {Sized("a", 6)};
  PolicyTree tree(AxisQuery(), cands, Config(10, 10), *MakeAdditiveScorer());
  const uint32_t first = tree.SelectNode();
  tree.UpdateUtility(first);
  const uint32_t second = tree.SelectNode();
  EXPECT_EQ(second, first);
  EXPECT_TRUE(tree.node(second).terminal);
  EXPECT_TRUE(tree.FullyTerminal());
}

TEST(SearchTest, OrderScorerPutsHubFirst) {
  const Query q = MakeQuery("q", "t1 t2", {"t1", "t2"}, kDim);
  const std::vector<Chunk> cands = {TermChunk("b", {}, 3, kDim),
                                    TermChunk("a", {"t1", "t2"}, 1, kDim)};
  const SearchResult r =
      Search(q, cands, Config(100, 50, 2.4, 0.0), *MakeOrderScorer(0.9));
  ASSERT_FALSE(r.best.chunk_ids.empty());
  EXPECT_EQ(r.best.chunk_ids[0], "a");
  EXPECT_EQ(r.scorer_value, 1.0);
}

TEST(ExtractionTest, ShallowHighValueBeatsDeepLowValue) {
  // The second chunk only repeats covered terms, so every two-chunk node is
  // worth less than the single hub.
  const Query q = MakeQuery("q", "t1 t2 t3 t4", {"t1", "t2", "t3", "t4"}, kDim);
  const std::vector<Chunk> cands = {TermChunk("hub", {"t1", "t2", "t3"}, 1, kDim),
                                    TermChunk("dup", {"t1", "t2"}, 1, kDim)};
  const SearchResult r =
      Search(q, cands, Config(100, 20, 2.4, 0.0), *MakeCoverageScorer(0.5));
  EXPECT_EQ(r.best.chunk_ids, std::vector<std::string>{"hub"});
  EXPECT_EQ(r.scorer_value, 0.75);
}

TEST(ExtractionTest, ZeroLambdaRanksByMeanValue) {
  Gen gen(42);
  const std::vector<std::string> terms = {"t0", "t1", "t2", "t3"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Chunk> cands = gen.Candidates(5, terms, kDim);
    const Query q = MakeQuery("q", "t0 t1 t2 t3", terms, kDim);
    PolicyTree tree(q, cands, Config(1000, 30, 2.4, 0.0), *MakeCoverageScorer());
    for (int i = 0; i < 30 && !tree.FullyTerminal(); ++i) {
      tree.UpdateUtility(tree.SelectNode());
    }
    const uint32_t best = tree.ExtractBest();
    const double best_mean =
        tree.node(best).value_sum / static_cast<double>(tree.node(best).visits);
    for (uint32_t i = 1; i < tree.size(); ++i) {
      const double mean =
          tree.node(i).value_sum / static_cast<double>(tree.node(i).visits);
      ASSERT_LE(mean, best_mean);
    }
  }
}

TEST(ExtractionTest, ScalingLambdaAndBudgetKeepsArgmax) {
  Gen gen(43);
  const std::vector<std::string> terms = {"t0", "t1", "t2"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Chunk> cands = gen.Candidates(5, terms, kDim);
    const Query q = MakeQuery("q", "t0 t1 t2", terms, kDim);
    PolicyTree tree(q, cands, Config(40, 25, 2.4, 0.2), *MakeCoverageScorer());
    for (int i = 0; i < 25 && !tree.FullyTerminal(); ++i) {
      tree.UpdateUtility(tree.SelectNode());
    }
    // Only extraction depends on (lambda, B), and only through lambda / B.
    SearchConfig scaled = Config(80, 25, 2.4, 0.4);
    uint32_t best = 1;
    double best_u = -1e300;
    for (uint32_t i = 1; i < tree.size(); ++i) {
      const double u = ExploitationUtility(tree.node(i), scaled);
      if (u > best_u || (u == best_u && tree.TieBreakBefore(i, best))) {
        best = i;
        best_u = u;
      }
    }
    if (tree.size() > 1) EXPECT_EQ(tree.ExtractBest(), best);
  }
}

TEST(SearchTest, ExplorationAblationBehaviour) {
  // c = 0: the second descent goes back through the max-mean child.
  const std::vector<Chunk> cands = {Sized("a", 2, 0.9), Sized("b", 2, 0.3),
                                    Sized("c", 2, 0.2)};
  PolicyTree greedy(AxisQuery(), cands, Config(100, 5, 0.0, 0.0),
                    *MakeAdditiveScorer());
  const uint32_t first = greedy.SelectNode();
  greedy.UpdateUtility(first);
  const uint32_t second = greedy.SelectNode();
  EXPECT_EQ(greedy.node(second).parent, first);

  // Very large c: successive root selections visit distinct children.
  PolicyTree explore(AxisQuery(), cands, Config(100, 5, 1e6, 0.0),
                     *MakeAdditiveScorer());
  std::set<uint32_t> depth_one;
  for (int i = 0; i < 3; ++i) {
    uint32_t n = explore.SelectNode();
    explore.UpdateUtility(n);
    while (explore.node(n).depth > 1) n = explore.node(n).parent;
    depth_one.insert(n);
  }
  EXPECT_EQ(depth_one.size(), 3u);
}

TEST(SearchTest, ReverificationSkipsMiscountedChunks) {
  // "b" claims 1 token but its text has 6, so the exact check rejects it.
  Chunk lying = Sized("b", 1, 0.99);
  lying.text = "one two three four five six";
  const std::vector<Chunk> cands = {Sized("a", 3, 0.5), lying};
  const SearchResult r =
      Search(AxisQuery(), cands, Config(4, 20, 2.4, 0.0), *MakeAdditiveScorer());
  EXPECT_EQ(r.best.chunk_ids, std::vector<std::string>{"a"});
  EXPECT_EQ(r.cost_used, 3u);
}

TEST(SearchPropertyTest, InvariantsOnRandomInstances) {
  Gen gen(44);
  const std::vector<std::string> terms = {"t0", "t1", "t2", "t3", "t4"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<Chunk> cands = gen.Candidates(gen.Int(1, 8), terms, kDim);
    const Query q = MakeQuery("q", "t0 t1 t2 t3 t4", terms, kDim);
    const SearchConfig config =
        Config(static_cast<uint64_t>(gen.Int(1, 40)), gen.Int(1, 40),
               gen.Real(0.0, 4.0), gen.Real(0.0, 0.5));
    const auto scorer = MakeScorer(BuiltinScorerNames()[trial % 3]);

    PolicyTree tree(q, cands, config, *scorer);
    int iterations = 0;
    while (iterations < config.iterations && !tree.FullyTerminal()) {
      tree.UpdateUtility(tree.SelectNode());
      ++iterations;
    }
    ASSERT_EQ(tree.node(0).visits, 1u + static_cast<uint64_t>(iterations));
    ASSERT_EQ(tree.total_visits(), 1u + static_cast<uint64_t>(iterations));
    ASSERT_LE(tree.scorer_calls(), static_cast<uint64_t>(iterations));
    for (uint32_t i = 0; i < tree.size(); ++i) {
      const PolicyTreeNode& n = tree.node(i);
      ASSERT_LE(n.cost, config.budget);
      uint64_t through_children = 0;
      for (uint32_t c : Children(tree, i)) {
        through_children += tree.node(c).visits - 1;
      }
      ASSERT_GE(n.visits, 1 + through_children);
    }

    const SearchResult r = Search(q, cands, config, *scorer);
    ASSERT_LE(r.cost_used, config.budget);
    ASSERT_EQ(r.iterations_run, iterations);
    ASSERT_EQ(r.nodes_materialized, tree.size() - 1);
    const SearchResult again = Search(q, cands, config, *scorer);
    ASSERT_EQ(r.best, again.best);
    ASSERT_EQ(r.utility, again.utility);
    ASSERT_EQ(r.scorer_value, again.scorer_value);
  }
}

TEST(SearchPropertyTest, ConvergesToOracleOnSmallInstances) {
  Gen gen(45);
  const std::vector<std::string> terms = {"t0", "t1", "t2", "t3"};
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<Chunk> cands = gen.Candidates(gen.Int(1, 4), terms, kDim);
    const Query q = MakeQuery("q", "t0 t1 t2 t3", terms, kDim);
    const auto scorer = MakeScorer(BuiltinScorerNames()[trial % 3]);
    const auto bound = scorer->Bind(q, cands);
    const uint64_t budget = static_cast<uint64_t>(gen.Int(5, 40));
    const auto oracle = BruteForce(
        cands, budget, cands.size(),
        [&](const IndexSequence& s) { return bound->Score(s); });
    const int feasible = static_cast<int>(oracle.enumerated) - 1;
    if (feasible == 0) continue;
    const SearchResult r =
        Search(q, cands, Config(budget, 10 * feasible, 2.4, 0.0), *scorer);
    EXPECT_DOUBLE_EQ(r.scorer_value, oracle.value) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

}  // namespace
}  // namespace corag
