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


#include "corag/instances.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "corag/error.h"

namespace corag {
namespace {

TEST(InstancesTest, CountsAndShapes) {
  const std::vector<Instance> all = GenerateInstances(1, 20);
  ASSERT_EQ(all.size(), 60u);
  std::set<std::string> ids;
  for (const Instance& inst : all) {
    EXPECT_TRUE(ids.insert(inst.id).second) << inst.id;
    EXPECT_GE(inst.chunks.size(), 8u);
    EXPECT_LE(inst.chunks.size(), 12u);
    EXPECT_TRUE(inst.budget == 3 * kMaxChunkTokens ||
                inst.budget == 4 * kMaxChunkTokens)
        << inst.budget;
    const size_t terms = inst.family == Family::kRedundant ? 6 : 8;
    EXPECT_EQ(inst.query.relevant_terms.size(), terms);
    const auto& vocab = FamilyVocabulary(inst.family);
    for (const std::string& t : inst.query.relevant_terms) {
      EXPECT_NE(std::find(vocab.begin(), vocab.end(), t), vocab.end());
    }
    for (const Chunk& c : inst.chunks) {
      EXPECT_GE(c.token_count, static_cast<uint32_t>(kMinChunkTokens));
      EXPECT_LE(c.token_count, static_cast<uint32_t>(kMaxChunkTokens));
      EXPECT_EQ(c.token_count, Tokenize(c.text).size());
      EXPECT_EQ(c.embedding.size(), static_cast<size_t>(kDefaultDimension));
    }
    // Every relevant term is reachable from some chunk.
    for (const std::string& t : inst.query.relevant_terms) {
      bool found = false;
      for (const Chunk& c : inst.chunks) {
        const TokenSequence tokens = Tokenize(c.text);
        found = found || std::find(tokens.begin(), tokens.end(), t) !=
                             tokens.end();
      }
      EXPECT_TRUE(found) << inst.id << " " << t;
    }
  }
  EXPECT_TRUE(GenerateInstances(1, 0).empty());
  EXPECT_THROW(GenerateInstances(1, -1), Error);
}

TEST(InstancesTest, FamilySubsetsAndParams) {
  InstanceParams params;
  params.min_chunks = 9;
  params.max_chunks = 9;
  params.dimension = 32;
  const auto only = GenerateInstances(3, 4, params, {Family::kOrdered});
  ASSERT_EQ(only.size(), 4u);
  for (const Instance& inst : only) {
    EXPECT_EQ(inst.family, Family::kOrdered);
    EXPECT_EQ(inst.chunks.size(), 9u);
    EXPECT_EQ(inst.query.embedding.size(), 32u);
  }
  params.min_chunks = 7;
  EXPECT_THROW(GenerateInstance(1, Family::kMonotone, 0, params), Error);
}

TEST(InstancesTest, DeterministicPerSeedAndIndex) {
  const std::string a = InstancesToJsonl(GenerateInstances(7, 10));
  const std::string b = InstancesToJsonl(GenerateInstances(7, 10));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, InstancesToJsonl(GenerateInstances(8, 10)));
  // An instance does not depend on how many were requested.
  const Instance lone = GenerateInstance(7, Family::kRedundant, 4);
  const auto batch = GenerateInstances(7, 5, {}, {Family::kRedundant});
  EXPECT_EQ(InstancesToJsonl({lone}), InstancesToJsonl({batch[4]}));
}

TEST(InstancesTest, JsonlRoundTrip) {
  const std::vector<Instance> all = GenerateInstances(5, 6);
  const std::string text = InstancesToJsonl(all);
  const std::vector<Instance> back = InstancesFromJsonl(text);
  ASSERT_EQ(back.size(), all.size());
  for (size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(back[i].id, all[i].id);
    EXPECT_EQ(back[i].family, all[i].family);
    EXPECT_EQ(back[i].budget, all[i].budget);
    EXPECT_EQ(back[i].query.relevant_terms, all[i].query.relevant_terms);
    EXPECT_EQ(back[i].query.embedding, all[i].query.embedding);
    ASSERT_EQ(back[i].chunks.size(), all[i].chunks.size());
    for (size_t k = 0; k < all[i].chunks.size(); ++k) {
      EXPECT_EQ(back[i].chunks[k].id, all[i].chunks[k].id);
      EXPECT_EQ(back[i].chunks[k].embedding, all[i].chunks[k].embedding);
      EXPECT_EQ(back[i].chunks[k].token_count, all[i].chunks[k].token_count);
    }
  }
  EXPECT_EQ(InstancesToJsonl(back), text);
  EXPECT_THROW(InstancesFromJsonl("{\"id\": 3}\n"), Error);
  EXPECT_THROW(InstancesFromJsonl(
                   "{\"id\":\"x\",\"family\":\"weird\",\"budget\":1,"
                   "\"query\":{\"id\":\"q\",\"text\":\"\"},\"chunks\":[]}\n"),
               Error);
}

TEST(InstancesTest, FamilyNames) {
  for (Family f : AllFamilies()) EXPECT_EQ(ParseFamily(FamilyName(f)), f);
  EXPECT_EQ(EvaluationScorer(Family::kMonotone), "additive");
  EXPECT_EQ(EvaluationScorer(Family::kRedundant), "coverage");
  EXPECT_EQ(EvaluationScorer(Family::kOrdered), "order");
  EXPECT_THROW(ParseFamily("Monotone"), Error);
}

}  // namespace
}  // namespace corag
