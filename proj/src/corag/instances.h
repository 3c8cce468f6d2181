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

#ifndef CORAG_INSTANCES_H_
#define CORAG_INSTANCES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "corag/corpus.h"

namespace corag {

enum class Family { kMonotone, kRedundant, kOrdered };

std::string_view FamilyName(Family family);
// Throws Error(kInvalidArgument) for an unknown name.
Family ParseFamily(std::string_view name);
const std::vector<Family>& AllFamilies();

// The scorer whose value defines an instance's ground truth.
std::string_view EvaluationScorer(Family family);

// Words planted as relevant terms for one family. Vocabularies of different
// families are disjoint.
const std::vector<std::string>& FamilyVocabulary(Family family);

struct Instance {
  std::string id;
  Family family = Family::kMonotone;
  uint64_t budget = 0;
  Query query;
  std::vector<Chunk> chunks;
};

struct InstanceParams {
  int min_chunks = 8;
  int max_chunks = 12;
  int dimension = kDefaultDimension;
};

// Chunks are 28-32 tokens long and budgets are 32 tokens per admitted chunk,
// so a budget admitting k chunks admits any k of them and never k + 1.
inline constexpr int kMinChunkTokens = 28;
inline constexpr int kMaxChunkTokens = 32;

// `count` instances per requested family. Each instance depends only on
// (seed, family, index), so the output is independent of generation order.
std::vector<Instance> GenerateInstances(uint64_t seed, int count,
                                        const InstanceParams& params = {},
                                        const std::vector<Family>& families =
                                            AllFamilies());

Instance GenerateInstance(uint64_t seed, Family family, int index,
                          const InstanceParams& params = {});

// One JSON object per line: id, family, scorer, budget, query {id, text,
// relevant_terms} and chunks [{id, text}].
std::string InstancesToJsonl(const std::vector<Instance>& instances);
std::vector<Instance> InstancesFromJsonl(std::string_view text,
                                         int dimension = kDefaultDimension);

}  // namespace corag

#endif  // CORAG_INSTANCES_H_
