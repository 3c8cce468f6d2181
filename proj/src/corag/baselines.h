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

#ifndef CORAG_BASELINES_H_
#define CORAG_BASELINES_H_

#include <span>

#include "corag/corpus.h"
#include "corag/mcts.h"
#include "corag/scorer.h"

namespace corag {

inline constexpr int kOracleMaxCandidates = 12;
inline constexpr int kOracleDefaultMaxLength = 6;

// Scores every candidate alone in one batch, then appends them best-first
// (ties: lower cost, then id), skipping any that would overrun the budget.
// utility and scorer_value are both the scorer value of the final sequence.
SearchResult GreedyTopK(const Query& query, std::span<const Chunk> candidates,
                        uint64_t budget, const UtilityScorer& scorer);

// Enumerates every ordered sequence of distinct candidates of length
// <= max_len and cost <= budget, the empty sequence included, and returns
// the highest-valued one (ties: lower cost, then smaller id sequence).
// nodes_materialized reports the number of sequences enumerated. Throws
// Error(kLimit) for more than kOracleMaxCandidates candidates.
SearchResult ExhaustiveOracle(const Query& query,
                              std::span<const Chunk> candidates,
                              uint64_t budget, const UtilityScorer& scorer,
                              int max_len = kOracleDefaultMaxLength);

}  // namespace corag

#endif  // CORAG_BASELINES_H_
