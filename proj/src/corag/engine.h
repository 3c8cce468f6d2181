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

#ifndef CORAG_ENGINE_H_
#define CORAG_ENGINE_H_

#include <optional>
#include <string>
#include <vector>

#include "corag/agent.h"
#include "corag/mcts.h"
#include "corag/vector_store.h"

namespace corag {

struct QueryOutcome {
  std::string query_id;
  SearchConfig config;  // after agent overrides
  std::optional<AgentPrediction> prediction;
  std::vector<Chunk> candidates;
  SearchResult result;
};

// Retrieves config.candidates chunks from the store, lets the agent (if
// any) override scorer, iterations and lambda, then runs the search.
QueryOutcome RunQuery(const VectorStore& store, const Query& query,
                      const SearchConfig& base, const AgentWeights* agent);

// Single-line JSON object. wall_time_ms is included only when `timing`.
std::string OutcomeToJson(const QueryOutcome& outcome, bool timing);

std::string PredictionToJson(const Query& query,
                             const AgentPrediction& prediction);

}  // namespace corag

#endif  // CORAG_ENGINE_H_
