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

#include "corag/engine.h"

#include "corag/scorer.h"
#include "json.hpp"

namespace corag {

QueryOutcome RunQuery(const VectorStore& store, const Query& query,
                      const SearchConfig& base, const AgentWeights* agent) {
  ValidateConfig(base);
  QueryOutcome out;
  out.query_id = query.id;
  out.config = base;
  if (agent != nullptr) {
    out.prediction = Predict(*agent, query.embedding);
    out.config.scorer = out.prediction->label;
    out.config.iterations = out.prediction->iterations;
    out.config.cost_coefficient = out.prediction->lambda;
  }
  const auto scorer = MakeScorer(out.config.scorer, out.config.scorer_params);
  out.candidates = store.TopN(query, out.config.candidates);
  out.result = Search(query, out.candidates, out.config, *scorer);
  return out;
}

std::string OutcomeToJson(const QueryOutcome& o, bool timing) {
  nlohmann::ordered_json j;
  j["query_id"] = o.query_id;
  j["scorer"] = o.config.scorer;
  j["budget"] = o.config.budget;
  j["c"] = o.config.exploration;
  j["lambda"] = o.config.cost_coefficient;
  j["iterations"] = o.config.iterations;
  j["candidates"] = o.candidates.size();
  j["seed"] = o.config.seed;
  if (o.prediction) j["agent_label"] = o.prediction->label;
  j["chunk_ids"] = o.result.best.chunk_ids;
  nlohmann::ordered_json texts = nlohmann::ordered_json::array();
  for (const std::string& id : o.result.best.chunk_ids) {
    for (const Chunk& c : o.candidates) {
      if (c.id == id) texts.push_back(c.text);
    }
  }
  j["texts"] = std::move(texts);
  j["utility"] = o.result.utility;
  j["scorer_value"] = o.result.scorer_value;
  j["cost_used"] = o.result.cost_used;
  j["nodes_materialized"] = o.result.nodes_materialized;
  j["scorer_calls"] = o.result.scorer_calls;
  j["iterations_run"] = o.result.iterations_run;
  if (timing) {
    j["wall_time_ms"] =
        static_cast<double>(o.result.wall_time.count()) / 1e6;
  }
  return j.dump();
}

std::string PredictionToJson(const Query& query, const AgentPrediction& p) {
  nlohmann::ordered_json j;
  j["query_id"] = query.id;
  j["label"] = p.label;
  j["label_scores"] = p.label_scores;
  j["iterations"] = p.iterations;
  j["lambda"] = p.lambda;
  return j.dump();
}

}  // namespace corag
