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

#ifndef CORAG_BENCH_H_
#define CORAG_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corag/agent.h"
#include "corag/instances.h"
#include "corag/mcts.h"

namespace corag {

// "mcts", "greedy", "oracle", and "agent" (mcts configured per query by a
// configuration agent).
const std::vector<std::string>& KnownStrategies();

// Expands "all" and validates names. "all" includes "agent" only when
// `with_agent` is set.
std::vector<std::string> ParseStrategies(const std::string& csv,
                                         bool with_agent);

struct BenchOptions {
  std::vector<std::string> strategies = {"mcts", "greedy", "oracle"};
  // c, lambda, iterations and scorer parameters for the mcts strategies.
  SearchConfig search;
  // Search scorer; unset means each instance's evaluation scorer.
  std::optional<std::string> scorer;
  // Nonzero replaces every instance's own budget.
  uint64_t budget_override = 0;
  int oracle_max_len = 6;
  // 0 means hardware concurrency. CORAG_THREADS caps it either way.
  int threads = 0;
  const AgentWeights* agent = nullptr;
};

struct BenchRow {
  std::string instance;
  std::string family;
  std::string strategy;
  std::string search_scorer;
  std::string eval_scorer;
  std::vector<std::string> chunk_ids;
  double scorer_value = 0.0;
  double oracle_value = 0.0;
  double oracle_ratio = 0.0;
  uint64_t cost_used = 0;
  uint64_t budget = 0;
  // Some unused candidate would still fit in the remaining budget.
  bool extendable = false;
  uint64_t nodes_materialized = 0;
  uint64_t scorer_calls = 0;
  int iterations = 0;
  double lambda = 0.0;
  double wall_time_us = 0.0;
};

struct BenchAggregate {
  std::string family;
  std::string strategy;
  size_t rows = 0;
  double mean_oracle_ratio = 0.0;
  double mean_scorer_value = 0.0;
  double mean_cost = 0.0;
  double p50_us = 0.0;
  double p95_us = 0.0;
};

// Number of worker threads after applying the CORAG_THREADS cap.
int ResolveThreads(int requested);

// Rows are ordered by instance, then by strategy order in `options`,
// regardless of thread count.
std::vector<BenchRow> RunBench(const std::vector<Instance>& instances,
                               const BenchOptions& options);

// Per (family, strategy) in first-appearance order, plus a family "all".
std::vector<BenchAggregate> Aggregate(const std::vector<BenchRow>& rows);

std::string RowsToJsonl(const std::vector<BenchRow>& rows, bool timing);
std::string FormatAggregates(const std::vector<BenchAggregate>& aggregates);

}  // namespace corag

#endif  // CORAG_BENCH_H_
