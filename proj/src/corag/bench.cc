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

#include "corag/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

#include "corag/baselines.h"
#include "corag/error.h"
#include "corag/scorer.h"
#include "json.hpp"

namespace corag {
namespace {

double Micros(std::chrono::nanoseconds d) {
  return static_cast<double>(d.count()) / 1000.0;
}

IndexSequence ToIndices(const Instance& inst, const Combination& combo) {
  std::unordered_map<std::string, uint32_t> pos;
  for (uint32_t i = 0; i < inst.chunks.size(); ++i) {
    pos.emplace(inst.chunks[i].id, i);
  }
  IndexSequence seq;
  for (const std::string& id : combo.chunk_ids) seq.push_back(pos.at(id));
  return seq;
}

bool Extendable(const Instance& inst, const IndexSequence& seq,
                uint64_t cost, uint64_t budget) {
  std::vector<bool> used(inst.chunks.size(), false);
  for (uint32_t i : seq) used[i] = true;
  for (uint32_t i = 0; i < inst.chunks.size(); ++i) {
    if (!used[i] && cost + inst.chunks[i].token_count <= budget) return true;
  }
  return false;
}

std::vector<BenchRow> RunInstance(const Instance& inst,
                                  const BenchOptions& options) {
  const std::string eval_name(EvaluationScorer(inst.family));
  const auto eval_scorer = MakeScorer(eval_name, options.search.scorer_params);
  const auto eval = eval_scorer->Bind(inst.query, inst.chunks);
  const uint64_t budget =
      options.budget_override != 0 ? options.budget_override : inst.budget;

  const SearchResult oracle = ExhaustiveOracle(
      inst.query, inst.chunks, budget, *eval_scorer, options.oracle_max_len);

  std::vector<BenchRow> rows;
  for (const std::string& strategy : options.strategies) {
    SearchConfig config = options.search;
    config.budget = budget;
    config.scorer = options.scorer.value_or(eval_name);
    SearchResult result;
    if (strategy == "oracle") {
      result = oracle;
      config.scorer = eval_name;
    } else if (strategy == "greedy") {
      result = GreedyTopK(inst.query, inst.chunks, budget,
                          *MakeScorer(config.scorer, config.scorer_params));
    } else {
      if (strategy == "agent") {
        if (options.agent == nullptr) {
          throw Error(ErrorCode::kInvalidArgument,
                      "strategy \"agent\" needs agent weights");
        }
        config = PredictConfig(*options.agent, inst.query, config);
      }
      result = Search(inst.query, inst.chunks, config,
                      *MakeScorer(config.scorer, config.scorer_params));
    }

    BenchRow row;
    row.instance = inst.id;
    row.family = std::string(FamilyName(inst.family));
    row.strategy = strategy;
    row.search_scorer = config.scorer;
    row.eval_scorer = eval_name;
    row.chunk_ids = result.best.chunk_ids;
    const IndexSequence seq = ToIndices(inst, result.best);
    row.scorer_value = eval->Score(seq);
    row.oracle_value = oracle.scorer_value;
    row.oracle_ratio = row.oracle_value > 0.0
                           ? row.scorer_value / row.oracle_value
                           : 1.0;
    row.cost_used = result.cost_used;
    row.budget = budget;
    row.extendable = Extendable(inst, seq, result.cost_used, budget);
    row.nodes_materialized = result.nodes_materialized;
    row.scorer_calls = result.scorer_calls;
    row.iterations = strategy == "mcts" || strategy == "agent"
                         ? result.iterations_run
                         : 0;
    row.lambda = config.cost_coefficient;
    row.wall_time_us = Micros(result.wall_time);
    rows.push_back(std::move(row));
  }
  return rows;
}

double Percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t rank = static_cast<size_t>(
      std::ceil(p * static_cast<double>(v.size())));
  return v[std::clamp<size_t>(rank, 1, v.size()) - 1];
}

}  // namespace

const std::vector<std::string>& KnownStrategies() {
  static const std::vector<std::string> names = {"mcts", "greedy", "oracle",
                                                 "agent"};
  return names;
}

std::vector<std::string> ParseStrategies(const std::string& csv,
                                         bool with_agent) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t end = csv.find(',', pos);
    if (end == std::string::npos) end = csv.size();
    const std::string name = csv.substr(pos, end - pos);
    pos = end + 1;
    if (name.empty()) continue;
    if (name == "all") {
      for (const char* s : {"mcts", "greedy", "oracle"}) out.push_back(s);
      if (with_agent) out.push_back("agent");
      continue;
    }
    if (std::find(KnownStrategies().begin(), KnownStrategies().end(),
                  name) == KnownStrategies().end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown strategy \"" + name +
                      "\" (expected mcts, greedy, oracle, agent or all)");
    }
    out.push_back(name);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no strategies requested");
  }
  return out;
}

int ResolveThreads(int requested) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);
  if (const char* cap = std::getenv("CORAG_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) threads = std::min(threads, limit);
  }
  return threads;
}

std::vector<BenchRow> RunBench(const std::vector<Instance>& instances,
                               const BenchOptions& options) {
  ValidateConfig(options.search);
  if (options.scorer) MakeScorer(*options.scorer, options.search.scorer_params);
  for (const std::string& s : options.strategies) {
    if (s == "agent" && options.agent == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "strategy \"agent\" needs agent weights");
    }
  }

  std::vector<std::vector<BenchRow>> per_instance(instances.size());
  std::vector<std::exception_ptr> errors(instances.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < instances.size(); i = next++) {
      try {
        per_instance[i] = RunInstance(instances[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(ResolveThreads(options.threads),
                                    std::max<size_t>(instances.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<BenchRow> rows;
  for (auto& batch : per_instance) {
    for (auto& row : batch) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BenchAggregate> Aggregate(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRow*>>
      groups;
  auto add = [&](const std::string& family, const BenchRow& row) {
    const auto key = std::make_pair(family, row.strategy);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    it->second.push_back(&row);
  };
  for (const BenchRow& row : rows) add(row.family, row);
  for (const BenchRow& row : rows) add("all", row);

  std::vector<BenchAggregate> out;
  for (const auto& key : keys) {
    const auto& group = groups[key];
    BenchAggregate a;
    a.family = key.first;
    a.strategy = key.second;
    a.rows = group.size();
    std::vector<double> latency;
    for (const BenchRow* r : group) {
      a.mean_oracle_ratio += r->oracle_ratio;
      a.mean_scorer_value += r->scorer_value;
      a.mean_cost += static_cast<double>(r->cost_used);
      latency.push_back(r->wall_time_us);
    }
    const double n = static_cast<double>(group.size());
    a.mean_oracle_ratio /= n;
    a.mean_scorer_value /= n;
    a.mean_cost /= n;
    a.p50_us = Percentile(latency, 0.50);
    a.p95_us = Percentile(latency, 0.95);
    out.push_back(a);
  }
  return out;
}

std::string RowsToJsonl(const std::vector<BenchRow>& rows, bool timing) {
  std::string out;
  for (const BenchRow& r : rows) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["family"] = r.family;
    j["strategy"] = r.strategy;
    j["search_scorer"] = r.search_scorer;
    j["eval_scorer"] = r.eval_scorer;
    j["scorer_value"] = r.scorer_value;
    j["oracle_value"] = r.oracle_value;
    j["oracle_ratio"] = r.oracle_ratio;
    j["cost_used"] = r.cost_used;
    j["budget"] = r.budget;
    j["extendable"] = r.extendable;
    j["chunk_ids"] = r.chunk_ids;
    j["nodes_materialized"] = r.nodes_materialized;
    j["scorer_calls"] = r.scorer_calls;
    j["iterations"] = r.iterations;
    j["lambda"] = r.lambda;
    if (timing) j["wall_time_us"] = r.wall_time_us;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string FormatAggregates(const std::vector<BenchAggregate>& aggregates) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-8s %6s %12s %12s %10s %10s %10s\n",
                "family", "strategy", "rows", "oracle_ratio", "scorer_value",
                "mean_cost", "p50_us", "p95_us");
  out += line;
  for (const BenchAggregate& a : aggregates) {
    std::snprintf(line, sizeof(line),
                  "%-10s %-8s %6zu %12.4f %12.4f %10.1f %10.1f %10.1f\n",
                  a.family.c_str(), a.strategy.c_str(), a.rows,
                  a.mean_oracle_ratio, a.mean_scorer_value, a.mean_cost,
                  a.p50_us, a.p95_us);
    out += line;
  }
  return out;
}

}  // namespace corag
