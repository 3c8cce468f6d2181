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

#include "corag/baselines.h"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "corag/error.h"

namespace corag {
namespace {

constexpr size_t kOracleBatch = 4096;

Combination ToCombination(std::span<const Chunk> candidates,
                          std::span<const uint32_t> sequence) {
  Combination combo;
  for (uint32_t i : sequence) {
    combo.chunk_ids.push_back(candidates[i].id);
    combo.total_cost += candidates[i].token_count;
  }
  return combo;
}

uint64_t SequenceCost(std::span<const Chunk> candidates,
                      std::span<const uint32_t> sequence) {
  uint64_t cost = 0;
  for (uint32_t i : sequence) cost += candidates[i].token_count;
  return cost;
}

class OracleEnumerator {
 public:
  OracleEnumerator(std::span<const Chunk> candidates, uint64_t budget,
                   int max_len, const BoundScorer& scorer)
      : candidates_(candidates),
        budget_(budget),
        max_len_(max_len),
        scorer_(scorer),
        used_(candidates.size(), false) {}

  void Run() {
    Visit(0);
    Flush();
  }

  const IndexSequence& best() const { return best_; }
  double best_value() const { return best_value_; }
  uint64_t enumerated() const { return enumerated_; }
  uint64_t batches() const { return batches_; }

 private:
  void Visit(uint64_t cost) {
    pending_.push_back(current_);
    ++enumerated_;
    if (pending_.size() >= kOracleBatch) Flush();
    if (static_cast<int>(current_.size()) >= max_len_) return;
    for (uint32_t i = 0; i < candidates_.size(); ++i) {
      if (used_[i] || cost + candidates_[i].token_count > budget_) continue;
      used_[i] = true;
      current_.push_back(i);
      Visit(cost + candidates_[i].token_count);
      current_.pop_back();
      used_[i] = false;
    }
  }

  void Flush() {
    if (pending_.empty()) return;
    const std::vector<double> values = scorer_.ScoreBatch(pending_);
    ++batches_;
    for (size_t k = 0; k < pending_.size(); ++k) {
      if (!have_best_ || Better(values[k], pending_[k])) {
        have_best_ = true;
        best_value_ = values[k];
        best_ = pending_[k];
      }
    }
    pending_.clear();
  }

  bool Better(double value, const IndexSequence& seq) const {
    if (value != best_value_) return value > best_value_;
    const uint64_t a = SequenceCost(candidates_, seq);
    const uint64_t b = SequenceCost(candidates_, best_);
    if (a != b) return a < b;
    return IdSequenceLess(candidates_, seq, best_);
  }

  std::span<const Chunk> candidates_;
  uint64_t budget_;
  int max_len_;
  const BoundScorer& scorer_;
  std::vector<bool> used_;
  IndexSequence current_;
  std::vector<IndexSequence> pending_;
  bool have_best_ = false;
  IndexSequence best_;
  double best_value_ = 0.0;
  uint64_t enumerated_ = 0;
  uint64_t batches_ = 0;
};

}  // namespace

SearchResult GreedyTopK(const Query& query, std::span<const Chunk> candidates,
                        uint64_t budget, const UtilityScorer& scorer) {
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  const auto bound = scorer.Bind(query, candidates);

  std::vector<IndexSequence> singles;
  for (uint32_t i = 0; i < candidates.size(); ++i) singles.push_back({i});
  std::vector<double> alone;
  if (!singles.empty()) {
    alone = bound->ScoreBatch(singles);
    ++result.scorer_calls;
  }

  std::vector<uint32_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (alone[a] != alone[b]) return alone[a] > alone[b];
    if (candidates[a].token_count != candidates[b].token_count) {
      return candidates[a].token_count < candidates[b].token_count;
    }
    return candidates[a].id < candidates[b].id;
  });

  IndexSequence chosen;
  uint64_t cost = 0;
  for (uint32_t i : order) {
    if (cost + candidates[i].token_count > budget) continue;
    chosen.push_back(i);
    cost += candidates[i].token_count;
  }

  if (!chosen.empty()) {
    result.scorer_value = bound->Score(chosen);
    ++result.scorer_calls;
  }
  result.utility = result.scorer_value;
  result.best = ToCombination(candidates, chosen);
  result.cost_used = ExactCost(candidates, chosen);
  result.nodes_materialized = candidates.size();
  result.iterations_run = 1;
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

SearchResult ExhaustiveOracle(const Query& query,
                              std::span<const Chunk> candidates,
                              uint64_t budget, const UtilityScorer& scorer,
                              int max_len) {
  if (candidates.size() > static_cast<size_t>(kOracleMaxCandidates)) {
    throw Error(ErrorCode::kLimit,
                "exhaustive oracle refuses " +
                    std::to_string(candidates.size()) +
                    " candidates (limit " +
                    std::to_string(kOracleMaxCandidates) + ")");
  }
  if (max_len < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_len must be >= 0");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto bound = scorer.Bind(query, candidates);
  OracleEnumerator enumerator(candidates, budget, max_len, *bound);
  enumerator.Run();

  SearchResult result;
  result.best = ToCombination(candidates, enumerator.best());
  result.scorer_value = enumerator.best_value();
  result.utility = result.scorer_value;
  result.cost_used = ExactCost(candidates, enumerator.best());
  result.nodes_materialized = enumerator.enumerated();
  result.scorer_calls = enumerator.batches();
  result.iterations_run = 1;
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace corag
