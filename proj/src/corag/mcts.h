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

#ifndef CORAG_MCTS_H_
#define CORAG_MCTS_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "corag/corpus.h"
#include "corag/scorer.h"

namespace corag {

struct SearchConfig {
  uint64_t budget = 1024;          // token budget B
  double exploration = 2.4;        // c
  double cost_coefficient = 0.1;   // lambda
  int iterations = 10;
  int candidates = 10;
  uint64_t seed = 0;
  std::string scorer = "additive";
  ScorerParams scorer_params;
};

// Throws Error(kInvalidArgument) when budget or iterations are zero or a
// coefficient is negative or non-finite.
void ValidateConfig(const SearchConfig& config);

struct SearchResult {
  Combination best;
  double utility = 0.0;
  double scorer_value = 0.0;
  uint64_t cost_used = 0;
  uint64_t nodes_materialized = 0;
  uint64_t scorer_calls = 0;
  int iterations_run = 0;
  std::chrono::nanoseconds wall_time{0};
};

inline constexpr uint32_t kNoNode = 0xFFFFFFFFu;

struct PolicyTreeNode {
  uint32_t parent = kNoNode;
  uint32_t chunk = 0;  // candidate appended to the parent's sequence
  uint32_t depth = 0;
  uint64_t cost = 0;
  double value_sum = 0.0;  // w: sum of back-propagated values
  uint64_t visits = 0;     // n
  double scored_value = 0.0;  // V0: scorer output when materialized
  uint32_t first_child = 0;
  uint32_t num_children = 0;
  bool expanded = false;
  bool terminal = false;
};

// w/n + c*sqrt(ln N / n) - lambda*cost/B. Requires visits >= 1 and
// total_visits >= 1.
double NodeUtility(double value_sum, uint64_t visits, uint64_t total_visits,
                   uint64_t cost, const SearchConfig& config);
double NodeUtility(const PolicyTreeNode& node, uint64_t total_visits,
                   const SearchConfig& config);

// Mean value minus the cost penalty; the ranking used for extraction.
double ExploitationUtility(const PolicyTreeNode& node,
                           const SearchConfig& config);

// Policy tree over ordered combinations of `candidates`. Node 0 is the
// empty root. Children of a node are materialized together, scored in one
// batch and stored contiguously. The tree keeps references to `query`,
// `candidates` and `scorer`; they must outlive it.
class PolicyTree {
 public:
  PolicyTree(const Query& query, std::span<const Chunk> candidates,
             const SearchConfig& config, const UtilityScorer& scorer);

  // One descent from the root by maximal node utility (ties: lower cost,
  // then smaller id sequence). The first unexpanded node reached is
  // expanded and its best new child returned; a node without feasible
  // extensions is marked terminal and returned itself.
  uint32_t SelectNode();

  // Adds the leaf's scored value to w and one visit to n on the leaf and
  // every ancestor, and advances the global visit counter.
  void UpdateUtility(uint32_t leaf);

  // Best materialized non-root node by exploitation utility (ties: lower
  // cost, then smaller id sequence), or the root if it has no children.
  uint32_t ExtractBest() const;

  // Extraction order over all non-root nodes, best first.
  std::vector<uint32_t> RankedNodes() const;

  // Expands `index` if it is not yet expanded. Exposed for tests.
  void Expand(uint32_t index);

  bool FullyTerminal() const { return unexpanded_ == 0; }

  const PolicyTreeNode& node(uint32_t index) const { return nodes_[index]; }
  PolicyTreeNode& mutable_node(uint32_t index) { return nodes_[index]; }
  size_t size() const { return nodes_.size(); }
  uint64_t total_visits() const { return total_visits_; }
  uint64_t scorer_calls() const { return scorer_calls_; }

  IndexSequence Sequence(uint32_t index) const;
  Combination CombinationOf(uint32_t index) const;

  // True when node a ranks before node b at equal utility.
  bool TieBreakBefore(uint32_t a, uint32_t b) const;

 private:
  uint32_t BestChild(uint32_t parent, bool exploit_only) const;

  const Query& query_;
  std::span<const Chunk> candidates_;
  SearchConfig config_;
  std::unique_ptr<BoundScorer> bound_;
  std::vector<PolicyTreeNode> nodes_;
  uint64_t total_visits_ = 1;
  uint64_t scorer_calls_ = 0;
  size_t unexpanded_ = 1;
};

// Runs up to config.iterations rounds of SelectNode + UpdateUtility and
// extracts the best node. The chosen combination's cost is re-verified by
// tokenizing chunk text; a node failing the budget check is skipped in
// favour of the next in extraction order.
SearchResult Search(const Query& query, std::span<const Chunk> candidates,
                    const SearchConfig& config, const UtilityScorer& scorer);

uint64_t ExactCost(std::span<const Chunk> candidates,
                   std::span<const uint32_t> sequence);

// Lexicographic comparison of id sequences.
bool IdSequenceLess(std::span<const Chunk> candidates,
                    std::span<const uint32_t> a, std::span<const uint32_t> b);

}  // namespace corag

#endif  // CORAG_MCTS_H_
