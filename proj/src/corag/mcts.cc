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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "corag/error.h"

namespace corag {
namespace {

Combination ToCombination(std::span<const Chunk> candidates,
                          std::span<const uint32_t> sequence) {
  Combination combo;
  for (uint32_t i : sequence) {
    combo.chunk_ids.push_back(candidates[i].id);
    combo.total_cost += candidates[i].token_count;
  }
  return combo;
}

}  // namespace

void ValidateConfig(const SearchConfig& config) {
  if (config.budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  }
  if (config.iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  }
  if (config.candidates < 1) {
    throw Error(ErrorCode::kInvalidArgument, "candidates must be >= 1");
  }
  if (!std::isfinite(config.exploration) || config.exploration < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "exploration coefficient must be finite and >= 0");
  }
  if (!std::isfinite(config.cost_coefficient) ||
      config.cost_coefficient < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cost coefficient must be finite and >= 0");
  }
}

double NodeUtility(double value_sum, uint64_t visits, uint64_t total_visits,
                   uint64_t cost, const SearchConfig& config) {
  const double n = static_cast<double>(visits);
  const double exploit = value_sum / n;
  const double explore =
      config.exploration *
      std::sqrt(std::log(static_cast<double>(total_visits)) / n);
  const double penalty = config.cost_coefficient * static_cast<double>(cost) /
                         static_cast<double>(config.budget);
  return exploit + explore - penalty;
}

double NodeUtility(const PolicyTreeNode& node, uint64_t total_visits,
                   const SearchConfig& config) {
  return NodeUtility(node.value_sum, node.visits, total_visits, node.cost,
                     config);
}

double ExploitationUtility(const PolicyTreeNode& node,
                           const SearchConfig& config) {
  return node.value_sum / static_cast<double>(node.visits) -
         config.cost_coefficient * static_cast<double>(node.cost) /
             static_cast<double>(config.budget);
}

uint64_t ExactCost(std::span<const Chunk> candidates,
                   std::span<const uint32_t> sequence) {
  uint64_t cost = 0;
  for (uint32_t i : sequence) cost += Tokenize(candidates[i].text).size();
  return cost;
}

bool IdSequenceLess(std::span<const Chunk> candidates,
                    std::span<const uint32_t> a,
                    std::span<const uint32_t> b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [&](uint32_t x, uint32_t y) {
        return candidates[x].id < candidates[y].id;
      });
}

PolicyTree::PolicyTree(const Query& query, std::span<const Chunk> candidates,
                       const SearchConfig& config,
                       const UtilityScorer& scorer)
    : query_(query), candidates_(candidates), config_(config) {
  ValidateConfig(config_);
  std::unordered_set<std::string_view> ids;
  for (const Chunk& c : candidates_) {
    if (!ids.insert(c.id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate candidate id \"" + c.id + "\"");
    }
  }
  bound_ = scorer.Bind(query_, candidates_);
  PolicyTreeNode root;
  root.visits = 1;
  nodes_.push_back(root);
}

IndexSequence PolicyTree::Sequence(uint32_t index) const {
  IndexSequence seq(nodes_[index].depth);
  for (uint32_t i = index; nodes_[i].parent != kNoNode; i = nodes_[i].parent) {
    seq[nodes_[i].depth - 1] = nodes_[i].chunk;
  }
  return seq;
}

Combination PolicyTree::CombinationOf(uint32_t index) const {
  return ToCombination(candidates_, Sequence(index));
}

bool PolicyTree::TieBreakBefore(uint32_t a, uint32_t b) const {
  if (nodes_[a].cost != nodes_[b].cost) {
    return nodes_[a].cost < nodes_[b].cost;
  }
  return IdSequenceLess(candidates_, Sequence(a), Sequence(b));
}

void PolicyTree::Expand(uint32_t index) {
  if (nodes_[index].expanded) return;
  const IndexSequence prefix = Sequence(index);
  std::vector<bool> used(candidates_.size(), false);
  for (uint32_t i : prefix) used[i] = true;
  const uint64_t base_cost = nodes_[index].cost;

  std::vector<IndexSequence> batch;
  std::vector<uint32_t> appended;
  for (uint32_t i = 0; i < candidates_.size(); ++i) {
    if (used[i] || base_cost + candidates_[i].token_count > config_.budget) {
      continue;
    }
    IndexSequence seq = prefix;
    seq.push_back(i);
    batch.push_back(std::move(seq));
    appended.push_back(i);
  }

  --unexpanded_;
  nodes_[index].expanded = true;
  if (batch.empty()) {
    nodes_[index].terminal = true;
    return;
  }
  const std::vector<double> values = bound_->ScoreBatch(batch);
  ++scorer_calls_;

  const auto first = static_cast<uint32_t>(nodes_.size());
  nodes_[index].first_child = first;
  nodes_[index].num_children = static_cast<uint32_t>(appended.size());
  const uint32_t depth = nodes_[index].depth + 1;
  for (size_t k = 0; k < appended.size(); ++k) {
    PolicyTreeNode child;
    child.parent = index;
    child.chunk = appended[k];
    child.depth = depth;
    child.cost = base_cost + candidates_[appended[k]].token_count;
    child.scored_value = values[k];
    child.value_sum = values[k];
    child.visits = 1;
    nodes_.push_back(child);
  }
  unexpanded_ += appended.size();
}

uint32_t PolicyTree::BestChild(uint32_t parent, bool exploit_only) const {
  const PolicyTreeNode& p = nodes_[parent];
  uint32_t best = kNoNode;
  double best_utility = 0.0;
  for (uint32_t c = p.first_child; c < p.first_child + p.num_children; ++c) {
    const double u = exploit_only
                         ? ExploitationUtility(nodes_[c], config_)
                         : NodeUtility(nodes_[c], total_visits_, config_);
    if (best == kNoNode || u > best_utility ||
        (u == best_utility && TieBreakBefore(c, best))) {
      best = c;
      best_utility = u;
    }
  }
  return best;
}

uint32_t PolicyTree::SelectNode() {
  uint32_t index = 0;
  while (true) {
    if (!nodes_[index].expanded) {
      Expand(index);
      if (nodes_[index].terminal) return index;
      return BestChild(index, /*exploit_only=*/false);
    }
    if (nodes_[index].terminal) return index;
    index = BestChild(index, /*exploit_only=*/false);
  }
}

void PolicyTree::UpdateUtility(uint32_t leaf) {
  const double value = nodes_[leaf].scored_value;
  for (uint32_t i = leaf; i != kNoNode; i = nodes_[i].parent) {
    nodes_[i].value_sum += value;
    nodes_[i].visits += 1;
  }
  ++total_visits_;
}

std::vector<uint32_t> PolicyTree::RankedNodes() const {
  std::vector<uint32_t> order(nodes_.size() - 1);
  std::iota(order.begin(), order.end(), 1u);
  std::vector<double> utility(nodes_.size(), 0.0);
  for (uint32_t i : order) utility[i] = ExploitationUtility(nodes_[i], config_);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (utility[a] != utility[b]) return utility[a] > utility[b];
    return TieBreakBefore(a, b);
  });
  return order;
}

uint32_t PolicyTree::ExtractBest() const {
  uint32_t best = 0;
  double best_utility = 0.0;
  for (uint32_t i = 1; i < nodes_.size(); ++i) {
    const double u = ExploitationUtility(nodes_[i], config_);
    if (best == 0 || u > best_utility ||
        (u == best_utility && TieBreakBefore(i, best))) {
      best = i;
      best_utility = u;
    }
  }
  return best;
}

SearchResult Search(const Query& query, std::span<const Chunk> candidates,
                    const SearchConfig& config, const UtilityScorer& scorer) {
  const auto start = std::chrono::steady_clock::now();
  PolicyTree tree(query, candidates, config, scorer);
  SearchResult result;
  while (result.iterations_run < config.iterations && !tree.FullyTerminal()) {
    tree.UpdateUtility(tree.SelectNode());
    ++result.iterations_run;
  }

  uint32_t chosen = tree.ExtractBest();
  if (chosen != 0 &&
      ExactCost(candidates, tree.Sequence(chosen)) > config.budget) {
    chosen = 0;
    for (uint32_t i : tree.RankedNodes()) {
      if (ExactCost(candidates, tree.Sequence(i)) <= config.budget) {
        chosen = i;
        break;
      }
    }
  }

  const PolicyTreeNode& node = tree.node(chosen);
  const IndexSequence seq = tree.Sequence(chosen);
  result.best = ToCombination(candidates, seq);
  if (chosen != 0) {
    result.utility = ExploitationUtility(node, config);
    result.scorer_value = node.scored_value;
  }
  result.cost_used = ExactCost(candidates, seq);
  result.nodes_materialized = tree.size() - 1;
  result.scorer_calls = tree.scorer_calls();
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace corag
