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

#ifndef CORAG_SCORER_H_
#define CORAG_SCORER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "corag/corpus.h"

namespace corag {

// An ordered sequence of distinct chunks.
struct Combination {
  std::vector<std::string> chunk_ids;
  uint64_t total_cost = 0;

  bool operator==(const Combination&) const = default;
};

using ChunkLookup = std::function<const Chunk*(const std::string&)>;

// Candidate positions into the chunk list a BoundScorer was bound to.
using IndexSequence = std::vector<uint32_t>;

// A scorer specialised to one query and one fixed candidate list. Score is
// const and thread-safe.
class BoundScorer {
 public:
  virtual ~BoundScorer() = default;

  // Value in [0, 1] of the ordered sequence of candidate positions.
  virtual double Score(std::span<const uint32_t> sequence) const = 0;

  std::vector<double> ScoreBatch(
      std::span<const IndexSequence> sequences) const;
};

// Black-box batch utility for ordered chunk combinations. Implementations
// are stateless, deterministic and return values in [0, 1].
class UtilityScorer {
 public:
  virtual ~UtilityScorer() = default;

  virtual std::string name() const = 0;

  virtual std::unique_ptr<BoundScorer> Bind(
      const Query& query, std::span<const Chunk> candidates) const = 0;

  // Throws Error(kUnresolvedId) when a referenced id is unknown to `chunks`
  // and Error(kInvalidArgument) on a repeated id inside one combination.
  std::vector<double> ScoreBatch(const Query& query,
                                 std::span<const Combination> combinations,
                                 const ChunkLookup& chunks) const;
};

struct ScorerParams {
  double rho = 0.05;
  double gamma = 0.9;
};

// V = 1 - prod(1 - rel), rel = max(0, cosine(chunk, query)).
std::unique_ptr<UtilityScorer> MakeAdditiveScorer();

// Term coverage minus a redundancy penalty of rho per repeated term
// occurrence, both normalised by the number of relevant terms.
std::unique_ptr<UtilityScorer> MakeCoverageScorer(double rho = 0.05);

// Each relevant term contributes gamma^(p-1) where p is the 1-based position
// of the first chunk containing it.
std::unique_ptr<UtilityScorer> MakeOrderScorer(double gamma = 0.9);

// "additive", "coverage" or "order".
std::unique_ptr<UtilityScorer> MakeScorer(const std::string& name,
                                          const ScorerParams& params = {});

const std::vector<std::string>& BuiltinScorerNames();

// The deduplicated relevant-term set used by the term-based scorers: tokens
// of each relevant term in order of first appearance, or the query's own
// tokens when no relevant terms are given.
std::vector<std::string> RelevantTermSet(const Query& query);

}  // namespace corag

#endif  // CORAG_SCORER_H_
