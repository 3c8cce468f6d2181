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

#include "corag/scorer.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "corag/error.h"

namespace corag {
namespace {

using TermMask = std::vector<uint64_t>;

// Per-candidate bitmask over the relevant-term set.
struct TermIndex {
  size_t num_terms = 0;
  size_t words = 0;
  std::vector<TermMask> masks;
  std::vector<int> popcounts;
};

TermIndex BuildTermIndex(const Query& query,
                         std::span<const Chunk> candidates) {
  const std::vector<std::string> terms = RelevantTermSet(query);
  std::unordered_map<std::string, size_t> position;
  for (size_t i = 0; i < terms.size(); ++i) position.emplace(terms[i], i);

  TermIndex index;
  index.num_terms = terms.size();
  index.words = (terms.size() + 63) / 64;
  for (const Chunk& c : candidates) {
    TermMask mask(index.words, 0);
    for (const std::string& tok : Tokenize(c.text)) {
      if (auto it = position.find(tok); it != position.end()) {
        mask[it->second / 64] |= uint64_t{1} << (it->second % 64);
      }
    }
    int bits = 0;
    for (uint64_t w : mask) bits += std::popcount(w);
    index.masks.push_back(std::move(mask));
    index.popcounts.push_back(bits);
  }
  return index;
}

class BoundAdditive : public BoundScorer {
 public:
  BoundAdditive(const Query& query, std::span<const Chunk> candidates) {
    for (const Chunk& c : candidates) {
      rel_.push_back(std::clamp(Dot(c.embedding, query.embedding), 0.0, 1.0));
    }
  }

  double Score(std::span<const uint32_t> sequence) const override {
    double miss = 1.0;
    for (uint32_t i : sequence) miss *= 1.0 - rel_[i];
    return std::clamp(1.0 - miss, 0.0, 1.0);
  }

 private:
  std::vector<double> rel_;
};

class BoundCoverage : public BoundScorer {
 public:
  BoundCoverage(const Query& query, std::span<const Chunk> candidates,
                double rho)
      : index_(BuildTermIndex(query, candidates)), rho_(rho) {}

  double Score(std::span<const uint32_t> sequence) const override {
    if (index_.num_terms == 0 || sequence.empty()) return 0.0;
    TermMask covered(index_.words, 0);
    int occurrences = 0;
    for (uint32_t i : sequence) {
      occurrences += index_.popcounts[i];
      for (size_t w = 0; w < index_.words; ++w) {
        covered[w] |= index_.masks[i][w];
      }
    }
    int distinct = 0;
    for (uint64_t w : covered) distinct += std::popcount(w);
    const double q = static_cast<double>(index_.num_terms);
    const double duplicates = occurrences - distinct;
    return std::clamp(distinct / q - rho_ * duplicates / q, 0.0, 1.0);
  }

 private:
  TermIndex index_;
  double rho_;
};

class BoundOrder : public BoundScorer {
 public:
  BoundOrder(const Query& query, std::span<const Chunk> candidates,
             double gamma)
      : index_(BuildTermIndex(query, candidates)), gamma_(gamma) {}

  double Score(std::span<const uint32_t> sequence) const override {
    if (index_.num_terms == 0 || sequence.empty()) return 0.0;
    TermMask covered(index_.words, 0);
    double sum = 0.0;
    double weight = 1.0;
    for (uint32_t i : sequence) {
      int fresh = 0;
      for (size_t w = 0; w < index_.words; ++w) {
        fresh += std::popcount(index_.masks[i][w] & ~covered[w]);
        covered[w] |= index_.masks[i][w];
      }
      sum += fresh * weight;
      weight *= gamma_;
    }
    return std::clamp(sum / static_cast<double>(index_.num_terms), 0.0, 1.0);
  }

 private:
  TermIndex index_;
  double gamma_;
};

class AdditiveScorer : public UtilityScorer {
 public:
  std::string name() const override { return "additive"; }
  std::unique_ptr<BoundScorer> Bind(
      const Query& query, std::span<const Chunk> candidates) const override {
    return std::make_unique<BoundAdditive>(query, candidates);
  }
};

class CoverageScorer : public UtilityScorer {
 public:
  explicit CoverageScorer(double rho) : rho_(rho) {}
  std::string name() const override { return "coverage"; }
  std::unique_ptr<BoundScorer> Bind(
      const Query& query, std::span<const Chunk> candidates) const override {
    return std::make_unique<BoundCoverage>(query, candidates, rho_);
  }

 private:
  double rho_;
};

class OrderScorer : public UtilityScorer {
 public:
  explicit OrderScorer(double gamma) : gamma_(gamma) {}
  std::string name() const override { return "order"; }
  std::unique_ptr<BoundScorer> Bind(
      const Query& query, std::span<const Chunk> candidates) const override {
    return std::make_unique<BoundOrder>(query, candidates, gamma_);
  }

 private:
  double gamma_;
};

}  // namespace

std::vector<double> BoundScorer::ScoreBatch(
    std::span<const IndexSequence> sequences) const {
  std::vector<double> out;
  out.reserve(sequences.size());
  for (const IndexSequence& s : sequences) out.push_back(Score(s));
  return out;
}

std::vector<double> UtilityScorer::ScoreBatch(
    const Query& query, std::span<const Combination> combinations,
    const ChunkLookup& chunks) const {
  std::vector<Chunk> candidates;
  std::unordered_map<std::string, uint32_t> slot;
  std::vector<IndexSequence> sequences;
  sequences.reserve(combinations.size());
  for (const Combination& combo : combinations) {
    IndexSequence seq;
    std::unordered_set<std::string> in_combo;
    for (const std::string& id : combo.chunk_ids) {
      if (!in_combo.insert(id).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "chunk id \"" + id + "\" repeated in a combination");
      }
      auto it = slot.find(id);
      if (it == slot.end()) {
        const Chunk* chunk = chunks ? chunks(id) : nullptr;
        if (chunk == nullptr) {
          throw Error(ErrorCode::kUnresolvedId,
                      "unresolvable chunk id \"" + id + "\"");
        }
        it = slot.emplace(id, static_cast<uint32_t>(candidates.size())).first;
        candidates.push_back(*chunk);
      }
      seq.push_back(it->second);
    }
    sequences.push_back(std::move(seq));
  }
  return Bind(query, candidates)->ScoreBatch(sequences);
}

std::unique_ptr<UtilityScorer> MakeAdditiveScorer() {
  return std::make_unique<AdditiveScorer>();
}

std::unique_ptr<UtilityScorer> MakeCoverageScorer(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rho must lie in [0, 1]");
  }
  return std::make_unique<CoverageScorer>(rho);
}

std::unique_ptr<UtilityScorer> MakeOrderScorer(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1]");
  }
  return std::make_unique<OrderScorer>(gamma);
}

std::unique_ptr<UtilityScorer> MakeScorer(const std::string& name,
                                          const ScorerParams& params) {
  if (name == "additive") return MakeAdditiveScorer();
  if (name == "coverage") return MakeCoverageScorer(params.rho);
  if (name == "order") return MakeOrderScorer(params.gamma);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scorer \"" + name +
                  "\" (expected additive, coverage or order)");
}

const std::vector<std::string>& BuiltinScorerNames() {
  static const std::vector<std::string> names = {"additive", "coverage",
                                                 "order"};
  return names;
}

std::vector<std::string> RelevantTermSet(const Query& query) {
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  auto add_tokens = [&](std::string_view text) {
    for (std::string& tok : Tokenize(text)) {
      if (seen.insert(tok).second) terms.push_back(std::move(tok));
    }
  };
  for (const std::string& t : query.relevant_terms) add_tokens(t);
  if (terms.empty()) add_tokens(query.text);
  return terms;
}

}  // namespace corag
