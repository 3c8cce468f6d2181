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

#ifndef CORAG_TESTS_TEST_SUPPORT_H_
#define CORAG_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "corag/corpus.h"
#include "corag/scorer.h"

namespace corag::testing {

// Basis vector e_i scaled to `a` plus e_{i+1} scaled to sqrt(1 - a^2), so the
// cosine against e_i is exactly `a` for a in [0, 1].
inline Embedding TiltedUnit(int dim, int axis, double a) {
  Embedding e(static_cast<size_t>(dim), 0.0f);
  e[static_cast<size_t>(axis)] = static_cast<float>(a);
  e[static_cast<size_t>(axis + 1)] = static_cast<float>(std::sqrt(1.0 - a * a));
  return e;
}

// A chunk whose text is `words` filler tokens followed by `terms`.
inline Chunk TermChunk(const std::string& id,
                       const std::vector<std::string>& terms, int words = 0,
                       int dim = 64) {
  std::string text;
  for (int i = 0; i < words; ++i) text += "w" + std::to_string(i) + " ";
  for (const std::string& t : terms) text += t + " ";
  return MakeChunk(id, text, dim);
}

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool Coin() { return Int(0, 1) == 1; }

  std::string Word(const std::vector<std::string>& pool) {
    return pool[static_cast<size_t>(Int(0, static_cast<int>(pool.size()) - 1))];
  }

  // Free text mixing words, punctuation runs and assorted whitespace.
  std::string Text(int max_tokens) {
    static const std::vector<std::string> words = {
        "alpha", "Beta", "gamma", "324m", "x", "TOWER", "caf\xc3\xa9",
        "\xe6\x97\xa5\xe6\x9c\xac", "q"};
    static const std::vector<std::string> punct = {".", ",", ":", "?!", "--",
                                                   "(", ")", "'"};
    static const std::vector<std::string> spaces = {" ", "  ", "\t", "\n",
                                                    "\xe3\x80\x80"};
    std::string out;
    const int n = Int(0, max_tokens);
    for (int i = 0; i < n; ++i) {
      switch (Int(0, 3)) {
        case 0:
          out += Word(punct);
          break;
        case 1:
          out += Word(spaces);
          break;
        default:
          out += Word(words);
          break;
      }
    }
    return out;
  }

  // Chunks over a small term alphabet with random filler, so term-based
  // scorers see overlaps and the additive scorer sees varied similarity.
  std::vector<Chunk> Candidates(int count, const std::vector<std::string>& terms,
                                int dim = 64) {
    std::vector<Chunk> out;
    for (int i = 0; i < count; ++i) {
      std::vector<std::string> picked;
      for (const std::string& t : terms) {
        if (Int(0, 2) == 0) picked.push_back(t);
      }
      out.push_back(TermChunk("c" + std::to_string(i), picked, Int(0, 12), dim));
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct BruteBest {
  IndexSequence sequence;
  double value = 0.0;
  uint64_t cost = 0;
  uint64_t enumerated = 0;
};

// Plain recursive enumeration of ordered sequences, kept independent of the
// library's oracle so the two can be checked against each other.
inline BruteBest BruteForce(
    const std::vector<Chunk>& candidates, uint64_t budget, size_t max_len,
    const std::function<double(const IndexSequence&)>& value) {
  BruteBest best;
  best.value = -1.0;
  IndexSequence seq;
  std::vector<bool> used(candidates.size(), false);
  std::function<void(uint64_t)> walk = [&](uint64_t cost) {
    ++best.enumerated;
    const double v = value(seq);
    auto ids = [&](const IndexSequence& s) {
      std::vector<std::string> out;
      for (uint32_t i : s) out.push_back(candidates[i].id);
      return out;
    };
    if (v > best.value ||
        (v == best.value &&
         (cost < best.cost ||
          (cost == best.cost && ids(seq) < ids(best.sequence))))) {
      best.sequence = seq;
      best.value = v;
      best.cost = cost;
    }
    if (seq.size() == max_len) return;
    for (uint32_t i = 0; i < candidates.size(); ++i) {
      if (used[i] || cost + candidates[i].token_count > budget) continue;
      used[i] = true;
      seq.push_back(i);
      walk(cost + candidates[i].token_count);
      seq.pop_back();
      used[i] = false;
    }
  };
  walk(0);
  return best;
}

}  // namespace corag::testing

#endif  // CORAG_TESTS_TEST_SUPPORT_H_
