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

#include "corag/instances.h"

#include <algorithm>
#include <cstdio>

#include "corag/error.h"
#include "json.hpp"

namespace corag {
namespace {

constexpr int kVocabularySize = 64;
constexpr int kMonotoneRepeat = 6;

// splitmix64; fully specified so instances are identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  uint64_t Below(uint64_t n) { return Next() % n; }

  int Between(int lo, int hi) {
    return lo + static_cast<int>(Below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Below(i)]);
    }
  }

 private:
  uint64_t state_;
};

const std::vector<std::string>& FillerWords() {
  static const std::vector<std::string> words = {
      "the",     "of",      "and",     "a",       "in",      "is",
      "was",     "for",     "on",      "with",    "as",      "by",
      "at",      "from",    "this",    "that",    "which",   "were",
      "also",    "its",     "into",    "between", "during",  "after",
      "report",  "section", "figure",  "general", "several", "often",
      "record",  "period",  "region",  "system",  "early",   "later",
      "common",  "value",   "result",  "process", "number",  "area",
      "part",    "point",   "source",  "account", "history", "form"};
  return words;
}

std::vector<std::string> MakeVocabulary(const char* prefix) {
  std::vector<std::string> v;
  for (int i = 0; i < kVocabularySize; ++i) {
    v.push_back(prefix + std::to_string(i));
  }
  return v;
}

std::vector<std::string> SampleTerms(Rng& rng, Family family, int count) {
  std::vector<std::string> pool = FamilyVocabulary(family);
  rng.Shuffle(pool);
  pool.resize(static_cast<size_t>(count));
  return pool;
}

// Planted terms plus filler up to a random length in the chunk range.
std::vector<std::string> ChunkTokens(Rng& rng,
                                     const std::vector<std::string>& terms) {
  const int length = rng.Between(kMinChunkTokens, kMaxChunkTokens);
  std::vector<std::string> tokens = terms;
  const auto& filler = FillerWords();
  while (static_cast<int>(tokens.size()) < length) {
    tokens.push_back(filler[rng.Below(filler.size())]);
  }
  rng.Shuffle(tokens);
  return tokens;
}

// A copy of `base` with a couple of filler words swapped and the length
// nudged by at most one token. Base terms missing from `terms` become filler.
std::vector<std::string> NearDuplicate(
    Rng& rng, const std::vector<std::string>& base,
    const std::vector<std::string>& base_terms,
    const std::vector<std::string>& terms) {
  std::vector<std::string> tokens = base;
  const auto& filler = FillerWords();
  auto is_term = [&](const std::string& t) {
    return std::find(terms.begin(), terms.end(), t) != terms.end();
  };
  for (std::string& t : tokens) {
    if (!is_term(t) && std::find(base_terms.begin(), base_terms.end(), t) !=
                           base_terms.end()) {
      t = filler[rng.Below(filler.size())];
    }
  }
  for (int edits = 0; edits < 2; ++edits) {
    const size_t pos = rng.Below(tokens.size());
    if (!is_term(tokens[pos])) tokens[pos] = filler[rng.Below(filler.size())];
  }
  const int delta = rng.Between(-1, 1);
  if (delta > 0 && static_cast<int>(tokens.size()) < kMaxChunkTokens) {
    tokens.push_back(filler[rng.Below(filler.size())]);
  } else if (delta < 0 && static_cast<int>(tokens.size()) > kMinChunkTokens &&
             !is_term(tokens.back())) {
    tokens.pop_back();
  }
  return tokens;
}

std::string Join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// Term sets of a chunk layout before text generation.
using Layout = std::vector<std::vector<std::string>>;

void AddNoise(Rng& rng, Layout& layout, int total,
              const std::vector<std::string>& repeatable) {
  while (static_cast<int>(layout.size()) < total) {
    std::vector<std::string> terms;
    if (!repeatable.empty() && rng.Below(2) == 0) {
      terms.push_back(repeatable[rng.Below(repeatable.size())]);
    }
    layout.push_back(std::move(terms));
  }
}

// Relevant terms dealt round-robin over as many chunks as the budget admits.
// Each term lands in exactly one chunk, repeated so single chunks carry real
// relevance.
Layout MonotoneLayout(Rng& rng, const std::vector<std::string>& q, int n,
                      int admitted) {
  Layout layout(static_cast<size_t>(n));
  const auto relevant = static_cast<size_t>(std::min(n, admitted));
  std::vector<std::string> shuffled = q;
  rng.Shuffle(shuffled);
  for (size_t i = 0; i < shuffled.size(); ++i) {
    for (int r = 0; r < kMonotoneRepeat; ++r) {
      layout[i % relevant].push_back(shuffled[i]);
    }
  }
  return layout;
}

// A cluster of near-duplicates over a shared core plus rare complementary
// chunks. Only the first cluster member carries the whole core; the others
// each lose one core term. Three shapes: one complement finishing the set,
// two complements splitting it, or a decoy pair that overlaps both halves of
// the core.
Layout RedundantLayout(Rng& rng, const std::vector<std::string>& q, int n,
                       std::vector<int>* duplicate_of) {
  Layout layout;
  std::vector<std::string> core;
  const int shape = static_cast<int>(rng.Below(3));
  core.assign(q.begin(), q.begin() + (shape == 1 ? 3 : 4));
  const int cluster = rng.Between(3, 4);
  layout.push_back(core);
  for (int i = 1; i < cluster; ++i) {
    std::vector<std::string> partial = core;
    partial.erase(partial.begin() + (i - 1) % static_cast<int>(core.size()));
    layout.push_back(std::move(partial));
  }
  switch (shape) {
    case 0:
      layout.push_back({q[4], q[5]});
      break;
    case 1:
      layout.push_back({q[3], q[4]});
      layout.push_back({q[5]});
      break;
    default:
      layout.push_back({q[0], q[1], q[4]});
      layout.push_back({q[2], q[3], q[5]});
      break;
  }
  duplicate_of->assign(static_cast<size_t>(cluster), 0);
  AddNoise(rng, layout, n, core);
  return layout;
}

// A hub chunk with three terms, two wide chunks that split the remaining
// five and overlap the hub, and a narrow straggler. Position discounts make
// the order of the wide chunks matter.
Layout OrderedLayout(Rng& rng, const std::vector<std::string>& q, int n) {
  Layout layout;
  std::vector<std::string> shuffled = q;
  rng.Shuffle(shuffled);
  const std::vector<std::string> hub(shuffled.begin(), shuffled.begin() + 3);
  layout.push_back(hub);
  std::vector<std::string> wide_a(shuffled.begin() + 3, shuffled.begin() + 6);
  std::vector<std::string> wide_b(shuffled.begin() + 6, shuffled.end());
  wide_a.push_back(hub[rng.Below(hub.size())]);
  wide_b.push_back(hub[rng.Below(hub.size())]);
  layout.push_back(std::move(wide_a));
  layout.push_back(std::move(wide_b));
  layout.push_back({shuffled[3 + rng.Below(5)], hub[rng.Below(hub.size())]});
  AddNoise(rng, layout, n, q);
  return layout;
}

uint64_t InstanceSeed(uint64_t seed, Family family, int index) {
  Rng mix(seed ^ (static_cast<uint64_t>(family) + 1) * 0xD1B54A32D192ED03ULL);
  mix.Next();
  return mix.Next() ^ static_cast<uint64_t>(index) * 0x9E3779B97F4A7C15ULL;
}

}  // namespace

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kMonotone:
      return "monotone";
    case Family::kRedundant:
      return "redundant";
    case Family::kOrdered:
      return "ordered";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : AllFamilies()) {
    if (FamilyName(f) == name) return f;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown family \"" + std::string(name) +
                  "\" (expected monotone, redundant or ordered)");
}

const std::vector<Family>& AllFamilies() {
  static const std::vector<Family> all = {
      Family::kMonotone, Family::kRedundant, Family::kOrdered};
  return all;
}

std::string_view EvaluationScorer(Family family) {
  switch (family) {
    case Family::kMonotone:
      return "additive";
    case Family::kRedundant:
      return "coverage";
    case Family::kOrdered:
      return "order";
  }
  return "additive";
}

const std::vector<std::string>& FamilyVocabulary(Family family) {
  static const std::vector<std::string> monotone = MakeVocabulary("mono");
  static const std::vector<std::string> redundant = MakeVocabulary("redun");
  static const std::vector<std::string> ordered = MakeVocabulary("ordo");
  switch (family) {
    case Family::kMonotone:
      return monotone;
    case Family::kRedundant:
      return redundant;
    case Family::kOrdered:
      return ordered;
  }
  return monotone;
}

Instance GenerateInstance(uint64_t seed, Family family, int index,
                          const InstanceParams& params) {
  if (params.min_chunks < 8 || params.max_chunks < params.min_chunks) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance chunk counts need 8 <= min_chunks <= max_chunks");
  }
  Rng rng(InstanceSeed(seed, family, index));
  char id[64];
  std::snprintf(id, sizeof(id), "%s-%04d",
                std::string(FamilyName(family)).c_str(), index);

  const int n = rng.Between(params.min_chunks, params.max_chunks);
  std::vector<std::string> q;
  Layout layout;
  std::vector<int> duplicates;
  int admitted = 0;
  switch (family) {
    case Family::kMonotone:
      q = SampleTerms(rng, family, 8);
      admitted = rng.Between(3, 4);
      layout = MonotoneLayout(rng, q, n, admitted);
      break;
    case Family::kRedundant:
      q = SampleTerms(rng, family, 6);
      layout = RedundantLayout(rng, q, n, &duplicates);
      admitted = rng.Between(3, 4);
      break;
    case Family::kOrdered:
      q = SampleTerms(rng, family, 8);
      layout = OrderedLayout(rng, q, n);
      admitted = rng.Between(3, 4);
      break;
  }

  std::vector<std::vector<std::string>> texts;
  for (size_t i = 0; i < layout.size(); ++i) {
    if (i > 0 && i < duplicates.size()) {
      texts.push_back(NearDuplicate(rng, texts[0], layout[0], layout[i]));
    } else {
      texts.push_back(ChunkTokens(rng, layout[i]));
    }
  }
  rng.Shuffle(texts);

  Instance inst;
  inst.id = id;
  inst.family = family;
  inst.budget = static_cast<uint64_t>(admitted) * kMaxChunkTokens;
  inst.query = MakeQuery(inst.id, Join(q), q, params.dimension);
  for (size_t i = 0; i < texts.size(); ++i) {
    char cid[80];
    std::snprintf(cid, sizeof(cid), "%s-c%02zu", id, i);
    inst.chunks.push_back(MakeChunk(cid, Join(texts[i]), params.dimension));
  }
  return inst;
}

std::vector<Instance> GenerateInstances(uint64_t seed, int count,
                                        const InstanceParams& params,
                                        const std::vector<Family>& families) {
  if (count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "instance count must be >= 0");
  }
  std::vector<Instance> out;
  for (Family f : families) {
    for (int i = 0; i < count; ++i) {
      out.push_back(GenerateInstance(seed, f, i, params));
    }
  }
  return out;
}

std::string InstancesToJsonl(const std::vector<Instance>& instances) {
  std::string out;
  for (const Instance& inst : instances) {
    nlohmann::ordered_json j;
    j["id"] = inst.id;
    j["family"] = FamilyName(inst.family);
    j["scorer"] = EvaluationScorer(inst.family);
    j["budget"] = inst.budget;
    j["query"] = {{"id", inst.query.id},
                  {"text", inst.query.text},
                  {"relevant_terms", inst.query.relevant_terms}};
    nlohmann::ordered_json chunks = nlohmann::ordered_json::array();
    for (const Chunk& c : inst.chunks) {
      chunks.push_back({{"id", c.id}, {"text", c.text}});
    }
    j["chunks"] = std::move(chunks);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Instance> InstancesFromJsonl(std::string_view text,
                                         int dimension) {
  std::vector<Instance> out;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Instance inst;
      inst.id = j.at("id").get<std::string>();
      inst.family = ParseFamily(j.at("family").get<std::string>());
      inst.budget = j.at("budget").get<uint64_t>();
      const auto& q = j.at("query");
      std::vector<std::string> terms;
      if (q.contains("relevant_terms")) {
        terms = q["relevant_terms"].get<std::vector<std::string>>();
      }
      inst.query = MakeQuery(q.at("id").get<std::string>(),
                             q.at("text").get<std::string>(),
                             std::move(terms), dimension);
      for (const auto& c : j.at("chunks")) {
        inst.chunks.push_back(MakeChunk(c.at("id").get<std::string>(),
                                        c.at("text").get<std::string>(),
                                        dimension));
      }
      out.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "instance line " +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    }
  }
  return out;
}

}  // namespace corag
