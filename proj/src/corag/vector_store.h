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

#ifndef CORAG_VECTOR_STORE_H_
#define CORAG_VECTOR_STORE_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "corag/corpus.h"

namespace corag {

struct ScoredChunk {
  const Chunk* chunk;
  double similarity;
};

// Exact in-memory cosine retrieval over unit-norm chunk embeddings.
// Const member functions may be called concurrently; Insert needs exclusive
// access.
class VectorStore {
 public:
  explicit VectorStore(int dimension = kDefaultDimension);

  // Inserting an identical chunk twice is a no-op. A different chunk under an
  // existing id throws Error(kIdConflict); a wrong embedding size throws
  // Error(kDimensionMismatch).
  void Insert(Chunk chunk);

  // Descending similarity, ties by ascending id; at most n entries.
  std::vector<ScoredChunk> TopNScored(const Query& query, int n) const;
  std::vector<Chunk> TopN(const Query& query, int n) const;

  const Chunk* Find(const std::string& id) const;

  int dimension() const { return dimension_; }
  size_t size() const { return entries_.size(); }
  const std::vector<Chunk>& entries() const { return entries_; }

  // Binary layout: "CRGS", u32 version, u32 dimension, u64 count, then per
  // record u32 id length, id bytes, u32 text length, text bytes, u32
  // token_count and `dimension` f32 values. All integers and floats are
  // little-endian. Records keep insertion order.
  void Save(const std::string& path) const;
  static VectorStore Load(const std::string& path);

  static constexpr uint32_t kFormatVersion = 1;

 private:
  int dimension_;
  std::vector<Chunk> entries_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace corag

#endif  // CORAG_VECTOR_STORE_H_
