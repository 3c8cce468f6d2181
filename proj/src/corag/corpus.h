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

#ifndef CORAG_CORPUS_H_
#define CORAG_CORPUS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corag {

inline constexpr int kDefaultDimension = 1024;
inline constexpr int kDefaultChunkSize = 256;

// Lowercase tokens in text order. Identical input always yields identical
// tokens.
using TokenSequence = std::vector<std::string>;
using Embedding = std::vector<float>;

struct Chunk {
  std::string id;
  std::string text;
  uint32_t token_count = 0;
  Embedding embedding;
};

struct Query {
  std::string id;
  std::string text;
  Embedding embedding;
  std::vector<std::string> relevant_terms;
};

struct Document {
  std::string id;
  std::string text;
};

// Splits on Unicode whitespace, separates each maximal run of ASCII
// punctuation into its own token and lowercases ASCII letters. Non-ASCII
// code points other than whitespace are word characters.
TokenSequence Tokenize(std::string_view text);

// Number of whitespace-separated words. Never exceeds Tokenize(text).size().
uint32_t EstimateCost(std::string_view text);

uint64_t Fnv1a64(std::string_view bytes);

// Signed feature hashing into `dimension` buckets followed by L2
// normalization. Empty input yields the zero vector.
Embedding Embed(std::span<const std::string> tokens, int dimension);

Chunk MakeChunk(std::string id, std::string text,
                int dimension = kDefaultDimension);
Query MakeQuery(std::string id, std::string text,
                std::vector<std::string> relevant_terms = {},
                int dimension = kDefaultDimension);

// Partitions each document's token stream into consecutive blocks of
// chunk_size tokens (the last may be shorter). Chunk ids are
// "<doc_id>#<index>" and chunk text is the slice of the document spanning
// the block's tokens, so tokenizing it reproduces the block. Throws
// Error(kDuplicateId) on a repeated document id.
std::vector<Chunk> ChunkCorpus(std::span<const Document> documents,
                               int chunk_size,
                               int dimension = kDefaultDimension);

// JSON-lines readers. Blank lines are skipped.
std::vector<Document> ReadDocumentsJsonl(const std::string& path);
std::vector<Query> ReadQueriesJsonl(const std::string& path,
                                    int dimension = kDefaultDimension);

double Dot(std::span<const float> a, std::span<const float> b);

}  // namespace corag

#endif  // CORAG_CORPUS_H_
