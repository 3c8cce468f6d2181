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

#include "corag/corpus.h"

#include <cmath>
#include <fstream>
#include <unordered_set>
#include <utility>

#include "corag/error.h"
#include "json.hpp"

namespace corag {
namespace {

enum class CharClass { kSpace, kPunct, kWord };

struct Span {
  size_t begin;
  size_t end;
};

// Decodes one UTF-8 code point starting at `pos`. Malformed bytes decode as
// a single-byte code point above the ASCII range so they count as word
// characters.
char32_t DecodeUtf8(std::string_view s, size_t pos, size_t* length) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    *length = 1;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    *length = 1;
    return 0xFFFD;
  }
  if (pos + static_cast<size_t>(extra) >= s.size()) {
    *length = 1;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      *length = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *length = static_cast<size_t>(extra) + 1;
  return cp;
}

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsAsciiPunct(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

CharClass Classify(char32_t cp) {
  if (IsUnicodeSpace(cp)) return CharClass::kSpace;
  if (IsAsciiPunct(cp)) return CharClass::kPunct;
  return CharClass::kWord;
}

std::vector<Span> TokenSpans(std::string_view text) {
  std::vector<Span> spans;
  size_t pos = 0;
  CharClass current = CharClass::kSpace;
  size_t start = 0;
  while (pos < text.size()) {
    size_t len = 1;
    const CharClass cls = Classify(DecodeUtf8(text, pos, &len));
    if (cls != current) {
      if (current != CharClass::kSpace) spans.push_back({start, pos});
      current = cls;
      start = pos;
    }
    pos += len;
  }
  if (current != CharClass::kSpace) spans.push_back({start, text.size()});
  return spans;
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

template <typename Fn>
void ForEachJsonLine(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("text") || !obj["text"].is_string()) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected string fields "
                                         "\"id\" and \"text\"");
    }
    fn(obj, line_no);
  }
}

}  // namespace

TokenSequence Tokenize(std::string_view text) {
  TokenSequence tokens;
  for (const Span& s : TokenSpans(text)) {
    tokens.push_back(Lowercase(text.substr(s.begin, s.end - s.begin)));
  }
  return tokens;
}

uint32_t EstimateCost(std::string_view text) {
  uint32_t words = 0;
  bool in_word = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t len = 1;
    const bool space = IsUnicodeSpace(DecodeUtf8(text, pos, &len));
    if (!space && !in_word) ++words;
    in_word = !space;
    pos += len;
  }
  return words;
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t hash = 14695981039346656037ULL;
  for (char ch : bytes) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 1099511628211ULL;
  }
  return hash;
}

Embedding Embed(std::span<const std::string> tokens, int dimension) {
  if (dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  }
  std::vector<double> acc(static_cast<size_t>(dimension), 0.0);
  for (const std::string& token : tokens) {
    const uint64_t h = Fnv1a64(token);
    const double sign = (h >> 63) == 0 ? 1.0 : -1.0;
    acc[h % static_cast<uint64_t>(dimension)] += sign;
  }
  double norm2 = 0.0;
  for (double v : acc) norm2 += v * v;
  Embedding out(acc.size(), 0.0f);
  if (norm2 == 0.0) return out;
  const double inv = 1.0 / std::sqrt(norm2);
  for (size_t i = 0; i < acc.size(); ++i) {
    out[i] = static_cast<float>(acc[i] * inv);
  }
  return out;
}

Chunk MakeChunk(std::string id, std::string text, int dimension) {
  const TokenSequence tokens = Tokenize(text);
  Chunk chunk;
  chunk.id = std::move(id);
  chunk.text = std::move(text);
  chunk.token_count = static_cast<uint32_t>(tokens.size());
  chunk.embedding = Embed(tokens, dimension);
  return chunk;
}

Query MakeQuery(std::string id, std::string text,
                std::vector<std::string> relevant_terms, int dimension) {
  Query query;
  query.embedding = Embed(Tokenize(text), dimension);
  query.id = std::move(id);
  query.text = std::move(text);
  query.relevant_terms = std::move(relevant_terms);
  return query;
}

std::vector<Chunk> ChunkCorpus(std::span<const Document> documents,
                               int chunk_size, int dimension) {
  if (chunk_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "chunk_size must be >= 1");
  }
  std::unordered_set<std::string> seen;
  std::vector<Chunk> chunks;
  for (const Document& doc : documents) {
    if (!seen.insert(doc.id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate document id \"" + doc.id + "\"");
    }
    const std::vector<Span> spans = TokenSpans(doc.text);
    const size_t size = static_cast<size_t>(chunk_size);
    for (size_t first = 0, index = 0; first < spans.size();
         first += size, ++index) {
      const size_t last = std::min(first + size, spans.size()) - 1;
      std::string text = doc.text.substr(
          spans[first].begin, spans[last].end - spans[first].begin);
      chunks.push_back(MakeChunk(doc.id + "#" + std::to_string(index),
                                 std::move(text), dimension));
    }
  }
  return chunks;
}

std::vector<Document> ReadDocumentsJsonl(const std::string& path) {
  std::vector<Document> docs;
  ForEachJsonLine(path, [&](const nlohmann::json& obj, size_t) {
    docs.push_back({obj["id"].get<std::string>(),
                    obj["text"].get<std::string>()});
  });
  return docs;
}

std::vector<Query> ReadQueriesJsonl(const std::string& path, int dimension) {
  std::vector<Query> queries;
  ForEachJsonLine(path, [&](const nlohmann::json& obj, size_t line_no) {
    std::vector<std::string> terms;
    if (obj.contains("relevant_terms")) {
      const auto& arr = obj["relevant_terms"];
      if (!arr.is_array()) {
        throw Error(ErrorCode::kParse,
                    path + ":" + std::to_string(line_no) +
                        ": \"relevant_terms\" must be an array of strings");
      }
      for (const auto& t : arr) {
        if (!t.is_string()) {
          throw Error(ErrorCode::kParse,
                      path + ":" + std::to_string(line_no) +
                          ": \"relevant_terms\" must be an array of strings");
        }
        terms.push_back(t.get<std::string>());
      }
    }
    queries.push_back(MakeQuery(obj["id"].get<std::string>(),
                                obj["text"].get<std::string>(),
                                std::move(terms), dimension));
  });
  return queries;
}

double Dot(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

}  // namespace corag
