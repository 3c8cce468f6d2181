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

#include "corag/vector_store.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "corag/error.h"

namespace corag {
namespace {

static_assert(std::endian::native == std::endian::little,
              "store serialization assumes a little-endian host");

constexpr char kMagic[4] = {'C', 'R', 'G', 'S'};

template <typename T>
void Put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader {
 public:
  Reader(const std::string& data, const std::string& path)
      : data_(data), path_(path) {}

  template <typename T>
  T Get() {
    Need(sizeof(T));
    T value;
    std::memcpy(&value, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string GetString(size_t length) {
    Need(length);
    std::string s = data_.substr(pos_, length);
    pos_ += length;
    return s;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  void Need(size_t n) const {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::kParse, path_ + ": truncated store file");
    }
  }

  const std::string& data_;
  const std::string& path_;
  size_t pos_ = 0;
};

bool SameContent(const Chunk& a, const Chunk& b) {
  return a.text == b.text && a.token_count == b.token_count &&
         a.embedding == b.embedding;
}

}  // namespace

VectorStore::VectorStore(int dimension) : dimension_(dimension) {
  if (dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  }
}

void VectorStore::Insert(Chunk chunk) {
  if (chunk.embedding.size() != static_cast<size_t>(dimension_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "chunk \"" + chunk.id + "\" has dimension " +
                    std::to_string(chunk.embedding.size()) +
                    ", store has " + std::to_string(dimension_));
  }
  if (auto it = index_.find(chunk.id); it != index_.end()) {
    if (SameContent(entries_[it->second], chunk)) return;
    throw Error(ErrorCode::kIdConflict,
                "chunk id \"" + chunk.id + "\" already stored with "
                "different content");
  }
  index_.emplace(chunk.id, entries_.size());
  entries_.push_back(std::move(chunk));
}

std::vector<ScoredChunk> VectorStore::TopNScored(const Query& query,
                                                 int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (query.embedding.size() != static_cast<size_t>(dimension_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query has dimension " +
                    std::to_string(query.embedding.size()) + ", store has " +
                    std::to_string(dimension_));
  }
  std::vector<ScoredChunk> scored;
  scored.reserve(entries_.size());
  for (const Chunk& c : entries_) {
    scored.push_back({&c, Dot(c.embedding, query.embedding)});
  }
  const auto by_rank = [](const ScoredChunk& a, const ScoredChunk& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.chunk->id < b.chunk->id;
  };
  const size_t keep = std::min(static_cast<size_t>(n), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    by_rank);
  scored.resize(keep);
  return scored;
}

std::vector<Chunk> VectorStore::TopN(const Query& query, int n) const {
  std::vector<Chunk> out;
  for (const ScoredChunk& s : TopNScored(query, n)) out.push_back(*s.chunk);
  return out;
}

const Chunk* VectorStore::Find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

void VectorStore::Save(const std::string& path) const {
  std::string out(kMagic, sizeof(kMagic));
  Put<uint32_t>(out, kFormatVersion);
  Put<uint32_t>(out, static_cast<uint32_t>(dimension_));
  Put<uint64_t>(out, entries_.size());
  for (const Chunk& c : entries_) {
    Put<uint32_t>(out, static_cast<uint32_t>(c.id.size()));
    out += c.id;
    Put<uint32_t>(out, static_cast<uint32_t>(c.text.size()));
    out += c.text;
    Put<uint32_t>(out, c.token_count);
    for (float v : c.embedding) Put<float>(out, v);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::kIo, "write failed for " + path);
}

VectorStore VectorStore::Load(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open " + path);
  const std::string data((std::istreambuf_iterator<char>(file)),
                         std::istreambuf_iterator<char>());
  Reader r(data, path);
  if (r.GetString(4) != std::string(kMagic, sizeof(kMagic))) {
    throw Error(ErrorCode::kParse, path + ": bad magic, not a store file");
  }
  const auto version = r.Get<uint32_t>();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kVersion,
                path + ": unsupported store version " +
                    std::to_string(version));
  }
  const auto dimension = r.Get<uint32_t>();
  if (dimension == 0) throw Error(ErrorCode::kParse, path + ": dimension 0");
  const auto count = r.Get<uint64_t>();
  VectorStore store(static_cast<int>(dimension));
  for (uint64_t i = 0; i < count; ++i) {
    Chunk c;
    c.id = r.GetString(r.Get<uint32_t>());
    c.text = r.GetString(r.Get<uint32_t>());
    c.token_count = r.Get<uint32_t>();
    c.embedding.resize(dimension);
    for (float& v : c.embedding) v = r.Get<float>();
    store.Insert(std::move(c));
  }
  if (!r.done()) {
    throw Error(ErrorCode::kParse, path + ": trailing bytes after records");
  }
  return store;
}

}  // namespace corag
