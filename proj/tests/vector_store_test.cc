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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "corag/error.h"
#include "test_support.h"

namespace corag {
namespace {

using ::corag::testing::Gen;

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "store_" + name;
}

std::string ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void WriteBytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(VectorStoreTest, InsertCounts) {
  VectorStore store(32);
  store.Insert(MakeChunk("a", "hello world", 32));
  EXPECT_EQ(store.size(), 1u);
  store.Insert(MakeChunk("a", "hello world", 32));
  EXPECT_EQ(store.size(), 1u);
  for (int i = 0; i < 100; ++i) {
    store.Insert(MakeChunk("c" + std::to_string(i), "t" + std::to_string(i),
                           32));
  }
  EXPECT_EQ(store.size(), 101u);
  ASSERT_NE(store.Find("c7"), nullptr);
  EXPECT_EQ(store.Find("c7")->text, "t7");
  EXPECT_EQ(store.Find("nope"), nullptr);
}

TEST(VectorStoreTest, InsertErrors) {
  VectorStore store(32);
  store.Insert(MakeChunk("a", "hello", 32));
  EXPECT_EQ(CodeOf([&] { store.Insert(MakeChunk("a", "other", 32)); }),
            ErrorCode::kIdConflict);
  EXPECT_EQ(CodeOf([&] { store.Insert(MakeChunk("b", "x", 16)); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([] { VectorStore bad(0); }), ErrorCode::kInvalidArgument);
}

TEST(VectorStoreTest, TopNExamples) {
  VectorStore empty(32);
  EXPECT_TRUE(empty.TopN(MakeQuery("q", "x", {}, 32), 3).empty());

  VectorStore one(32);
  one.Insert(MakeChunk("only", "unrelated words", 32));
  EXPECT_EQ(one.TopN(MakeQuery("q", "anything", {}, 32), 5).size(), 1u);

  VectorStore store(64);
  store.Insert(MakeChunk("a", "the eiffel tower is tall", 64));
  store.Insert(MakeChunk("b", "paris has many bridges", 64));
  store.Insert(MakeChunk("c", "Height: 324m.", 64));
  const auto top = store.TopNScored(MakeQuery("q", "height: 324m.", {}, 64), 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].chunk->id, "c");
  EXPECT_NEAR(top[0].similarity, 1.0, 1e-6);
  EXPECT_THROW(store.TopN(MakeQuery("q", "x", {}, 64), 0), Error);
}

TEST(VectorStoreTest, TopNMatchesBruteForce) {
  Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    VectorStore store(16);
    std::vector<Chunk> all;
    const int count = gen.Int(1, 12);
    for (int i = 0; i < count; ++i) {
      // Tiny dimension and short texts make exact similarity ties common.
      Chunk c = MakeChunk("id" + std::to_string(gen.Int(0, 99)) + "_" +
                              std::to_string(i),
                          gen.Text(4), 16);
      all.push_back(c);
      store.Insert(std::move(c));
    }
    const Query q = MakeQuery("q", gen.Text(5), {}, 16);
    const int n = gen.Int(1, 14);

    std::vector<std::pair<double, std::string>> ref;
    for (const Chunk& c : all) {
      double dot = 0.0;
      for (size_t k = 0; k < c.embedding.size(); ++k) {
        dot += static_cast<double>(c.embedding[k]) * q.embedding[k];
      }
      ref.emplace_back(dot, c.id);
    }
    std::sort(ref.begin(), ref.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    ref.resize(std::min<size_t>(ref.size(), static_cast<size_t>(n)));

    const auto got = store.TopNScored(q, n);
    ASSERT_EQ(got.size(), ref.size());
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].chunk->id, ref[i].second);
      EXPECT_EQ(got[i].similarity, ref[i].first);
    }
    // Full retrieval is a permutation of the store.
    EXPECT_EQ(store.TopN(q, count).size(), static_cast<size_t>(count));
  }
}

TEST(VectorStoreTest, SaveLoadRoundTrip) {
  VectorStore store(8);
  store.Insert(MakeChunk("x#0", "Caf\xc3\xa9 au lait.", 8));
  store.Insert(MakeChunk("x#1", "", 8));
  const std::string path = TempPath("roundtrip.bin");
  store.Save(path);
  const VectorStore loaded = VectorStore::Load(path);
  EXPECT_EQ(loaded.dimension(), 8);
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded.entries()[0].text, store.entries()[0].text);
  EXPECT_EQ(loaded.entries()[0].embedding, store.entries()[0].embedding);
  EXPECT_EQ(loaded.entries()[1].token_count, 0u);

  const std::string again = TempPath("roundtrip2.bin");
  loaded.Save(again);
  EXPECT_EQ(ReadBytes(path), ReadBytes(again));
  std::remove(path.c_str());
  std::remove(again.c_str());
}

TEST(VectorStoreTest, FileLayout) {
  VectorStore store(2);
  Chunk c;
  c.id = "ab";
  c.text = "xyz";
  c.token_count = 1;
  c.embedding = {1.0f, 0.0f};
  store.Insert(c);
  const std::string path = TempPath("layout.bin");
  store.Save(path);
  const std::string bytes = ReadBytes(path);
  // magic, version, dimension, count, id, text, token_count, 2 floats.
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 8 + 4 + 2 + 4 + 3 + 4 + 8);
  EXPECT_EQ(bytes.substr(0, 4), "CRGS");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 2);
  EXPECT_EQ(bytes[12], 1);
  EXPECT_EQ(bytes.substr(24, 2), "ab");
  EXPECT_EQ(bytes.substr(30, 3), "xyz");
  // 1.0f little-endian is 00 00 80 3f.
  EXPECT_EQ(static_cast<unsigned char>(bytes[39]), 0x80);
  EXPECT_EQ(static_cast<unsigned char>(bytes[40]), 0x3f);
  std::remove(path.c_str());
}

TEST(VectorStoreTest, LoadErrors) {
  EXPECT_EQ(CodeOf([] { VectorStore::Load(TempPath("missing.bin")); }),
            ErrorCode::kIo);

  const std::string path = TempPath("bad.bin");
  WriteBytes(path, "NOPE");
  EXPECT_EQ(CodeOf([&] { VectorStore::Load(path); }), ErrorCode::kParse);

  VectorStore store(4);
  store.Insert(MakeChunk("a", "alpha beta", 4));
  store.Save(path);
  std::string bytes = ReadBytes(path);

  WriteBytes(path, bytes.substr(0, bytes.size() - 3));
  EXPECT_EQ(CodeOf([&] { VectorStore::Load(path); }), ErrorCode::kParse);

  WriteBytes(path, bytes + "!");
  EXPECT_EQ(CodeOf([&] { VectorStore::Load(path); }), ErrorCode::kParse);

  bytes[4] = 9;
  WriteBytes(path, bytes);
  EXPECT_EQ(CodeOf([&] { VectorStore::Load(path); }), ErrorCode::kVersion);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace corag
