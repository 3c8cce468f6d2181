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

#include "corag/corag.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <new>
#include <string>
#include <utility>

#include "corag/agent.h"
#include "corag/bench.h"
#include "corag/corpus.h"
#include "corag/engine.h"
#include "corag/error.h"
#include "corag/instances.h"
#include "corag/vector_store.h"
#include "json.hpp"

struct corag_store {
  corag::VectorStore store;
};

struct corag_agent {
  corag::AgentWeights weights;
};

namespace {

thread_local std::string last_error;

corag_status Fail(corag_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
corag_status Guard(Fn&& fn) {
  try {
    fn();
    return CORAG_OK;
  } catch (const corag::Error& e) {
    return Fail(static_cast<corag_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CORAG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CORAG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(CORAG_ERR_INTERNAL, "unknown error");
  }
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void Require(bool ok, const char* what) {
  if (!ok) {
    throw corag::Error(corag::ErrorCode::kInvalidArgument,
                       std::string(what) + " must not be null");
  }
}

corag::SearchConfig ToConfig(const corag_search_options& o) {
  corag::SearchConfig c;
  c.budget = o.budget;
  c.exploration = o.exploration;
  c.cost_coefficient = o.cost_coefficient;
  c.iterations = o.iterations;
  c.candidates = o.candidates;
  c.seed = o.seed;
  c.scorer = o.scorer != nullptr ? o.scorer : "additive";
  c.scorer_params.rho = o.rho;
  c.scorer_params.gamma = o.gamma;
  corag::ValidateConfig(c);
  corag::MakeScorer(c.scorer, c.scorer_params);
  return c;
}

std::vector<std::string> SplitCsv(const char* csv) {
  std::vector<std::string> out;
  if (csv == nullptr) return out;
  std::string s(csv);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::vector<corag::Family> ParseFamilies(const char* csv) {
  std::vector<corag::Family> out;
  for (const std::string& name : SplitCsv(csv)) {
    if (name == "all") return corag::AllFamilies();
    out.push_back(corag::ParseFamily(name));
  }
  return out.empty() ? corag::AllFamilies() : out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw corag::Error(corag::ErrorCode::kIo, "cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

extern "C" {

const char* corag_version(void) { return "1.0.0"; }

const char* corag_status_string(corag_status status) {
  switch (status) {
    case CORAG_OK: return "ok";
    case CORAG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CORAG_ERR_IO: return "i/o error";
    case CORAG_ERR_PARSE: return "parse error";
    case CORAG_ERR_DUPLICATE_ID: return "duplicate id";
    case CORAG_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case CORAG_ERR_ID_CONFLICT: return "id conflict";
    case CORAG_ERR_SHAPE: return "shape mismatch";
    case CORAG_ERR_VERSION: return "version mismatch";
    case CORAG_ERR_NON_FINITE: return "non-finite value";
    case CORAG_ERR_LIMIT: return "limit exceeded";
    case CORAG_ERR_UNRESOLVED_ID: return "unresolved id";
    case CORAG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* corag_last_error(void) { return last_error.c_str(); }

void corag_free(char* ptr) { std::free(ptr); }

void corag_search_options_init(corag_search_options* o) {
  if (o == nullptr) return;
  const corag::SearchConfig d;
  o->budget = d.budget;
  o->exploration = d.exploration;
  o->cost_coefficient = d.cost_coefficient;
  o->iterations = d.iterations;
  o->candidates = d.candidates;
  o->seed = d.seed;
  o->scorer = "additive";
  o->rho = d.scorer_params.rho;
  o->gamma = d.scorer_params.gamma;
  o->timing = 0;
}

void corag_bench_options_init(corag_bench_options* o) {
  if (o == nullptr) return;
  const corag::SearchConfig d;
  o->instances = 100;
  o->seed = 1;
  o->min_chunks = 8;
  o->max_chunks = 12;
  o->budget = 0;
  o->strategies = "all";
  o->families = nullptr;
  o->scorer = nullptr;
  o->instances_path = nullptr;
  o->iterations = d.iterations;
  o->exploration = d.exploration;
  o->cost_coefficient = d.cost_coefficient;
  o->rho = d.scorer_params.rho;
  o->gamma = d.scorer_params.gamma;
  o->oracle_max_len = 6;
  o->threads = 0;
  o->timing = 1;
}

corag_status corag_tokenize_json(const char* text, char** out_json) {
  return Guard([&] {
    Require(text != nullptr && out_json != nullptr, "text/out_json");
    *out_json = Dup(nlohmann::json(corag::Tokenize(text)).dump());
  });
}

uint64_t corag_estimate_cost(const char* text) {
  return text == nullptr ? 0 : corag::EstimateCost(text);
}

corag_status corag_store_create(uint32_t dimension, corag_store** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    *out = new corag_store{corag::VectorStore(static_cast<int>(dimension))};
  });
}

corag_status corag_store_load(const char* path, corag_store** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path/out");
    *out = new corag_store{corag::VectorStore::Load(path)};
  });
}

corag_status corag_store_save(const corag_store* store, const char* path) {
  return Guard([&] {
    Require(store != nullptr && path != nullptr, "store/path");
    store->store.Save(path);
  });
}

void corag_store_destroy(corag_store* store) { delete store; }

uint64_t corag_store_size(const corag_store* store) {
  return store == nullptr ? 0 : store->store.size();
}

corag_status corag_store_add_document(corag_store* store, const char* id,
                                      const char* text, uint32_t chunk_size,
                                      uint64_t* chunks_added) {
  return Guard([&] {
    Require(store != nullptr && id != nullptr && text != nullptr,
            "store/id/text");
    const corag::Document doc{id, text};
    auto chunks = corag::ChunkCorpus(std::span(&doc, 1),
                                     static_cast<int>(chunk_size),
                                     store->store.dimension());
    for (auto& c : chunks) store->store.Insert(std::move(c));
    if (chunks_added != nullptr) *chunks_added = chunks.size();
  });
}

corag_status corag_store_ingest_jsonl(corag_store* store,
                                      const char* corpus_path,
                                      uint32_t chunk_size,
                                      uint64_t* chunks_added) {
  return Guard([&] {
    Require(store != nullptr && corpus_path != nullptr, "store/corpus_path");
    const auto docs = corag::ReadDocumentsJsonl(corpus_path);
    if (docs.empty()) {
      throw corag::Error(corag::ErrorCode::kInvalidArgument,
                         std::string(corpus_path) +
                             ": corpus contains no documents");
    }
    auto chunks = corag::ChunkCorpus(docs, static_cast<int>(chunk_size),
                                     store->store.dimension());
    for (auto& c : chunks) store->store.Insert(std::move(c));
    if (chunks_added != nullptr) *chunks_added = chunks.size();
  });
}

corag_status corag_store_top_n_json(const corag_store* store,
                                    const char* query_text, uint32_t n,
                                    char** out_json) {
  return Guard([&] {
    Require(store != nullptr && query_text != nullptr && out_json != nullptr,
            "store/query_text/out_json");
    const corag::Query q = corag::MakeQuery("query", query_text, {},
                                            store->store.dimension());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : store->store.TopNScored(q, static_cast<int>(n))) {
      arr.push_back({{"id", s.chunk->id},
                     {"similarity", s.similarity},
                     {"token_count", s.chunk->token_count},
                     {"text", s.chunk->text}});
    }
    *out_json = Dup(arr.dump());
  });
}

corag_status corag_agent_load(const char* path, corag_agent** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path/out");
    *out = new corag_agent{corag::LoadAgentWeights(path)};
  });
}

void corag_agent_destroy(corag_agent* agent) { delete agent; }

corag_status corag_agent_predict_json(const corag_agent* agent,
                                      const char* query_id,
                                      const char* query_text,
                                      char** out_json) {
  return Guard([&] {
    Require(agent != nullptr && query_text != nullptr && out_json != nullptr,
            "agent/query_text/out_json");
    const corag::Query q =
        corag::MakeQuery(query_id != nullptr ? query_id : "query", query_text,
                         {}, agent->weights.dims[0]);
    *out_json = Dup(corag::PredictionToJson(
        q, corag::Predict(agent->weights, q.embedding)));
  });
}

corag_status corag_agent_predict_queries_jsonl(const corag_agent* agent,
                                               const char* queries_path,
                                               char** out_jsonl) {
  return Guard([&] {
    Require(agent != nullptr && queries_path != nullptr &&
                out_jsonl != nullptr,
            "agent/queries_path/out_jsonl");
    std::string out;
    for (const auto& q :
         corag::ReadQueriesJsonl(queries_path, agent->weights.dims[0])) {
      out += corag::PredictionToJson(
          q, corag::Predict(agent->weights, q.embedding));
      out += '\n';
    }
    *out_jsonl = Dup(out);
  });
}

corag_status corag_search_json(const corag_store* store, const char* query_id,
                               const char* query_text,
                               const char* relevant_terms_json,
                               const corag_search_options* options,
                               const corag_agent* agent, char** out_json) {
  return Guard([&] {
    Require(store != nullptr && query_text != nullptr && options != nullptr &&
                out_json != nullptr,
            "store/query_text/options/out_json");
    std::vector<std::string> terms;
    if (relevant_terms_json != nullptr) {
      try {
        terms = nlohmann::json::parse(relevant_terms_json)
                    .get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception& e) {
        throw corag::Error(corag::ErrorCode::kParse,
                           std::string("relevant terms: ") + e.what());
      }
    }
    const corag::Query q =
        corag::MakeQuery(query_id != nullptr ? query_id : "query", query_text,
                         std::move(terms), store->store.dimension());
    const auto outcome = corag::RunQuery(
        store->store, q, ToConfig(*options),
        agent != nullptr ? &agent->weights : nullptr);
    *out_json = Dup(corag::OutcomeToJson(outcome, options->timing != 0));
  });
}

corag_status corag_search_queries_jsonl(const corag_store* store,
                                        const char* queries_path,
                                        const corag_search_options* options,
                                        const corag_agent* agent,
                                        char** out_jsonl) {
  return Guard([&] {
    Require(store != nullptr && queries_path != nullptr &&
                options != nullptr && out_jsonl != nullptr,
            "store/queries_path/options/out_jsonl");
    const corag::SearchConfig config = ToConfig(*options);
    std::string out;
    for (const auto& q :
         corag::ReadQueriesJsonl(queries_path, store->store.dimension())) {
      const auto outcome = corag::RunQuery(
          store->store, q, config,
          agent != nullptr ? &agent->weights : nullptr);
      out += corag::OutcomeToJson(outcome, options->timing != 0);
      out += '\n';
    }
    *out_jsonl = Dup(out);
  });
}

corag_status corag_instances_generate_jsonl(uint64_t seed, int32_t count,
                                            int32_t min_chunks,
                                            int32_t max_chunks,
                                            const char* families,
                                            char** out_jsonl) {
  return Guard([&] {
    Require(out_jsonl != nullptr, "out_jsonl");
    corag::InstanceParams params;
    params.min_chunks = min_chunks;
    params.max_chunks = max_chunks;
    *out_jsonl = Dup(corag::InstancesToJsonl(corag::GenerateInstances(
        seed, count, params, ParseFamilies(families))));
  });
}

corag_status corag_bench_run(const corag_bench_options* o,
                             const corag_agent* agent, char** out_rows_jsonl,
                             char** out_summary) {
  return Guard([&] {
    Require(o != nullptr && out_rows_jsonl != nullptr, "options/out_rows");
    std::vector<corag::Instance> instances;
    if (o->instances_path != nullptr && *o->instances_path != '\0') {
      instances = corag::InstancesFromJsonl(ReadFile(o->instances_path));
    } else {
      corag::InstanceParams params;
      params.min_chunks = o->min_chunks;
      params.max_chunks = o->max_chunks;
      instances = corag::GenerateInstances(o->seed, o->instances, params,
                                           ParseFamilies(o->families));
    }
    corag::BenchOptions bench;
    bench.strategies = corag::ParseStrategies(
        o->strategies != nullptr ? o->strategies : "all", agent != nullptr);
    bench.search.iterations = o->iterations;
    bench.search.exploration = o->exploration;
    bench.search.cost_coefficient = o->cost_coefficient;
    bench.search.seed = o->seed;
    bench.search.scorer_params.rho = o->rho;
    bench.search.scorer_params.gamma = o->gamma;
    if (o->scorer != nullptr && *o->scorer != '\0') bench.scorer = o->scorer;
    bench.budget_override = o->budget;
    bench.oracle_max_len = o->oracle_max_len;
    bench.threads = o->threads;
    bench.agent = agent != nullptr ? &agent->weights : nullptr;
    const auto rows = corag::RunBench(instances, bench);
    std::string summary = corag::FormatAggregates(corag::Aggregate(rows));
    std::string jsonl = corag::RowsToJsonl(rows, o->timing != 0);
    *out_rows_jsonl = Dup(jsonl);
    if (out_summary != nullptr) *out_summary = Dup(summary);
  });
}

}  // extern "C"
