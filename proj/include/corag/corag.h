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

// C interface to the corag retrieval-optimization engine.
//
// Every fallible call returns a corag_status. On failure a human-readable
// message is available from corag_last_error() on the same thread until the
// next failing call. Strings returned through `char**` out-parameters are
// owned by the caller and must be released with corag_free(). Handles are
// opaque; a store may be read from several threads at once but must not be
// mutated concurrently. Agents are immutable after loading.

#ifndef CORAG_CORAG_H_
#define CORAG_CORAG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CORAG_BUILDING_LIBRARY)
#define CORAG_API __declspec(dllexport)
#else
#define CORAG_API __declspec(dllimport)
#endif
#else
#define CORAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum corag_status {
  CORAG_OK = 0,
  CORAG_ERR_INVALID_ARGUMENT = 1,
  CORAG_ERR_IO = 2,
  CORAG_ERR_PARSE = 3,
  CORAG_ERR_DUPLICATE_ID = 4,
  CORAG_ERR_DIMENSION_MISMATCH = 5,
  CORAG_ERR_ID_CONFLICT = 6,
  CORAG_ERR_SHAPE = 7,
  CORAG_ERR_VERSION = 8,
  CORAG_ERR_NON_FINITE = 9,
  CORAG_ERR_LIMIT = 10,
  CORAG_ERR_UNRESOLVED_ID = 11,
  CORAG_ERR_INTERNAL = 100
} corag_status;

typedef struct corag_store corag_store;
typedef struct corag_agent corag_agent;

typedef struct corag_search_options {
  uint64_t budget;          /* token budget, >= 1 */
  double exploration;       /* c */
  double cost_coefficient;  /* lambda */
  int32_t iterations;
  int32_t candidates;       /* chunks retrieved from the store */
  uint64_t seed;
  const char* scorer;       /* "additive", "coverage" or "order" */
  double rho;               /* coverage redundancy penalty */
  double gamma;             /* order position discount */
  int32_t timing;           /* nonzero: include wall_time_ms */
} corag_search_options;

typedef struct corag_bench_options {
  int32_t instances;        /* per family */
  uint64_t seed;
  int32_t min_chunks;
  int32_t max_chunks;
  uint64_t budget;          /* 0: each instance's own budget */
  const char* strategies;   /* comma list of mcts,greedy,oracle,agent,all */
  const char* families;     /* comma list; NULL or "" for all */
  const char* scorer;       /* search scorer; NULL for the family's own */
  const char* instances_path; /* JSONL from instance-gen; NULL to generate */
  int32_t iterations;
  double exploration;
  double cost_coefficient;
  double rho;
  double gamma;
  int32_t oracle_max_len;
  int32_t threads;          /* 0: hardware concurrency; CORAG_THREADS caps */
  int32_t timing;           /* nonzero: rows carry wall_time_us */
} corag_bench_options;

CORAG_API const char* corag_version(void);
CORAG_API const char* corag_status_string(corag_status status);
CORAG_API const char* corag_last_error(void);
CORAG_API void corag_free(char* ptr);

CORAG_API void corag_search_options_init(corag_search_options* options);
CORAG_API void corag_bench_options_init(corag_bench_options* options);

/* Text. */
CORAG_API corag_status corag_tokenize_json(const char* text, char** out_json);
CORAG_API uint64_t corag_estimate_cost(const char* text);

/* Vector store. */
CORAG_API corag_status corag_store_create(uint32_t dimension,
                                          corag_store** out);
CORAG_API corag_status corag_store_load(const char* path, corag_store** out);
CORAG_API corag_status corag_store_save(const corag_store* store,
                                        const char* path);
CORAG_API void corag_store_destroy(corag_store* store);
CORAG_API uint64_t corag_store_size(const corag_store* store);
CORAG_API corag_status corag_store_add_document(corag_store* store,
                                                const char* id,
                                                const char* text,
                                                uint32_t chunk_size,
                                                uint64_t* chunks_added);
/* Reads a JSON-lines corpus ({"id","text"} per line). An empty corpus is an
 * error. */
CORAG_API corag_status corag_store_ingest_jsonl(corag_store* store,
                                                const char* corpus_path,
                                                uint32_t chunk_size,
                                                uint64_t* chunks_added);
/* JSON array of {"id","similarity","token_count","text"}. */
CORAG_API corag_status corag_store_top_n_json(const corag_store* store,
                                              const char* query_text,
                                              uint32_t n, char** out_json);

/* Configuration agent. */
CORAG_API corag_status corag_agent_load(const char* path, corag_agent** out);
CORAG_API void corag_agent_destroy(corag_agent* agent);
CORAG_API corag_status corag_agent_predict_json(const corag_agent* agent,
                                                const char* query_id,
                                                const char* query_text,
                                                char** out_json);
CORAG_API corag_status corag_agent_predict_queries_jsonl(
    const corag_agent* agent, const char* queries_path, char** out_jsonl);

/* Search. `relevant_terms_json` is NULL or a JSON array of strings. `agent`
 * may be NULL. */
CORAG_API corag_status corag_search_json(const corag_store* store,
                                         const char* query_id,
                                         const char* query_text,
                                         const char* relevant_terms_json,
                                         const corag_search_options* options,
                                         const corag_agent* agent,
                                         char** out_json);
CORAG_API corag_status corag_search_queries_jsonl(
    const corag_store* store, const char* queries_path,
    const corag_search_options* options, const corag_agent* agent,
    char** out_jsonl);

/* Synthetic instances and benchmark. */
CORAG_API corag_status corag_instances_generate_jsonl(
    uint64_t seed, int32_t count, int32_t min_chunks, int32_t max_chunks,
    const char* families, char** out_jsonl);
CORAG_API corag_status corag_bench_run(const corag_bench_options* options,
                                       const corag_agent* agent,
                                       char** out_rows_jsonl,
                                       char** out_summary);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CORAG_CORAG_H_ */
