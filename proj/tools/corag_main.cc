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

// corag command-line tool. Links only against the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corag/corag.h"
#include "json.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

struct StatusError {
  corag_status status;
  std::string message;
};

void Check(corag_status status) {
  if (status != CORAG_OK) throw StatusError{status, corag_last_error()};
}

struct Freer {
  void operator()(char* p) const { corag_free(p); }
};
using CString = std::unique_ptr<char, Freer>;

struct StoreDeleter {
  void operator()(corag_store* s) const { corag_store_destroy(s); }
};
struct AgentDeleter {
  void operator()(corag_agent* a) const { corag_agent_destroy(a); }
};
using StorePtr = std::unique_ptr<corag_store, StoreDeleter>;
using AgentPtr = std::unique_ptr<corag_agent, AgentDeleter>;

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw StatusError{CORAG_ERR_IO, "cannot write " + path};
}

AgentPtr LoadAgent(const std::string& path) {
  if (path.empty()) return nullptr;
  corag_agent* agent = nullptr;
  Check(corag_agent_load(path.c_str(), &agent));
  return AgentPtr(agent);
}

std::string TermsJson(const std::vector<std::string>& terms) {
  return nlohmann::json(terms).dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained chunk combination search"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_input, ingest_out;
  uint32_t chunk_size = 256;
  uint32_t dimension = 1024;
  auto* ingest = app.add_subcommand("ingest", "Chunk and embed a corpus");
  ingest->add_option("--input", ingest_input, "Corpus JSON-lines file")
      ->required();
  ingest->add_option("--chunk-size", chunk_size, "Tokens per chunk")
      ->check(CLI::PositiveNumber);
  ingest->add_option("--out", ingest_out, "Store file to write")->required();
  ingest->add_option("--dimension", dimension, "Embedding dimension")
      ->check(CLI::PositiveNumber);

  // search
  corag_search_options search_opts;
  corag_search_options_init(&search_opts);
  std::string store_path, query_text, query_id = "query", queries_path;
  std::string agent_path, scorer = search_opts.scorer, search_out;
  std::vector<std::string> relevant_terms;
  bool timing = false;
  auto* search = app.add_subcommand("search", "Search a store for a query");
  search->add_option("--store", store_path, "Store file")->required();
  auto* qt = search->add_option("--query-text", query_text, "Query text");
  auto* qf = search->add_option("--queries", queries_path,
                                "Query JSON-lines file");
  qt->excludes(qf);
  search->add_option("--query-id", query_id, "Id for --query-text");
  search->add_option("--relevant-terms", relevant_terms,
                     "Ground-truth terms for --query-text")
      ->delimiter(',');
  search->add_option("--budget", search_opts.budget, "Token budget")
      ->check(CLI::PositiveNumber);
  search->add_option("--c", search_opts.exploration, "Exploration coefficient")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--lambda", search_opts.cost_coefficient,
                     "Cost coefficient")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--iterations", search_opts.iterations, "Iterations")
      ->check(CLI::PositiveNumber);
  search->add_option("--candidates", search_opts.candidates,
                     "Chunks retrieved from the store")
      ->check(CLI::PositiveNumber);
  search->add_option("--scorer", scorer, "additive, coverage or order");
  search->add_option("--rho", search_opts.rho, "Coverage redundancy penalty");
  search->add_option("--gamma", search_opts.gamma, "Order position discount");
  search->add_option("--seed", search_opts.seed, "Seed");
  search->add_option("--agent", agent_path, "Agent weight file");
  search->add_flag("--timing", timing, "Include wall_time_ms");
  search->add_option("--out", search_out, "Output file (default stdout)");

  // bench
  corag_bench_options bench_opts;
  corag_bench_options_init(&bench_opts);
  std::string strategies = "all", families, bench_scorer, bench_from;
  std::string bench_out, bench_agent;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run the synthetic benchmark");
  bench->add_option("--instances", bench_opts.instances,
                    "Instances per family")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", bench_opts.seed, "Instance seed");
  bench->add_option("--min-chunks", bench_opts.min_chunks,
                    "Minimum candidates per instance");
  bench->add_option("--max-chunks", bench_opts.max_chunks,
                    "Maximum candidates per instance");
  bench->add_option("--budget", bench_opts.budget,
                    "Budget for every instance (0: instance budget)");
  bench->add_option("--strategies", strategies,
                    "mcts,greedy,oracle,agent or all");
  bench->add_option("--families", families, "monotone,redundant,ordered");
  bench->add_option("--scorer", bench_scorer,
                    "Search scorer (default: family scorer)");
  bench->add_option("--from", bench_from, "Instances file from instance-gen");
  bench->add_option("--iterations", bench_opts.iterations, "Iterations")
      ->check(CLI::PositiveNumber);
  bench->add_option("--c", bench_opts.exploration, "Exploration coefficient")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--lambda", bench_opts.cost_coefficient,
                    "Cost coefficient")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--rho", bench_opts.rho, "Coverage redundancy penalty");
  bench->add_option("--gamma", bench_opts.gamma, "Order position discount");
  bench->add_option("--oracle-max-len", bench_opts.oracle_max_len,
                    "Oracle sequence length cap");
  bench->add_option("--threads", bench_opts.threads, "Worker threads");
  bench->add_option("--agent", bench_agent, "Agent weight file");
  bench->add_flag("--no-timing", no_timing, "Omit wall_time_us from rows");
  bench->add_option("--out", bench_out, "Report file (default stdout)");

  // agent-predict
  std::string predict_agent, predict_text, predict_id = "query",
                                           predict_queries;
  auto* predict = app.add_subcommand("agent-predict",
                                     "Print the agent's prediction");
  predict->add_option("--agent", predict_agent, "Agent weight file")
      ->required();
  auto* pt = predict->add_option("--query-text", predict_text, "Query text");
  auto* pq = predict->add_option("--queries", predict_queries,
                                 "Query JSON-lines file");
  pt->excludes(pq);
  predict->add_option("--query-id", predict_id, "Id for --query-text");

  // instance-gen
  uint64_t gen_seed = 1;
  int32_t gen_count = 10, gen_min = 8, gen_max = 12;
  std::string gen_families, gen_out;
  auto* gen = app.add_subcommand("instance-gen",
                                 "Write synthetic benchmark instances");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--count", gen_count, "Instances per family")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--min-chunks", gen_min, "Minimum candidates");
  gen->add_option("--max-chunks", gen_max, "Maximum candidates");
  gen->add_option("--families", gen_families, "monotone,redundant,ordered");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*ingest) {
      corag_store* raw = nullptr;
      Check(corag_store_create(dimension, &raw));
      StorePtr store(raw);
      uint64_t added = 0;
      Check(corag_store_ingest_jsonl(store.get(), ingest_input.c_str(),
                                     chunk_size, &added));
      Check(corag_store_save(store.get(), ingest_out.c_str()));
      std::cout << added << " chunks\n";
    } else if (*search) {
      if (query_text.empty() && queries_path.empty()) {
        std::cerr << "error: one of --query-text or --queries is required\n";
        return kExitValidation;
      }
      corag_store* raw = nullptr;
      Check(corag_store_load(store_path.c_str(), &raw));
      StorePtr store(raw);
      AgentPtr agent = LoadAgent(agent_path);
      search_opts.scorer = scorer.c_str();
      search_opts.timing = timing ? 1 : 0;
      char* out = nullptr;
      if (!queries_path.empty()) {
        Check(corag_search_queries_jsonl(store.get(), queries_path.c_str(),
                                         &search_opts, agent.get(), &out));
        WriteOutput(search_out, CString(out).get());
      } else {
        const std::string terms = TermsJson(relevant_terms);
        Check(corag_search_json(
            store.get(), query_id.c_str(), query_text.c_str(),
            relevant_terms.empty() ? nullptr : terms.c_str(), &search_opts,
            agent.get(), &out));
        WriteOutput(search_out, std::string(CString(out).get()) + "\n");
      }
    } else if (*bench) {
      AgentPtr agent = LoadAgent(bench_agent);
      bench_opts.strategies = strategies.c_str();
      bench_opts.families = families.empty() ? nullptr : families.c_str();
      bench_opts.scorer = bench_scorer.empty() ? nullptr : bench_scorer.c_str();
      bench_opts.instances_path =
          bench_from.empty() ? nullptr : bench_from.c_str();
      bench_opts.timing = no_timing ? 0 : 1;
      char* rows = nullptr;
      char* summary = nullptr;
      Check(corag_bench_run(&bench_opts, agent.get(), &rows, &summary));
      CString rows_owner(rows), summary_owner(summary);
      if (bench_out.empty() || bench_out == "-") {
        std::cout << rows;
        std::cerr << summary;
      } else {
        WriteOutput(bench_out, rows);
        std::cout << summary;
      }
    } else if (*predict) {
      if (predict_text.empty() && predict_queries.empty()) {
        std::cerr << "error: one of --query-text or --queries is required\n";
        return kExitValidation;
      }
      AgentPtr agent = LoadAgent(predict_agent);
      char* out = nullptr;
      if (!predict_queries.empty()) {
        Check(corag_agent_predict_queries_jsonl(
            agent.get(), predict_queries.c_str(), &out));
        std::cout << CString(out).get();
      } else {
        Check(corag_agent_predict_json(agent.get(), predict_id.c_str(),
                                       predict_text.c_str(), &out));
        std::cout << CString(out).get() << "\n";
      }
    } else if (*gen) {
      char* out = nullptr;
      Check(corag_instances_generate_jsonl(
          gen_seed, gen_count, gen_min, gen_max,
          gen_families.empty() ? nullptr : gen_families.c_str(), &out));
      WriteOutput(gen_out, CString(out).get());
    }
  } catch (const StatusError& e) {
    std::cerr << "error: " << corag_status_string(e.status) << ": "
              << e.message << "\n";
    return e.status == CORAG_ERR_INTERNAL ? kExitInternal : kExitValidation;
  }
  return 0;
}
