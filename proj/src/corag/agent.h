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

#ifndef CORAG_AGENT_H_
#define CORAG_AGENT_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "corag/corpus.h"
#include "corag/mcts.h"

namespace corag {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  static Matrix Zeros(int rows, int cols) {
    return {rows, cols,
            std::vector<double>(static_cast<size_t>(rows) * cols, 0.0)};
  }
  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return data[static_cast<size_t>(r) * cols + c];
  }
};

// Reference outputs shipped with a weight file.
struct AgentFixture {
  std::vector<double> embedding;
  std::vector<double> label_scores;
  std::vector<double> regression_raw;
};

// Three-layer ReLU encoder with a classification head over `labels` and a
// two-output regression head (iterations, lambda).
struct AgentWeights {
  static constexpr int kFormatVersion = 1;

  std::array<int, 4> dims = {1024, 512, 256, 128};
  Matrix w1, w2, w3;
  std::vector<double> b1, b2, b3;
  Matrix wc;
  std::vector<double> bc;
  Matrix wr;
  std::vector<double> br;
  std::vector<std::string> labels;
  int max_iterations = 50;
  double lambda_max = 0.5;
  std::vector<AgentFixture> fixtures;

  // Zero-initialised weights of consistent shape.
  static AgentWeights Zeros(std::array<int, 4> dims,
                            std::vector<std::string> labels);
};

struct AgentForward {
  std::vector<double> feature;
  std::vector<double> label_scores;
  std::vector<double> regression_raw;
};

struct AgentPrediction {
  std::string label;
  std::vector<double> label_scores;
  int iterations = 1;
  double lambda = 0.0;
};

// Checks every invariant and throws Error(kShape) naming the first tensor
// with a wrong shape, Error(kNonFinite) for a non-finite value and
// Error(kInvalidArgument) for bad labels or scales.
void ValidateAgentWeights(const AgentWeights& weights);

// Throws Error(kIo) for an unreadable file, Error(kParse) for malformed
// JSON, Error(kVersion) for an unknown version and the validation errors
// above.
AgentWeights LoadAgentWeights(const std::string& path);
AgentWeights ParseAgentWeights(const std::string& json_text);

// Canonical JSON encoding: fixed key order and shortest round-trip floats,
// so serialize -> parse -> serialize is byte-identical.
std::string SerializeAgentWeights(const AgentWeights& weights);
void SaveAgentWeights(const AgentWeights& weights, const std::string& path);

AgentForward Forward(const AgentWeights& weights,
                     std::span<const double> embedding);
AgentForward Forward(const AgentWeights& weights,
                     std::span<const float> embedding);

AgentPrediction Predict(const AgentWeights& weights,
                        std::span<const float> embedding);

// Copies `base` and overrides scorer, iterations and cost coefficient with
// the agent's prediction for `query`.
SearchConfig PredictConfig(const AgentWeights& weights, const Query& query,
                           const SearchConfig& base);

}  // namespace corag

#endif  // CORAG_AGENT_H_
