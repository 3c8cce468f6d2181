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

#include "corag/agent.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <type_traits>

#include "corag/error.h"
#include "json.hpp"

namespace corag {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename M, typename V>
struct TensorRef {
  const char* name;
  M* matrix;  // set for 2-D tensors
  V* bias;    // set for 1-D tensors
};

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void CheckFinite(const std::vector<double>& values, const std::string& name) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite,
                  "tensor " + name + " contains a non-finite value");
    }
  }
}

void CheckMatrix(const Matrix& m, int rows, int cols, const char* name) {
  if (m.rows != rows || m.cols != cols ||
      m.data.size() != static_cast<size_t>(rows) * cols) {
    throw Error(ErrorCode::kShape,
                std::string("tensor ") + name + " has shape [" +
                    std::to_string(m.rows) + "," + std::to_string(m.cols) +
                    "], expected [" + std::to_string(rows) + "," +
                    std::to_string(cols) + "]");
  }
  CheckFinite(m.data, name);
}

void CheckVector(const std::vector<double>& v, int size, const char* name) {
  if (v.size() != static_cast<size_t>(size)) {
    throw Error(ErrorCode::kShape,
                std::string("tensor ") + name + " has shape [" +
                    std::to_string(v.size()) + "], expected [" +
                    std::to_string(size) + "]");
  }
  CheckFinite(v, name);
}

std::vector<double> ReadNumbers(const json& arr, const std::string& what) {
  if (!arr.is_array()) {
    throw Error(ErrorCode::kParse, what + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (v.is_null()) {
      throw Error(ErrorCode::kNonFinite, what + " contains a non-finite value");
    }
    if (!v.is_number()) {
      throw Error(ErrorCode::kParse, what + " must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

template <typename W>
auto Tensors(W& w) {
  using M = std::remove_reference_t<decltype((w.w1))>;
  using V = std::remove_reference_t<decltype((w.b1))>;
  using T = TensorRef<M, V>;
  return std::vector<T>{
      T{"W1", &w.w1, nullptr}, T{"b1", nullptr, &w.b1},
      T{"W2", &w.w2, nullptr}, T{"b2", nullptr, &w.b2},
      T{"W3", &w.w3, nullptr}, T{"b3", nullptr, &w.b3},
      T{"Wc", &w.wc, nullptr}, T{"bc", nullptr, &w.bc},
      T{"Wr", &w.wr, nullptr}, T{"br", nullptr, &w.br}};
}

void DenseRelu(const Matrix& w, const std::vector<double>& b,
               std::span<const double> x, std::vector<double>& out,
               bool relu) {
  out.assign(static_cast<size_t>(w.rows), 0.0);
  for (int r = 0; r < w.rows; ++r) {
    const double* row = w.data.data() + static_cast<size_t>(r) * w.cols;
    double sum = b[r];
    for (int c = 0; c < w.cols; ++c) sum += row[c] * x[c];
    out[r] = relu ? std::max(0.0, sum) : sum;
  }
}

ordered_json NumberArray(const std::vector<double>& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

}  // namespace

AgentWeights AgentWeights::Zeros(std::array<int, 4> dims,
                                 std::vector<std::string> labels) {
  AgentWeights w;
  w.dims = dims;
  const int k = static_cast<int>(labels.size());
  w.labels = std::move(labels);
  w.w1 = Matrix::Zeros(dims[1], dims[0]);
  w.w2 = Matrix::Zeros(dims[2], dims[1]);
  w.w3 = Matrix::Zeros(dims[3], dims[2]);
  w.b1.assign(dims[1], 0.0);
  w.b2.assign(dims[2], 0.0);
  w.b3.assign(dims[3], 0.0);
  w.wc = Matrix::Zeros(k, dims[3]);
  w.bc.assign(k, 0.0);
  w.wr = Matrix::Zeros(2, dims[3]);
  w.br.assign(2, 0.0);
  return w;
}

void ValidateAgentWeights(const AgentWeights& w) {
  for (int d : w.dims) {
    if (d < 1) throw Error(ErrorCode::kShape, "dims must be positive");
  }
  if (w.labels.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "at least two labels required");
  }
  if (w.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "regression_scale.max_iterations must be >= 1");
  }
  if (!std::isfinite(w.lambda_max) || w.lambda_max < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "regression_scale.lambda_max must be finite and >= 0");
  }
  const int k = static_cast<int>(w.labels.size());
  CheckMatrix(w.w1, w.dims[1], w.dims[0], "W1");
  CheckVector(w.b1, w.dims[1], "b1");
  CheckMatrix(w.w2, w.dims[2], w.dims[1], "W2");
  CheckVector(w.b2, w.dims[2], "b2");
  CheckMatrix(w.w3, w.dims[3], w.dims[2], "W3");
  CheckVector(w.b3, w.dims[3], "b3");
  CheckMatrix(w.wc, k, w.dims[3], "Wc");
  CheckVector(w.bc, k, "bc");
  CheckMatrix(w.wr, 2, w.dims[3], "Wr");
  CheckVector(w.br, 2, "br");
  for (size_t i = 0; i < w.fixtures.size(); ++i) {
    const AgentFixture& f = w.fixtures[i];
    const std::string name = "fixtures[" + std::to_string(i) + "]";
    if (f.embedding.size() != static_cast<size_t>(w.dims[0]) ||
        f.label_scores.size() != static_cast<size_t>(k) ||
        f.regression_raw.size() != 2) {
      throw Error(ErrorCode::kShape, name + " has inconsistent sizes");
    }
    CheckFinite(f.embedding, name);
    CheckFinite(f.label_scores, name);
    CheckFinite(f.regression_raw, name);
  }
}

AgentWeights ParseAgentWeights(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("weight file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "weight file must be a JSON object");
  }
  try {
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
      throw Error(ErrorCode::kParse, "missing integer \"version\"");
    }
    if (doc["version"].get<int>() != AgentWeights::kFormatVersion) {
      throw Error(ErrorCode::kVersion,
                  "unsupported weight file version " +
                      doc["version"].dump());
    }
    AgentWeights w;
    const json& dims = doc.at("dims");
    if (!dims.is_array() || dims.size() != 4) {
      throw Error(ErrorCode::kShape, "dims must list four layer widths");
    }
    for (size_t i = 0; i < 4; ++i) w.dims[i] = dims[i].get<int>();
    w.labels = doc.at("labels").get<std::vector<std::string>>();
    const json& scale = doc.at("regression_scale");
    w.max_iterations = scale.at("max_iterations").get<int>();
    w.lambda_max = scale.at("lambda_max").get<double>();

    const json& tensors = doc.at("tensors");
    for (auto t : Tensors(w)) {
      if (!tensors.contains(t.name)) {
        throw Error(ErrorCode::kShape,
                    std::string("missing tensor ") + t.name);
      }
      const json& tj = tensors[t.name];
      const auto shape = tj.at("shape").get<std::vector<int>>();
      std::vector<double> data =
          ReadNumbers(tj.at("data"), std::string("tensor ") + t.name);
      size_t expected = 1;
      for (int s : shape) expected *= static_cast<size_t>(std::max(s, 0));
      if (data.size() != expected) {
        throw Error(ErrorCode::kShape,
                    std::string("tensor ") + t.name + " holds " +
                        std::to_string(data.size()) +
                        " values but its shape implies " +
                        std::to_string(expected));
      }
      if (t.matrix != nullptr) {
        if (shape.size() != 2) {
          throw Error(ErrorCode::kShape,
                      std::string("tensor ") + t.name + " must be 2-D");
        }
        *t.matrix = Matrix{shape[0], shape[1], std::move(data)};
      } else {
        if (shape.size() != 1) {
          throw Error(ErrorCode::kShape,
                      std::string("tensor ") + t.name + " must be 1-D");
        }
        *t.bias = std::move(data);
      }
    }
    if (doc.contains("fixtures")) {
      for (const json& f : doc["fixtures"]) {
        w.fixtures.push_back(
            {ReadNumbers(f.at("embedding"), "fixture embedding"),
             ReadNumbers(f.at("label_scores"), "fixture label_scores"),
             ReadNumbers(f.at("regression_raw"), "fixture regression_raw")});
      }
    }
    ValidateAgentWeights(w);
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("malformed weight file: ") + e.what());
  }
}

AgentWeights LoadAgentWeights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return ParseAgentWeights(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeAgentWeights(const AgentWeights& weights) {
  ValidateAgentWeights(weights);
  const AgentWeights& w = weights;
  ordered_json doc;
  doc["version"] = AgentWeights::kFormatVersion;
  doc["dims"] = w.dims;
  doc["labels"] = w.labels;
  doc["regression_scale"] = {{"max_iterations", w.max_iterations},
                             {"lambda_max", w.lambda_max}};
  ordered_json tensors = ordered_json::object();
  for (auto t : Tensors(w)) {
    ordered_json tj;
    if (t.matrix != nullptr) {
      tj["shape"] = ordered_json::array({t.matrix->rows, t.matrix->cols});
      tj["data"] = NumberArray(t.matrix->data);
    } else {
      tj["shape"] = ordered_json::array({t.bias->size()});
      tj["data"] = NumberArray(*t.bias);
    }
    tensors[t.name] = std::move(tj);
  }
  doc["tensors"] = std::move(tensors);
  ordered_json fixtures = ordered_json::array();
  for (const AgentFixture& f : w.fixtures) {
    ordered_json fj;
    fj["embedding"] = NumberArray(f.embedding);
    fj["label_scores"] = NumberArray(f.label_scores);
    fj["regression_raw"] = NumberArray(f.regression_raw);
    fixtures.push_back(std::move(fj));
  }
  doc["fixtures"] = std::move(fixtures);
  return doc.dump() + "\n";
}

void SaveAgentWeights(const AgentWeights& weights, const std::string& path) {
  const std::string text = SerializeAgentWeights(weights);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

AgentForward Forward(const AgentWeights& w, std::span<const double> x) {
  if (x.size() != static_cast<size_t>(w.dims[0])) {
    throw Error(ErrorCode::kDimensionMismatch,
                "agent expects a " + std::to_string(w.dims[0]) +
                    "-dimensional embedding, got " +
                    std::to_string(x.size()));
  }
  std::vector<double> h1, h2;
  AgentForward out;
  DenseRelu(w.w1, w.b1, x, h1, true);
  DenseRelu(w.w2, w.b2, h1, h2, true);
  DenseRelu(w.w3, w.b3, h2, out.feature, true);
  DenseRelu(w.wc, w.bc, out.feature, out.label_scores, false);
  DenseRelu(w.wr, w.br, out.feature, out.regression_raw, false);
  return out;
}

AgentForward Forward(const AgentWeights& weights,
                     std::span<const float> embedding) {
  const std::vector<double> x(embedding.begin(), embedding.end());
  return Forward(weights, x);
}

AgentPrediction Predict(const AgentWeights& weights,
                        std::span<const float> embedding) {
  AgentForward f = Forward(weights, embedding);
  AgentPrediction p;
  const auto top = std::max_element(f.label_scores.begin(),
                                    f.label_scores.end());
  p.label = weights.labels[static_cast<size_t>(top - f.label_scores.begin())];
  const double iters =
      std::round(Sigmoid(f.regression_raw[0]) * weights.max_iterations);
  p.iterations = static_cast<int>(
      std::clamp(iters, 1.0, static_cast<double>(weights.max_iterations)));
  p.lambda = std::clamp(Sigmoid(f.regression_raw[1]) * weights.lambda_max,
                        0.0, weights.lambda_max);
  p.label_scores = std::move(f.label_scores);
  return p;
}

SearchConfig PredictConfig(const AgentWeights& weights, const Query& query,
                           const SearchConfig& base) {
  const AgentPrediction p = Predict(weights, query.embedding);
  SearchConfig config = base;
  config.scorer = p.label;
  config.iterations = p.iterations;
  config.cost_coefficient = p.lambda;
  return config;
}

}  // namespace corag
