# Copyright 2026 The CORAG Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the hand-wired agent weight file used by the tests.

Encoder channels 0..2 fire on the redundant, monotone and ordered instance
vocabularies; the classification head maps them to coverage, additive and
order. A small random block rides along so the embedded fixtures exercise
every tensor.

    python3 tools/make_fixture_weights.py tests/data/agent_fixture_weights.json
"""

import argparse
import json
import math

import numpy as np

DIMS = [1024, 512, 256, 128]
LABELS = ["coverage", "additive", "order"]
PREFIXES = ["redun", "mono", "ordo"]  # channel order matches LABELS
VOCABULARY_SIZE = 64
RANDOM_UNITS = 16
MAX_ITERATIONS = 50
LAMBDA_MAX = 0.5


def fnv1a64(token):
  h = 14695981039346656037
  for b in token.encode("utf-8"):
    h ^= b
    h = (h * 1099511628211) & 0xFFFFFFFFFFFFFFFF
  return h


def hashed(tokens, dim):
  acc = np.zeros(dim)
  for t in tokens:
    h = fnv1a64(t)
    acc[h % dim] += -1.0 if h >> 63 else 1.0
  return acc


def embed(text, dim):
  # Instance queries are lowercase words without punctuation, so a plain
  # split matches the engine tokenizer here.
  acc = hashed(text.lower().split(), dim)
  norm = np.linalg.norm(acc)
  if norm == 0:
    return acc
  return (acc / norm).astype(np.float32).astype(np.float64)


def build(seed):
  rng = np.random.default_rng(seed)
  d0, d1, d2, d3 = DIMS
  k = len(LABELS)
  lo, hi = k, k + RANDOM_UNITS

  w1 = np.zeros((d1, d0))
  b1 = np.zeros(d1)
  for channel, prefix in enumerate(PREFIXES):
    words = [f"{prefix}{i}" for i in range(VOCABULARY_SIZE)]
    w1[channel] = np.sign(hashed(words, d0))
  w1[lo:hi] = rng.normal(0.0, 0.05, (RANDOM_UNITS, d0))
  b1[lo:hi] = rng.normal(0.0, 0.05, RANDOM_UNITS)

  w2 = np.zeros((d2, d1))
  b2 = np.zeros(d2)
  w3 = np.zeros((d3, d2))
  b3 = np.zeros(d3)
  for c in range(k):
    w2[c, c] = 1.0
    w3[c, c] = 1.0
  w2[lo:hi, lo:hi] = rng.normal(0.0, 0.3, (RANDOM_UNITS, RANDOM_UNITS))
  b2[lo:hi] = rng.normal(0.0, 0.05, RANDOM_UNITS)
  w3[lo:hi, lo:hi] = rng.normal(0.0, 0.3, (RANDOM_UNITS, RANDOM_UNITS))
  b3[lo:hi] = rng.normal(0.0, 0.05, RANDOM_UNITS)

  wc = np.zeros((k, d3))
  wc[:, :k] = np.eye(k)
  wc[:, lo:hi] = rng.normal(0.0, 0.01, (k, RANDOM_UNITS))
  # Queries outside every vocabulary fall back to the additive scorer.
  bc = np.array([0.0, 0.5, 0.0])

  wr = np.zeros((2, d3))
  wr[:, lo:hi] = rng.normal(0.0, 0.05, (2, RANDOM_UNITS))
  # sigmoid(6) * 50 rounds to 50 iterations; sigmoid(ln 0.25) * 0.5 = 0.1.
  br = np.array([6.0, math.log(0.25)])

  return {"W1": w1, "b1": b1, "W2": w2, "b2": b2, "W3": w3, "b3": b3,
          "Wc": wc, "bc": bc, "Wr": wr, "br": br}


def forward(t, x):
  relu = lambda v: np.maximum(v, 0.0)
  h1 = relu(t["W1"] @ x + t["b1"])
  h2 = relu(t["W2"] @ h1 + t["b2"])
  feature = relu(t["W3"] @ h2 + t["b3"])
  return t["Wc"] @ feature + t["bc"], t["Wr"] @ feature + t["br"]


def fixture_inputs(seed):
  rng = np.random.default_rng(seed + 1)
  texts = []
  for prefix, count in (("redun", 6), ("mono", 8), ("ordo", 8)):
    picks = rng.choice(VOCABULARY_SIZE, size=count, replace=False)
    texts.append(" ".join(f"{prefix}{i}" for i in picks))
  inputs = [embed(t, DIMS[0]) for t in texts]
  noise = rng.normal(0.0, 1.0, DIMS[0])
  inputs.append((noise / np.linalg.norm(noise)).astype(np.float32)
                .astype(np.float64))
  return inputs


def floats(a):
  return [float(v) for v in np.asarray(a).ravel()]


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("out")
  parser.add_argument("--seed", type=int, default=7)
  args = parser.parse_args()

  tensors = build(args.seed)
  fixtures = []
  for x in fixture_inputs(args.seed):
    scores, raw = forward(tensors, x)
    fixtures.append({"embedding": floats(x), "label_scores": floats(scores),
                     "regression_raw": floats(raw)})

  doc = {
      "version": 1,
      "dims": DIMS,
      "labels": LABELS,
      "regression_scale": {"max_iterations": MAX_ITERATIONS,
                           "lambda_max": LAMBDA_MAX},
      "tensors": {name: {"shape": list(t.shape), "data": floats(t)}
                  for name, t in tensors.items()},
      "fixtures": fixtures,
  }
  with open(args.out, "w", encoding="utf-8") as f:
    json.dump(doc, f, separators=(",", ":"))
    f.write("\n")


if __name__ == "__main__":
  main()
